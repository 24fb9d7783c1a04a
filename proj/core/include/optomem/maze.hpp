#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optomem/neuro.hpp"
#include "optomem/rng.hpp"

// Grid-world maze and the reinforcement loop that trains a place-by-action
// array of three-factor synapses. The trial/train loops are templated over
// the synapse store so a device-backed array and an idealized boolean array
// can be trained on identical random streams and compared unit for unit.

namespace optomem {

enum class Action { North = 0, East = 1, South = 2, West = 3 };
constexpr int kActionCount = 4;

enum class StepOutcome { Move, Wall, Trap, Cheese };
enum class TrialEnd { Cheese, Trap, Timeout };
enum class PathEnd { Cheese, Trap, Loop };

struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(Cell a, Cell b) { return a.row == b.row && a.col == b.col; }
    friend bool operator!=(Cell a, Cell b) { return !(a == b); }
};

struct MazeSpec {
    int rows = 3;
    int cols = 3;
    Cell start{1, 1};
    Cell cheese{0, 2};
    std::vector<Cell> traps{{0, 0}, {2, 0}, {2, 2}};
    int max_steps_per_trial = 30;

    bool in_bounds(Cell c) const {
        return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
    }
    bool is_trap(Cell c) const {
        for (const auto& t : traps)
            if (t == c) return true;
        return false;
    }
    void validate() const;
};

struct TrajectoryStep {
    Cell place;
    Action action;
    StepOutcome outcome;
};
using Trajectory = std::vector<TrajectoryStep>;

struct QTable {
    int rows = 0;
    int cols = 0;
    std::vector<double> values; // indexed (row*cols + col)*4 + action

    QTable() = default;
    QTable(int r, int c) : rows(r), cols(c), values(static_cast<size_t>(r) * c * kActionCount) {}
    double at(Cell c, Action a) const {
        return values[(static_cast<size_t>(c.row) * cols + c.col) * kActionCount +
                      static_cast<int>(a)];
    }
    double& at(Cell c, Action a) {
        return values[(static_cast<size_t>(c.row) * cols + c.col) * kActionCount +
                      static_cast<int>(a)];
    }
    std::array<double, kActionCount> row(Cell c) const {
        std::array<double, kActionCount> r;
        for (int a = 0; a < kActionCount; ++a) r[a] = at(c, static_cast<Action>(a));
        return r;
    }
    // First maximum in N, E, S, W order.
    Action greedy_action(Cell c) const;
};

// One environment transition. Off-grid moves bounce (Wall, position kept);
// a trap throws back to start; reaching the cheese reports Cheese.
std::pair<Cell, StepOutcome> env_step(const MazeSpec& maze, Cell place, Action action);

// Epsilon-greedy over one table row: explore uniformly with probability
// epsilon, otherwise argmax with uniform tie-breaking.
Action select_action(const std::array<double, kActionCount>& qrow, RandomSource& rng,
                     double epsilon);

// Paired independent streams: policy draws (exploration, tie-breaks) stay
// aligned between synapse stores that consume different device entropy.
struct MazeRng {
    RandomSource policy;
    RandomSource device;
    explicit MazeRng(std::uint64_t seed)
        : policy(mix_seed(seed, 0x706f6cu)), device(mix_seed(seed, 0x646576u)) {}
};

struct EpsilonSchedule {
    double eps_start = 1.0;
    double eps_end = 0.1;
    double decay_fraction = 0.5; // of n_trials spent decaying
    double at(int trial, int n_trials) const;
};

struct TrialRecord {
    int trial = 0;
    int steps = 0;
    TrialEnd end = TrialEnd::Timeout;
    bool rewarded = false;
};

// Device-backed synapse store: one optomemristor per (place, action).
class SynapseArray {
public:
    SynapseArray(const MazeSpec& maze, const SynapseParams& params = SynapseParams());

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::array<double, kActionCount> weights(Cell c) const;
    void raise(Cell c, Action a);
    void tick_all();
    void clear_eligibility();
    // Reward broadcast in fixed (place, action) order; eligible units latch.
    void reward_all(RandomSource& device_rng,
                    std::vector<std::pair<Cell, Action>>* potentiated = nullptr);
    QTable snapshot() const;

    ThreeFactorSynapse& at(Cell c, Action a) { return units_[index(c, a)]; }
    const ThreeFactorSynapse& at(Cell c, Action a) const { return units_[index(c, a)]; }

private:
    size_t index(Cell c, Action a) const {
        return (static_cast<size_t>(c.row) * cols_ + c.col) * kActionCount +
               static_cast<int>(a);
    }
    int rows_;
    int cols_;
    std::vector<ThreeFactorSynapse> units_;
};

// Idealized store: boolean weights, instant switching, no entropy use. Same
// eligibility rule as the device array; serves as its behavioral oracle and
// as a fast mode for experimenting with maze layouts.
class IdealSynapseArray {
public:
    IdealSynapseArray(const MazeSpec& maze, int eligibility_window = 3);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::array<double, kActionCount> weights(Cell c) const;
    void raise(Cell c, Action a);
    void tick_all();
    void clear_eligibility();
    void reward_all(RandomSource& device_rng,
                    std::vector<std::pair<Cell, Action>>* potentiated = nullptr);
    QTable snapshot() const;

private:
    size_t index(Cell c, Action a) const {
        return (static_cast<size_t>(c.row) * cols_ + c.col) * kActionCount +
               static_cast<int>(a);
    }
    int rows_;
    int cols_;
    int window_;
    std::vector<int> eligibility_;
    std::vector<char> latched_;
};

// One trial: epsilon-greedy walk from start until Cheese, Trap, or the step
// cap. Every step ages all flags; a non-wall step re-arms the flag of the
// taken (place, action) pair. Reaching the cheese broadcasts the reward, so
// exactly the still-eligible pairs (at most the last three) potentiate. A
// trap ends the trial unrewarded. Flags are cleared at trial start.
template <class Synapses>
std::pair<Trajectory, bool> run_trial(const MazeSpec& maze, Synapses& synapses, MazeRng& rng,
                                      double epsilon) {
    synapses.clear_eligibility();
    Trajectory traj;
    Cell place = maze.start;
    for (int i = 0; i < maze.max_steps_per_trial; ++i) {
        const Action a = select_action(synapses.weights(place), rng.policy, epsilon);
        auto [next, out] = env_step(maze, place, a);
        traj.push_back({place, a, out});
        synapses.tick_all();
        if (out != StepOutcome::Wall) synapses.raise(place, a);
        if (out == StepOutcome::Cheese) {
            synapses.reward_all(rng.device);
            return {std::move(traj), true};
        }
        if (out == StepOutcome::Trap) return {std::move(traj), false};
        place = next;
    }
    return {std::move(traj), false};
}

template <class Synapses>
QTable train(const MazeSpec& maze, Synapses& synapses, int n_trials, MazeRng& rng,
             const EpsilonSchedule& schedule = {},
             std::vector<TrialRecord>* log = nullptr) {
    maze.validate();
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    for (int t = 0; t < n_trials; ++t) {
        auto [traj, rewarded] = run_trial(maze, synapses, rng, schedule.at(t, n_trials));
        if (log) {
            TrialEnd end = TrialEnd::Timeout;
            if (rewarded)
                end = TrialEnd::Cheese;
            else if (!traj.empty() && traj.back().outcome == StepOutcome::Trap)
                end = TrialEnd::Trap;
            log->push_back({t, static_cast<int>(traj.size()), end, rewarded});
        }
    }
    return synapses.snapshot();
}

struct GreedyResult {
    Trajectory steps;
    PathEnd end = PathEnd::Loop;
};

// Follows first-max actions from start. Aborts as a loop when a (place,
// action) pair repeats, which bounds the walk on any table.
GreedyResult greedy_path(const QTable& q, const MazeSpec& maze);

const char* to_string(Action a);
const char* to_string(StepOutcome o);
const char* to_string(TrialEnd e);
const char* to_string(PathEnd e);

} // namespace optomem
