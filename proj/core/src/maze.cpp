#include "optomem/maze.hpp"

#include <algorithm>
#include <set>

namespace optomem {

void MazeSpec::validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("maze must have positive size");
    if (max_steps_per_trial < 1) throw std::invalid_argument("step cap must be >= 1");
    if (!in_bounds(start) || !in_bounds(cheese))
        throw std::invalid_argument("start and cheese must be in bounds");
    for (const auto& t : traps)
        if (!in_bounds(t)) throw std::invalid_argument("trap out of bounds");
    if (start == cheese || is_trap(start))
        throw std::invalid_argument("start must be a free cell");
    if (is_trap(cheese)) throw std::invalid_argument("cheese cannot be a trap");
}

Action QTable::greedy_action(Cell c) const {
    const auto r = row(c);
    int best = 0;
    for (int a = 1; a < kActionCount; ++a)
        if (r[a] > r[best]) best = a;
    return static_cast<Action>(best);
}

std::pair<Cell, StepOutcome> env_step(const MazeSpec& maze, Cell place, Action action) {
    static constexpr int dr[kActionCount] = {-1, 0, 1, 0};
    static constexpr int dc[kActionCount] = {0, 1, 0, -1};
    const int a = static_cast<int>(action);
    const Cell next{place.row + dr[a], place.col + dc[a]};
    if (!maze.in_bounds(next)) return {place, StepOutcome::Wall};
    if (next == maze.cheese) return {next, StepOutcome::Cheese};
    if (maze.is_trap(next)) return {maze.start, StepOutcome::Trap};
    return {next, StepOutcome::Move};
}

Action select_action(const std::array<double, kActionCount>& qrow, RandomSource& rng,
                     double epsilon) {
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0))
        throw std::invalid_argument("epsilon must be in [0, 1]");
    if (rng.uniform01() < epsilon) return static_cast<Action>(rng.pick(kActionCount));
    const double m = *std::max_element(qrow.begin(), qrow.end());
    std::array<int, kActionCount> ties{};
    int n = 0;
    for (int a = 0; a < kActionCount; ++a)
        if (qrow[a] == m) ties[n++] = a;
    return static_cast<Action>(n == 1 ? ties[0] : ties[rng.pick(static_cast<uint32_t>(n))]);
}

double EpsilonSchedule::at(int trial, int n_trials) const {
    const int span = static_cast<int>(n_trials * decay_fraction);
    if (span <= 0 || trial >= span) return eps_end;
    return eps_start - (eps_start - eps_end) * (static_cast<double>(trial) / span);
}

SynapseArray::SynapseArray(const MazeSpec& maze, const SynapseParams& params)
    : rows_(maze.rows), cols_(maze.cols) {
    maze.validate();
    units_.resize(static_cast<size_t>(rows_) * cols_ * kActionCount,
                  ThreeFactorSynapse(params));
}

std::array<double, kActionCount> SynapseArray::weights(Cell c) const {
    std::array<double, kActionCount> w;
    for (int a = 0; a < kActionCount; ++a)
        w[a] = units_[index(c, static_cast<Action>(a))].conductance();
    return w;
}

void SynapseArray::raise(Cell c, Action a) {
    units_[index(c, a)].raise_eligibility();
}

void SynapseArray::tick_all() {
    for (auto& u : units_) u.tick_eligibility();
}

void SynapseArray::clear_eligibility() {
    for (auto& u : units_) u.clear_eligibility();
}

void SynapseArray::reward_all(RandomSource& device_rng,
                              std::vector<std::pair<Cell, Action>>* potentiated) {
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            for (int a = 0; a < kActionCount; ++a) {
                const Cell cell{r, c};
                const Action act = static_cast<Action>(a);
                if (units_[index(cell, act)].apply_reward(device_rng) && potentiated)
                    potentiated->push_back({cell, act});
            }
}

QTable SynapseArray::snapshot() const {
    QTable q(rows_, cols_);
    for (size_t i = 0; i < units_.size(); ++i) q.values[i] = units_[i].conductance();
    return q;
}

IdealSynapseArray::IdealSynapseArray(const MazeSpec& maze, int eligibility_window)
    : rows_(maze.rows), cols_(maze.cols), window_(eligibility_window) {
    maze.validate();
    if (window_ < 1) throw std::invalid_argument("eligibility window must be >= 1");
    const size_t n = static_cast<size_t>(rows_) * cols_ * kActionCount;
    eligibility_.assign(n, 0);
    latched_.assign(n, 0);
}

std::array<double, kActionCount> IdealSynapseArray::weights(Cell c) const {
    std::array<double, kActionCount> w;
    for (int a = 0; a < kActionCount; ++a)
        w[a] = latched_[index(c, static_cast<Action>(a))] ? 1.0 : 0.0;
    return w;
}

void IdealSynapseArray::raise(Cell c, Action a) {
    eligibility_[index(c, a)] = window_;
}

void IdealSynapseArray::tick_all() {
    for (auto& e : eligibility_)
        if (e > 0) --e;
}

void IdealSynapseArray::clear_eligibility() {
    std::fill(eligibility_.begin(), eligibility_.end(), 0);
}

void IdealSynapseArray::reward_all(RandomSource&,
                                   std::vector<std::pair<Cell, Action>>* potentiated) {
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            for (int a = 0; a < kActionCount; ++a) {
                const size_t i = index({r, c}, static_cast<Action>(a));
                if (eligibility_[i] > 0 && !latched_[i]) {
                    latched_[i] = 1;
                    if (potentiated)
                        potentiated->push_back({{r, c}, static_cast<Action>(a)});
                }
                eligibility_[i] = 0;
            }
}

QTable IdealSynapseArray::snapshot() const {
    QTable q(rows_, cols_);
    for (size_t i = 0; i < latched_.size(); ++i) q.values[i] = latched_[i] ? 1.0 : 0.0;
    return q;
}

GreedyResult greedy_path(const QTable& q, const MazeSpec& maze) {
    GreedyResult res;
    std::set<std::pair<int, int>> seen;
    Cell place = maze.start;
    const int limit = maze.rows * maze.cols * kActionCount + 1;
    for (int i = 0; i < limit; ++i) {
        const Action a = q.greedy_action(place);
        const int key = (place.row * maze.cols + place.col);
        if (!seen.insert({key, static_cast<int>(a)}).second) {
            res.end = PathEnd::Loop;
            return res;
        }
        auto [next, out] = env_step(maze, place, a);
        res.steps.push_back({place, a, out});
        if (out == StepOutcome::Cheese) {
            res.end = PathEnd::Cheese;
            return res;
        }
        if (out == StepOutcome::Trap) {
            res.end = PathEnd::Trap;
            return res;
        }
        place = next;
    }
    res.end = PathEnd::Loop;
    return res;
}

const char* to_string(Action a) {
    switch (a) {
        case Action::North: return "N";
        case Action::East: return "E";
        case Action::South: return "S";
        case Action::West: return "W";
    }
    return "?";
}

const char* to_string(StepOutcome o) {
    switch (o) {
        case StepOutcome::Move: return "Move";
        case StepOutcome::Wall: return "Wall";
        case StepOutcome::Trap: return "Trap";
        case StepOutcome::Cheese: return "Cheese";
    }
    return "?";
}

const char* to_string(TrialEnd e) {
    switch (e) {
        case TrialEnd::Cheese: return "Cheese";
        case TrialEnd::Trap: return "Trap";
        case TrialEnd::Timeout: return "Timeout";
    }
    return "?";
}

const char* to_string(PathEnd e) {
    switch (e) {
        case PathEnd::Cheese: return "Cheese";
        case PathEnd::Trap: return "Trap";
        case PathEnd::Loop: return "Loop";
    }
    return "?";
}

} // namespace optomem
