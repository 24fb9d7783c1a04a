// Command-line front end: loads the config, seeds the random streams, runs
// one experiment, and writes CSV artifacts plus a checksum manifest. All
// output is deterministic for a fixed config and seed.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "optomem/config.hpp"
#include "optomem/csv.hpp"
#include "optomem/device.hpp"
#include "optomem/maze.hpp"
#include "optomem/neuro.hpp"
#include "optomem/optics.hpp"
#include "optomem/stats.hpp"
#include "optomem/xor_gate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace optomem;

namespace {

// Tracks artifact files so the manifest can checksum them in emission order.
struct Artifacts {
    fs::path dir;
    std::vector<std::string> names;

    std::string path(const std::string& name) {
        names.push_back(name);
        return (dir / name).string();
    }
};

void write_manifest(const Artifacts& artifacts, const std::string& command,
                    const Config& cfg, std::uint64_t seed, const json& result) {
    json manifest;
    manifest["command"] = command;
    manifest["seed"] = seed;
    json echo = json::object();
    // out.dir is where the run landed, not what it computed; leaving it out
    // keeps manifests byte-identical across output locations.
    for (const auto& [k, v] : cfg.items())
        if (k != "out.dir") echo[k] = v;
    manifest["config"] = echo;
    json files = json::object();
    for (const auto& name : artifacts.names) {
        const fs::path p = artifacts.dir / name;
        files[name] = {{"bytes", fs::file_size(p)}, {"fnv1a64", to_hex(file_fnv1a64(p.string()))}};
    }
    manifest["artifacts"] = files;
    if (!result.is_null()) manifest["result"] = result;

    std::ofstream out(artifacts.dir / (command + ".manifest.json"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest");
    out << manifest.dump(2) << '\n';
}

std::string join_events(const std::vector<SwitchEvent>& events) {
    std::string s;
    for (const auto& ev : events) {
        if (!s.empty()) s += ';';
        s += to_string(ev.transition);
    }
    return s;
}

optics::MaterialTable load_materials(const Config& cfg) {
    std::string dir = cfg.get_string("materials.dir");
    if (dir.empty()) dir = optics::default_material_dir();
    return optics::MaterialTable::load_directory(dir);
}

json run_iv_sweep(const Config& cfg, Artifacts& artifacts, std::uint64_t seed) {
    const DeviceParams params = device_from_config(cfg, cfg.get_string("iv.profile"));
    const double power = cfg.get_double("iv.power_w");
    const double v_min = cfg.get_double("iv.v_min");
    const double v_max = cfg.get_double("iv.v_max");
    const double v_step = cfg.get_double("iv.v_step");
    const double dwell = cfg.get_double("iv.dwell_s");
    if (!(v_step > 0.0)) throw std::runtime_error("iv.v_step must be positive");
    if (!(v_max > v_min)) throw std::runtime_error("iv.v_max must exceed iv.v_min");

    const double span = v_max - v_min;
    const long n = static_cast<long>(std::floor(span / v_step + 1e-9));
    std::vector<double> grid;
    for (long i = 0; i <= n; ++i) grid.push_back(v_min + v_step * i);
    for (long i = n - 1; i >= 0; --i) grid.push_back(v_min + v_step * i);

    RandomSource rng(seed);
    DeviceState state;
    CsvWriter csv(artifacts.path("iv_sweep.csv"));
    csv.row({"time_s", "voltage_V", "optical_power_W", "current_A", "conductance_S", "event"});
    double t = 0.0;
    double v_cross = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < grid.size(); ++i) {
        const double v = grid[i];
        const auto events = step(params, state, {v, power, dwell}, rng);
        t += dwell;
        const double current = device_current(params, state, v, power);
        csv.row({t, v, power, current, conductance(params, state), join_events(events)});
        if (i <= static_cast<size_t>(n) && std::isnan(v_cross) && current >= 0.0) v_cross = v;
    }
    csv.close();

    json result;
    result["v_zero_crossing"] = v_cross;
    result["v0_model"] = open_circuit_voltage(params, power);
    return result;
}

json run_latency_stats(const Config& cfg, Artifacts& artifacts, std::uint64_t seed) {
    const DeviceParams params = device_from_config(cfg, cfg.get_string("latency.profile"));
    const double delta_v = cfg.get_double("latency.delta_v");
    const int n = cfg.get_int("latency.n_samples");
    if (n < 1) throw std::runtime_error("latency.n_samples must be >= 1");

    RandomSource rng(seed);
    std::vector<double> samples(static_cast<size_t>(n));
    CsvWriter csv(artifacts.path("latency_samples.csv"));
    csv.row({"sample", "latency_s"});
    for (int i = 0; i < n; ++i) {
        samples[static_cast<size_t>(i)] = sample_latency(params, delta_v, rng);
        csv.row({i, samples[static_cast<size_t>(i)]});
    }
    csv.close();

    const double expected = params.tau0 * std::exp(-delta_v / params.v_c);
    const double m = mean(samples);
    const double d = ks_distance_exponential(samples, expected);
    const double crit = ks_critical(samples.size(), 0.01);

    CsvWriter summary(artifacts.path("latency_summary.csv"));
    summary.row({"delta_v", "n_samples", "mean_s", "expected_mean_s", "ks_d", "ks_crit_1pct",
                 "ks_pass"});
    summary.row({delta_v, n, m, expected, d, crit, d < crit ? "1" : "0"});
    summary.close();

    json result;
    result["mean_s"] = m;
    result["expected_mean_s"] = expected;
    result["ks_d"] = d;
    result["ks_crit_1pct"] = crit;
    result["ks_pass"] = d < crit;
    return result;
}

json run_cavity_design(const Config& cfg, Artifacts& artifacts, std::uint64_t) {
    const auto materials = load_materials(cfg);
    const optics::LayerStack stack = stack_from_config(cfg);
    const double target = cfg.get_double("design.target_nm");
    const double d_min = cfg.get_double("design.d_min_nm");
    const double d_max = cfg.get_double("design.d_max_nm");
    const double lo = cfg.get_double("design.lambda_min_nm");
    const double hi = cfg.get_double("design.lambda_max_nm");
    const int n_points = cfg.get_int("design.n_points");

    const auto design =
        optics::design_thickness(stack, target, d_min, d_max, materials, lo, hi, n_points);

    optics::LayerStack chosen = stack;
    for (auto& layer : chosen.layers)
        if (layer.thickness_nm <= 0.0) layer.thickness_nm = design.thickness_nm;
    const auto spectrum = optics::absorption_spectrum(chosen, lo, hi, n_points, materials);

    CsvWriter csv(artifacts.path("spectrum.csv"));
    csv.row({"wavelength_nm", "reflectance", "transmittance", "absorptance"});
    for (size_t i = 0; i < spectrum.wavelength_nm.size(); ++i)
        csv.row({spectrum.wavelength_nm[i], spectrum.reflectance[i], spectrum.transmittance[i],
                 spectrum.absorptance[i]});
    csv.close();

    json result;
    result["thickness_nm"] = design.thickness_nm;
    result["lambda_peak_nm"] = design.lambda_peak_nm;
    result["peak_absorptance"] = design.peak_absorptance;
    return result;
}

json run_maze_train(const Config& cfg, Artifacts& artifacts, std::uint64_t seed) {
    const MazeSpec maze = maze_from_config(cfg);
    const SynapseParams syn = synapse_from_config(cfg);
    const EpsilonSchedule schedule = epsilon_from_config(cfg);
    const int n_trials = cfg.get_int("maze.n_trials");

    SynapseArray synapses(maze, syn);
    MazeRng rng(seed);
    std::vector<TrialRecord> log;
    const QTable q = train(maze, synapses, n_trials, rng, schedule, &log);

    CsvWriter qcsv(artifacts.path("qtable.csv"));
    qcsv.row({"place_row", "place_col", "action", "conductance_S"});
    for (int r = 0; r < maze.rows; ++r)
        for (int c = 0; c < maze.cols; ++c)
            for (int a = 0; a < kActionCount; ++a)
                qcsv.row({r, c, to_string(static_cast<Action>(a)),
                          q.at({r, c}, static_cast<Action>(a))});
    qcsv.close();

    CsvWriter tcsv(artifacts.path("trials.csv"));
    tcsv.row({"trial", "steps", "outcome"});
    for (const auto& rec : log) tcsv.row({rec.trial, rec.steps, to_string(rec.end)});
    tcsv.close();

    CsvWriter scsv(artifacts.path("success_rate.csv"));
    scsv.row({"trial", "success_rate"});
    int successes = 0;
    for (const auto& rec : log) {
        if (rec.rewarded) ++successes;
        scsv.row({rec.trial, static_cast<double>(successes) / (rec.trial + 1)});
    }
    scsv.close();

    const auto greedy = greedy_path(q, maze);
    json result;
    result["greedy_end"] = to_string(greedy.end);
    result["greedy_steps"] = greedy.steps.size();
    result["start_greedy_action"] = to_string(q.greedy_action(maze.start));
    return result;
}

// Replays an event list against the staircase to recover per-event device
// state for the log.
void emit_unit_events(CsvWriter& csv, const DeviceParams& params,
                      const std::vector<SwitchEvent>& events, double pulse_v, double pulse_p,
                      double pulse_width, const std::string& unit_id) {
    DeviceState replay;
    for (const auto& ev : events) {
        switch (ev.transition) {
            case Transition::PartialSet: ++replay.step_index; break;
            case Transition::Set:
                replay.step_index = params.n_intermediate;
                replay.latched = true;
                break;
            case Transition::Reset:
                replay.step_index = 0;
                replay.latched = false;
                break;
        }
        const bool in_pulse = ev.time <= pulse_width;
        const double v = in_pulse ? pulse_v : 0.0;
        const double p = in_pulse ? pulse_p : 0.0;
        csv.row({ev.time, v, p, device_current(params, replay, v, p),
                 conductance(params, replay),
                 std::string(to_string(ev.transition)) + ":" + to_string(ev.cause), unit_id});
    }
}

json run_xor_cmd(const Config& cfg, Artifacts& artifacts, std::uint64_t seed) {
    const NeuronParams params = neuron_from_config(cfg);
    const int n_seeds = cfg.get_int("xor.n_seeds");
    if (n_seeds < 1) throw std::runtime_error("xor.n_seeds must be >= 1");

    std::vector<std::uint64_t> seeds(static_cast<size_t>(n_seeds));
    for (int i = 0; i < n_seeds; ++i) seeds[static_cast<size_t>(i)] = seed + static_cast<std::uint64_t>(i);
    const XorReport report = run_xor(params, seeds);

    CsvWriter truth(artifacts.path("truth_table.csv"));
    truth.row({"x", "y", "i_d1_A", "i_d2_A", "i_sum_A", "output"});
    for (const auto& c : report.truth)
        truth.row({c.x ? 1 : 0, c.y ? 1 : 0, c.i_d1, c.i_d2, c.i_sum, c.output ? 1 : 0});
    truth.close();

    CsvWriter plane(artifacts.path("threshold_plane.csv"));
    plane.row({"x_level", "y_level", "i_sum_A", "soma_threshold_A"});
    for (const auto& c : report.truth)
        plane.row({c.x ? 1 : 0, c.y ? 1 : 0, c.i_sum, report.soma_threshold});
    plane.close();

    // Event log for the four input pairs on a dedicated stream.
    DendriticNeuron neuron(params);
    RandomSource ev_rng(mix_seed(seed, 0x65766c6fu));
    CsvWriter events(artifacts.path("xor_events.csv"));
    events.row({"time_s", "voltage_V", "optical_power_W", "current_A", "conductance_S", "event",
                "unit_id"});
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) {
            std::vector<SwitchEvent> d1_events, d2_events;
            (void)neuron.respond(x != 0, y != 0, ev_rng, &d1_events, &d2_events);
            const auto& den = params.dendrite;
            const std::string tag = "x" + std::to_string(x) + "y" + std::to_string(y);
            emit_unit_events(events, den.device, d1_events, x ? den.excit_voltage : 0.0,
                             y ? den.inhib_power : 0.0, den.excit_width, tag + ".d1");
            emit_unit_events(events, den.device, d2_events, y ? den.excit_voltage : 0.0,
                             x ? den.inhib_power : 0.0, den.excit_width, tag + ".d2");
        }
    events.close();

    json result;
    result["seeds_total"] = report.seeds_total;
    result["seeds_correct"] = report.seeds_correct;
    result["min_margin_a"] = report.min_margin;
    result["all_correct"] = report.all_correct();
    return result;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral simulator for dual-input (electrical + optical) memristors"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_flag;
    std::string seed_flag;
    app.add_option("--config", config_path, "Config file (flat key=value lines)");
    app.add_option("--set", overrides, "Override one config key, e.g. --set maze.rows=4");
    app.add_option("--out", out_flag, "Output directory (default: $OPTOMEM_OUT_DIR, then out.dir)");
    app.add_option("--seed", seed_flag, "Random seed");

    struct FlagSpec {
        const char* flag;
        const char* key;
        const char* desc;
    };
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<CLI::Option*, std::string>> bound;
    const auto add_cmd = [&](const char* name, const char* desc,
                             std::initializer_list<FlagSpec> specs) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->fallthrough();
        for (const auto& s : specs) {
            auto& slot = flag_values[s.key];
            bound.emplace_back(cmd->add_option(s.flag, slot, s.desc), s.key);
        }
        return cmd;
    };

    CLI::App* iv = add_cmd("iv-sweep", "Quasi-static I-V sweep at fixed illumination",
                           {{"--profile", "iv.profile", "Device profile name"},
                            {"--power", "iv.power_w", "Optical power [W]"},
                            {"--v-min", "iv.v_min", "Sweep start [V]"},
                            {"--v-max", "iv.v_max", "Sweep apex [V]"},
                            {"--v-step", "iv.v_step", "Voltage grid step [V]"},
                            {"--dwell", "iv.dwell_s", "Dwell per grid point [s]"}});
    CLI::App* lat = add_cmd("latency-stats", "Switching-latency sample statistics",
                            {{"--profile", "latency.profile", "Device profile name"},
                             {"--delta-v", "latency.delta_v", "Overdrive above threshold [V]"},
                             {"--samples", "latency.n_samples", "Sample count"}});
    CLI::App* cav = add_cmd("cavity-design", "Pick the film thickness for a target wavelength",
                            {{"--target", "design.target_nm", "Target peak wavelength [nm]"},
                             {"--d-min", "design.d_min_nm", "Minimum thickness [nm]"},
                             {"--d-max", "design.d_max_nm", "Maximum thickness [nm]"}});
    CLI::App* mz = add_cmd("maze-train", "Train the synapse array on the grid maze",
                           {{"--trials", "maze.n_trials", "Training trials"},
                            {"--rows", "maze.rows", "Maze rows"},
                            {"--cols", "maze.cols", "Maze columns"}});
    CLI::App* xg = add_cmd("xor", "Evaluate the two-dendrite XOR neuron",
                           {{"--n-seeds", "xor.n_seeds", "Seeds to evaluate"},
                            {"--inhib-power", "dendrite.inhib_power_w", "Inhibitory power [W]"}});
    CLI::App* pc = app.add_subcommand("print-config", "Dump the effective configuration");
    pc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        Config cfg = Config::defaults();
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& kv : overrides) cfg.set_pair(kv);
        for (const auto& [opt, key] : bound)
            if (opt->count() > 0) cfg.set(key, flag_values[key]);
        if (!seed_flag.empty()) cfg.set("seed", seed_flag);
        if (!out_flag.empty()) cfg.set("out.dir", out_flag);
        else if (const char* env = std::getenv("OPTOMEM_OUT_DIR"); env && *env)
            cfg.set("out.dir", env);

        const std::uint64_t seed = cfg.get_u64("seed");

        if (pc->parsed()) {
            for (const auto& [k, v] : cfg.items()) std::cout << k << " = " << v << '\n';
            return 0;
        }

        Artifacts artifacts;
        artifacts.dir = cfg.get_string("out.dir");
        fs::create_directories(artifacts.dir);

        std::string command;
        json result;
        if (iv->parsed()) {
            command = "iv-sweep";
            result = run_iv_sweep(cfg, artifacts, seed);
        } else if (lat->parsed()) {
            command = "latency-stats";
            result = run_latency_stats(cfg, artifacts, seed);
        } else if (cav->parsed()) {
            command = "cavity-design";
            result = run_cavity_design(cfg, artifacts, seed);
        } else if (mz->parsed()) {
            command = "maze-train";
            result = run_maze_train(cfg, artifacts, seed);
        } else if (xg->parsed()) {
            command = "xor";
            result = run_xor_cmd(cfg, artifacts, seed);
        }

        write_manifest(artifacts, command, cfg, seed, result);
        std::cout << command << ": wrote " << artifacts.names.size() << " artifact(s) to "
                  << artifacts.dir.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
