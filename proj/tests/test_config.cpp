#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "optomem/config.hpp"
#include "optomem/csv.hpp"

using namespace optomem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    return path;
}

} // namespace

TEST_CASE("defaults reproduce the shipped device profiles") {
    const Config cfg = Config::defaults();
    CHECK(cfg.get_int("maze.rows") == 3);
    CHECK(cfg.get_double("ag-ag-nonvolatile.v_th_dark") == 0.52);
    CHECK(cfg.get_string("ag-ag-nonvolatile.k_vth") == "auto");
    CHECK(cfg.get_string("pt-ag-volatile.kind") == "volatile");

    const DeviceParams ag = device_from_config(cfg, "ag-ag-nonvolatile");
    const DeviceParams ref = ag_ag_nonvolatile();
    CHECK(ag.kind == ref.kind);
    CHECK(ag.polarity_sign == ref.polarity_sign);
    CHECK(ag.v_th_dark == ref.v_th_dark);
    CHECK(ag.v_c == ref.v_c);
    CHECK(ag.k_vth == ref.k_vth);
    CHECK(ag.k_v0 == ref.k_v0);

    const DeviceParams pt = device_from_config(cfg, "pt-ag-volatile");
    CHECK(pt.kind == DeviceKind::Volatile);
    CHECK(pt.v_c == 0.05);
}

TEST_CASE("config files overlay defaults and report bad lines") {
    const auto good = write_temp("optomem_cfg_good.cfg",
                                 "# comment only\n"
                                 "maze.rows = 5   # trailing comment\n"
                                 "seed=42\n"
                                 "\n"
                                 "xor.n_seeds = 7\n");
    const Config cfg = Config::from_file(good);
    CHECK(cfg.get_int("maze.rows") == 5);
    CHECK(cfg.get_u64("seed") == 42);
    CHECK(cfg.get_int("xor.n_seeds") == 7);
    CHECK(cfg.get_int("maze.cols") == 3); // untouched default
    std::remove(good.c_str());

    const auto noeq = write_temp("optomem_cfg_noeq.cfg", "what\n");
    CHECK_THROWS_AS(Config::from_file(noeq), ConfigError);
    std::remove(noeq.c_str());

    const auto unknown = write_temp("optomem_cfg_unknown.cfg", "nope = 1\n");
    CHECK_THROWS_AS(Config::from_file(unknown), ConfigError);
    std::remove(unknown.c_str());

    CHECK_THROWS_AS(Config::from_file("/no/such/file.cfg"), ConfigError);
}

TEST_CASE("unknown keys are rejected, profile fields are open") {
    Config cfg = Config::defaults();
    CHECK_THROWS_AS(cfg.set("nope", "1"), ConfigError);
    CHECK_THROWS_AS(cfg.set("nope.nope", "1"), ConfigError);
    CHECK_NOTHROW(cfg.set("cell-x.v_th_dark", "0.3"));
    CHECK_NOTHROW(cfg.set_pair("maze.rows=4"));
    CHECK(cfg.get_int("maze.rows") == 4);
    CHECK_THROWS_AS(cfg.set_pair("no equals sign"), ConfigError);
}

TEST_CASE("custom profiles recalibrate unless coefficients are pinned") {
    Config cfg = Config::defaults();
    cfg.set("cell-x.v_th_dark", "0.3");
    cfg.set("cell-x.kind", "volatile");
    const DeviceParams p = device_from_config(cfg, "cell-x");
    CHECK(p.kind == DeviceKind::Volatile);
    CHECK(p.v_th_dark == 0.3);
    CHECK(p.k_vth == doctest::Approx(0.16743318796537418).epsilon(1e-12));

    // Overriding a base parameter of a shipped profile re-derives the scales.
    Config cfg2 = Config::defaults();
    cfg2.set("ag-ag-nonvolatile.v_th_dark", "0.6");
    const DeviceParams q = device_from_config(cfg2, "ag-ag-nonvolatile");
    CHECK(q.k_vth == doctest::Approx(0.6 / std::log(6.0)).epsilon(1e-12));

    // An explicit number pins the coefficient instead.
    Config cfg3 = Config::defaults();
    cfg3.set("ag-ag-nonvolatile.k_vth", "0.111");
    const DeviceParams r = device_from_config(cfg3, "ag-ag-nonvolatile");
    CHECK(r.k_vth == 0.111);
    CHECK(r.k_v0 == doctest::Approx(0.18974973809803208).epsilon(1e-12));

    Config cfg4 = Config::defaults();
    cfg4.set("cell-x.kind", "plasma");
    CHECK_THROWS_AS(device_from_config(cfg4, "cell-x"), ConfigError);
}

TEST_CASE("cells and cell lists parse from 'row,col' text") {
    Config cfg = Config::defaults();
    const Cell start = cfg.get_cell("maze.start");
    CHECK(start.row == 1);
    CHECK(start.col == 1);
    CHECK(cfg.get_cells("maze.traps").size() == 3);

    cfg.set("maze.traps", "");
    CHECK(cfg.get_cells("maze.traps").empty());

    cfg.set("maze.start", "5");
    CHECK_THROWS_AS(cfg.get_cell("maze.start"), ConfigError);

    cfg.set("maze.start", "a,b");
    CHECK_THROWS_AS(cfg.get_cell("maze.start"), ConfigError);
}

TEST_CASE("typed getters reject garbage") {
    Config cfg = Config::defaults();
    CHECK_THROWS_AS(cfg.get_double("stack.ambient"), ConfigError);
    CHECK_THROWS_AS(cfg.get_string("not.a.key"), ConfigError);
    cfg.set("seed", "12abc");
    CHECK_THROWS_AS(cfg.get_u64("seed"), ConfigError);
    CHECK(cfg.has("maze.rows"));
    CHECK_FALSE(cfg.has("definitely.not"));
}

TEST_CASE("experiment builders assemble validated parameter sets") {
    const Config cfg = Config::defaults();

    const MazeSpec maze = maze_from_config(cfg);
    CHECK(maze.rows == 3);
    CHECK(maze.traps.size() == 3);
    CHECK(maze.max_steps_per_trial == 30);

    const EpsilonSchedule eps = epsilon_from_config(cfg);
    CHECK(eps.eps_start == 1.0);
    CHECK(eps.eps_end == 0.1);
    CHECK(eps.decay_fraction == 0.5);

    // The synapse always mounts its cell in the threshold-lowering direction,
    // whatever the profile says.
    const SynapseParams syn = synapse_from_config(cfg);
    CHECK(syn.device.polarity_sign == -1);
    CHECK(syn.flag_power == 2.2e-4);

    const DendriteParams den = dendrite_from_config(cfg);
    CHECK(den.device.kind == DeviceKind::Volatile);
    CHECK(den.inhib_power == 5e-4);

    const NeuronParams neu = neuron_from_config(cfg);
    CHECK(neu.soma_threshold == 2.5e-5);
}

TEST_CASE("layer stacks parse with an open marker") {
    Config cfg = Config::defaults();
    const auto stack = stack_from_config(cfg);
    CHECK(stack.ambient == "air");
    CHECK(stack.substrate == "sio2");
    REQUIRE(stack.layers.size() == 3);
    CHECK(stack.layers[0].material == "ag");
    CHECK(stack.layers[0].thickness_nm == 15.0);
    CHECK(stack.layers[1].material == "gese3");
    CHECK(stack.layers[1].thickness_nm < 0.0);
    CHECK(stack.layers[2].thickness_nm == 100.0);

    cfg.set("stack.layers", "ag:15");
    CHECK(stack_from_config(cfg).layers.size() == 1);

    cfg.set("stack.layers", "");
    CHECK(stack_from_config(cfg).layers.empty());

    cfg.set("stack.layers", "ag");
    CHECK_THROWS_AS(stack_from_config(cfg), ConfigError);
}

TEST_CASE("doubles format as the shortest round-trip string") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-0.455) == "-0.455");
    const double values[] = {0.0,    1.0,        0.1,   6.7379469990854676e-06,
                             2.4966001410997934e-05, 1e-300, -0.455, 0.052000000000000005};
    for (double v : values) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("fnv1a64 matches the reference vectors") {
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(to_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");

    const auto path = write_temp("optomem_fnv.bin", "a");
    CHECK(file_fnv1a64(path) == 0xaf63dc4c8601ec8cull);
    std::remove(path.c_str());
}
