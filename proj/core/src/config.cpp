#include "optomem/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "optomem/csv.hpp"

namespace optomem {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

const std::set<std::string>& device_fields() {
    static const std::set<std::string> fields = {
        "kind",  "polarity_sign", "v_th_dark",  "v_hold",     "g_hrs",
        "g_lrs", "n_intermediate", "k_vth",     "k_v0",       "p_ref",
        "tau0",  "v_c",            "tau_relax", "p_volatile", "i_compliance"};
    return fields;
}

bool is_profile_key(const std::string& key) {
    const auto dot = key.rfind('.');
    if (dot == std::string::npos || dot == 0) return false;
    return device_fields().count(key.substr(dot + 1)) != 0;
}

void put_profile(std::map<std::string, std::string>& m, const std::string& name,
                 const DeviceParams& p) {
    const std::string pre = name + ".";
    m[pre + "kind"] = p.kind == DeviceKind::NonVolatile ? "nonvolatile" : "volatile";
    m[pre + "polarity_sign"] = std::to_string(p.polarity_sign);
    m[pre + "v_th_dark"] = format_double(p.v_th_dark);
    m[pre + "v_hold"] = format_double(p.v_hold);
    m[pre + "g_hrs"] = format_double(p.g_hrs);
    m[pre + "g_lrs"] = format_double(p.g_lrs);
    m[pre + "n_intermediate"] = std::to_string(p.n_intermediate);
    // "auto" = derived from the anchor points whenever the base parameters
    // change; explicit numbers pin the coefficients instead.
    m[pre + "k_vth"] = "auto";
    m[pre + "k_v0"] = "auto";
    m[pre + "p_ref"] = format_double(p.p_ref);
    m[pre + "tau0"] = format_double(p.tau0);
    m[pre + "v_c"] = format_double(p.v_c);
    m[pre + "tau_relax"] = format_double(p.tau_relax);
    m[pre + "p_volatile"] = format_double(p.p_volatile);
    m[pre + "i_compliance"] = format_double(p.i_compliance);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("not a number for " + key + ": '" + value + "'");
    return d;
}

long parse_long(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    const long n = std::strtol(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("not an integer for " + key + ": '" + value + "'");
    return n;
}

Cell parse_cell(const std::string& key, const std::string& value) {
    const auto parts = split(value, ',');
    if (parts.size() != 2)
        throw ConfigError("expected 'row,col' for " + key + ": '" + value + "'");
    return {static_cast<int>(parse_long(key, parts[0])),
            static_cast<int>(parse_long(key, parts[1]))};
}

} // namespace

Config Config::defaults() {
    Config cfg;
    auto& m = cfg.values_;

    m["seed"] = "1";
    m["out.dir"] = "out";
    m["materials.dir"] = ""; // empty = bundled data

    put_profile(m, "ag-ag-nonvolatile", ag_ag_nonvolatile());
    put_profile(m, "pt-ag-volatile", pt_ag_volatile());

    m["iv.profile"] = "ag-ag-nonvolatile";
    m["iv.power_w"] = "0.001";
    m["iv.v_min"] = "0";
    m["iv.v_max"] = "0.7";
    m["iv.v_step"] = "0.005";
    m["iv.dwell_s"] = "0.001";

    m["latency.profile"] = "ag-ag-nonvolatile";
    m["latency.delta_v"] = "0.1";
    m["latency.n_samples"] = "100000";

    m["stack.ambient"] = "air";
    m["stack.layers"] = "ag:15;gese3:open;ag:100";
    m["stack.substrate"] = "sio2";
    m["design.target_nm"] = "637";
    m["design.d_min_nm"] = "5";
    m["design.d_max_nm"] = "300";
    m["design.lambda_min_nm"] = "380";
    m["design.lambda_max_nm"] = "1400";
    m["design.n_points"] = "511";

    const MazeSpec maze;
    m["maze.rows"] = std::to_string(maze.rows);
    m["maze.cols"] = std::to_string(maze.cols);
    m["maze.start"] = "1,1";
    m["maze.cheese"] = "0,2";
    m["maze.traps"] = "0,0;2,0;2,2";
    m["maze.max_steps"] = std::to_string(maze.max_steps_per_trial);
    m["maze.n_trials"] = "200";
    const EpsilonSchedule eps;
    m["maze.epsilon_start"] = format_double(eps.eps_start);
    m["maze.epsilon_end"] = format_double(eps.eps_end);
    m["maze.decay_fraction"] = format_double(eps.decay_fraction);

    const SynapseParams syn;
    m["synapse.profile"] = "ag-ag-nonvolatile";
    m["synapse.bias_v"] = format_double(syn.bias_voltage);
    m["synapse.flag_power_w"] = format_double(syn.flag_power);
    m["synapse.reward_v"] = format_double(syn.reward_voltage);
    m["synapse.reward_width_s"] = format_double(syn.reward_width);
    m["synapse.eligibility_window"] = std::to_string(syn.eligibility_window);

    const DendriteParams den;
    m["dendrite.profile"] = "pt-ag-volatile";
    m["dendrite.excit_v"] = format_double(den.excit_voltage);
    m["dendrite.excit_width_s"] = format_double(den.excit_width);
    m["dendrite.inhib_power_w"] = format_double(den.inhib_power);
    m["dendrite.relax_tail_s"] = format_double(den.relax_tail);

    const NeuronParams neu;
    m["neuron.soma_threshold_a"] = format_double(neu.soma_threshold);
    m["xor.n_seeds"] = "100";

    return cfg;
}

Config Config::from_file(const std::string& path) {
    Config cfg = defaults();
    cfg.load_file(path);
    return cfg;
}

void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        try {
            set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void Config::set(const std::string& key, const std::string& value) {
    if (key.empty()) throw ConfigError("empty config key");
    if (values_.count(key) == 0 && !is_profile_key(key))
        throw ConfigError("unknown config key: " + key);
    values_[key] = value;
}

void Config::set_pair(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected key=value: '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

double Config::get_double(const std::string& key) const {
    return parse_double(key, get_string(key));
}

int Config::get_int(const std::string& key) const {
    return static_cast<int>(parse_long(key, get_string(key)));
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = trim(get_string(key));
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError("not an unsigned integer for " + key + ": '" + v + "'");
    return n;
}

Cell Config::get_cell(const std::string& key) const {
    return parse_cell(key, get_string(key));
}

std::vector<Cell> Config::get_cells(const std::string& key) const {
    const std::string text = trim(get_string(key));
    std::vector<Cell> cells;
    if (text.empty()) return cells;
    for (const auto& part : split(text, ';')) cells.push_back(parse_cell(key, part));
    return cells;
}

DeviceParams device_from_config(const Config& cfg, const std::string& profile) {
    DeviceParams p;
    if (profile == "ag-ag-nonvolatile")
        p = ag_ag_nonvolatile();
    else if (profile == "pt-ag-volatile")
        p = pt_ag_volatile();

    const std::string pre = profile + ".";
    const auto raw = [&](const std::string& field) -> const std::string* {
        return cfg.has(pre + field) ? &cfg.get_string(pre + field) : nullptr;
    };
    const auto num = [&](const std::string& field, double& target) {
        if (const auto* v = raw(field); v && trim(*v) != "auto")
            target = parse_double(pre + field, *v);
    };

    if (const auto* v = raw("kind")) {
        const std::string kind = trim(*v);
        if (kind == "nonvolatile")
            p.kind = DeviceKind::NonVolatile;
        else if (kind == "volatile")
            p.kind = DeviceKind::Volatile;
        else
            throw ConfigError("unknown device kind: '" + kind + "'");
    }
    if (const auto* v = raw("polarity_sign"))
        p.polarity_sign = static_cast<int>(parse_long(pre + "polarity_sign", *v));
    if (const auto* v = raw("n_intermediate"))
        p.n_intermediate = static_cast<int>(parse_long(pre + "n_intermediate", *v));
    num("v_th_dark", p.v_th_dark);
    num("v_hold", p.v_hold);
    num("g_hrs", p.g_hrs);
    num("g_lrs", p.g_lrs);
    num("p_ref", p.p_ref);
    num("tau0", p.tau0);
    num("v_c", p.v_c);
    num("tau_relax", p.tau_relax);
    num("p_volatile", p.p_volatile);
    num("i_compliance", p.i_compliance);

    // Coefficients: explicit numbers win; "auto" or absence recalibrates.
    const auto* kv = raw("k_vth");
    const auto* k0 = raw("k_v0");
    p.calibrate();
    if (kv && trim(*kv) != "auto") p.k_vth = parse_double(pre + "k_vth", *kv);
    if (k0 && trim(*k0) != "auto") p.k_v0 = parse_double(pre + "k_v0", *k0);

    p.validate();
    return p;
}

MazeSpec maze_from_config(const Config& cfg) {
    MazeSpec maze;
    maze.rows = cfg.get_int("maze.rows");
    maze.cols = cfg.get_int("maze.cols");
    maze.start = cfg.get_cell("maze.start");
    maze.cheese = cfg.get_cell("maze.cheese");
    maze.traps = cfg.get_cells("maze.traps");
    maze.max_steps_per_trial = cfg.get_int("maze.max_steps");
    maze.validate();
    return maze;
}

EpsilonSchedule epsilon_from_config(const Config& cfg) {
    EpsilonSchedule eps;
    eps.eps_start = cfg.get_double("maze.epsilon_start");
    eps.eps_end = cfg.get_double("maze.epsilon_end");
    eps.decay_fraction = cfg.get_double("maze.decay_fraction");
    return eps;
}

SynapseParams synapse_from_config(const Config& cfg) {
    SynapseParams syn;
    syn.device = device_from_config(cfg, cfg.get_string("synapse.profile"));
    // The synapse mounts the cell in the threshold-lowering orientation.
    syn.device.polarity_sign = -1;
    syn.bias_voltage = cfg.get_double("synapse.bias_v");
    syn.flag_power = cfg.get_double("synapse.flag_power_w");
    syn.reward_voltage = cfg.get_double("synapse.reward_v");
    syn.reward_width = cfg.get_double("synapse.reward_width_s");
    syn.eligibility_window = cfg.get_int("synapse.eligibility_window");
    syn.validate();
    return syn;
}

DendriteParams dendrite_from_config(const Config& cfg) {
    DendriteParams den;
    den.device = device_from_config(cfg, cfg.get_string("dendrite.profile"));
    den.excit_voltage = cfg.get_double("dendrite.excit_v");
    den.excit_width = cfg.get_double("dendrite.excit_width_s");
    den.inhib_power = cfg.get_double("dendrite.inhib_power_w");
    den.relax_tail = cfg.get_double("dendrite.relax_tail_s");
    den.validate();
    return den;
}

NeuronParams neuron_from_config(const Config& cfg) {
    NeuronParams neu;
    neu.dendrite = dendrite_from_config(cfg);
    neu.soma_threshold = cfg.get_double("neuron.soma_threshold_a");
    neu.validate();
    return neu;
}

optics::LayerStack stack_from_config(const Config& cfg) {
    optics::LayerStack stack;
    stack.ambient = trim(cfg.get_string("stack.ambient"));
    stack.substrate = trim(cfg.get_string("stack.substrate"));
    stack.layers.clear();
    const std::string text = trim(cfg.get_string("stack.layers"));
    if (text.empty()) return stack;
    for (const auto& part : split(text, ';')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw ConfigError("expected material:thickness in stack.layers: '" + part + "'");
        optics::Layer layer;
        layer.material = trim(part.substr(0, colon));
        const std::string t = trim(part.substr(colon + 1));
        layer.thickness_nm = t == "open" ? -1.0 : parse_double("stack.layers", t);
        stack.layers.push_back(layer);
    }
    return stack;
}

} // namespace optomem
