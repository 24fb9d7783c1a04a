#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "optomem/device.hpp"
#include "optomem/maze.hpp"
#include "optomem/neuro.hpp"
#include "optomem/optics.hpp"

// Flat key=value configuration: '#' comments, dotted namespaces, every key
// has an embedded default. Device parameter sets live in per-profile
// namespaces ("ag-ag-nonvolatile.v_th_dark = 0.52"); additional profiles may
// be declared the same way. Overlays (file, then explicit sets) win over
// defaults; unknown keys are rejected so typos fail loudly.

namespace optomem {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    // All defaults, including both shipped device profiles with their
    // calibrated coefficients.
    static Config defaults();
    // Defaults overlaid with a config file.
    static Config from_file(const std::string& path);

    // Overlays one file on top of the current values.
    void load_file(const std::string& path);
    // Overlays a single value. Throws ConfigError for a key that is neither
    // a known default nor a device-profile field.
    void set(const std::string& key, const std::string& value);
    // Parses "key=value".
    void set_pair(const std::string& assignment);

    bool has(const std::string& key) const;
    const std::string& get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    Cell get_cell(const std::string& key) const;
    std::vector<Cell> get_cells(const std::string& key) const; // ';'-separated, may be empty

    // Sorted key/value view (the print-config and manifest payload).
    const std::map<std::string, std::string>& items() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Builds a device parameter set from the profile's namespace. Starts from
// the shipped set when the name matches one, otherwise from stock defaults;
// a field whose value is "auto" (or an absent k_vth/k_v0) is recalibrated.
DeviceParams device_from_config(const Config& cfg, const std::string& profile);

MazeSpec maze_from_config(const Config& cfg);
EpsilonSchedule epsilon_from_config(const Config& cfg);
SynapseParams synapse_from_config(const Config& cfg);
DendriteParams dendrite_from_config(const Config& cfg);
NeuronParams neuron_from_config(const Config& cfg);

// Stack layers parse from "material:thickness" entries separated by ';',
// with "open" marking the swept layer (e.g. "ag:15;gese3:open;ag:100").
optics::LayerStack stack_from_config(const Config& cfg);

} // namespace optomem
