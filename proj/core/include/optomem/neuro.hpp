#pragma once

#include <vector>

#include "optomem/device.hpp"
#include "optomem/rng.hpp"

// Neuromorphic building blocks on top of the device model: a three-factor
// synapse (optical eligibility flag gating an electrical reward pulse) and a
// shunting-inhibition dendrite pair forming a single XOR neuron.

namespace optomem {

struct SynapseParams {
    // Non-volatile cell mounted so light lowers the threshold: the flag makes
    // an otherwise sub-threshold reward pulse switch the device.
    DeviceParams device;
    double bias_voltage = 0.1;   // continuous read bias [V]
    double flag_power = 2.2e-4;  // eligibility illumination [W]
    double reward_voltage = 0.4; // reward pulse amplitude [V]
    double reward_width = 5e-7;  // reward pulse width [s]
    int eligibility_window = 3;  // flag lifetime in time-steps

    SynapseParams();

    // Enforces the operating margins: the reward pulse alone sits below the
    // dark switching band, the flag alone (at read bias) never switches, and
    // flag + reward clears the illuminated threshold.
    void validate() const;
};

class ThreeFactorSynapse {
public:
    ThreeFactorSynapse() : ThreeFactorSynapse(SynapseParams()) {}
    explicit ThreeFactorSynapse(const SynapseParams& params);

    // (Re)arms the flag at the full window; a re-trigger extends it.
    void raise_eligibility();
    // Ages the flag by one time-step, saturating at 0. Touches no device state.
    void tick_eligibility();
    void clear_eligibility();
    int eligibility_remaining() const { return eligibility_; }
    bool eligible() const { return eligibility_ > 0; }

    // Reward pulse, illuminated at flag_power while eligible and dark
    // otherwise. Returns true when the pulse completed the staircase (the
    // synapse potentiated). The flag is consumed either way.
    bool apply_reward(RandomSource& rng, std::vector<SwitchEvent>* events = nullptr);

    double conductance() const;
    // Read current at the continuous bias, dark.
    double read_current() const;
    bool latched() const { return state_.latched; }

    const SynapseParams& params() const { return params_; }
    const DeviceState& device_state() const { return state_; }
    // Back to HRS, flag cleared.
    void reset();

private:
    SynapseParams params_;
    DeviceState state_;
    int eligibility_ = 0;
};

struct DendriteParams {
    // Volatile cell with light raising the threshold: coincident illumination
    // shunts the excitatory pulse.
    DeviceParams device;
    double excit_voltage = 0.5; // excitatory pulse amplitude [V]
    double excit_width = 5e-3;  // pulse width [s]
    double inhib_power = 5e-4;  // inhibitory illumination [W]
    double relax_tail = 1e-5;   // dark zero-bias settle time after the pulse [s]

    DendriteParams();

    // Enforces: pulse alone switches (amplitude above the dark threshold),
    // pulse under light stays strictly below the illuminated switching band,
    // and the tail is long enough for the volatile cell to relax.
    void validate() const;
};

class ShuntingDendrite {
public:
    ShuntingDendrite() : ShuntingDendrite(DendriteParams()) {}
    explicit ShuntingDendrite(const DendriteParams& params);

    // Drives one pulse window (voltage iff excitatory, light iff inhibitory)
    // and returns the read current at the end of the window. The relax tail
    // then restores HRS, so the dendrite is reusable. Event times are offsets
    // from the pulse start; tail events land after the pulse width.
    double respond(bool excitatory, bool inhibitory, RandomSource& rng,
                   std::vector<SwitchEvent>* events = nullptr);

    // Read current of a fully switched cell during the pulse, dark.
    double lrs_read_current() const;

    const DendriteParams& params() const { return params_; }
    const DeviceState& device_state() const { return state_; }

private:
    DendriteParams params_;
    DeviceState state_;
};

struct NeuronParams {
    DendriteParams dendrite;       // shared by both dendrites
    double soma_threshold = 2.5e-5; // [A]; default = half the latched read current

    void validate() const;
};

// Two mirror-wired shunting dendrites and a threshold soma. Input x drives
// dendrite 1 electrically and shunts dendrite 2 optically; y the reverse.
// The soma fires on the summed read current, which realizes XOR.
class DendriticNeuron {
public:
    DendriticNeuron() : DendriticNeuron(NeuronParams()) {}
    explicit DendriticNeuron(const NeuronParams& params);

    struct PairResponse {
        double i_d1 = 0.0;
        double i_d2 = 0.0;
        double sum() const { return i_d1 + i_d2; }
    };

    PairResponse respond(bool x, bool y, RandomSource& rng,
                         std::vector<SwitchEvent>* d1_events = nullptr,
                         std::vector<SwitchEvent>* d2_events = nullptr);
    // Strict threshold: ties stay silent.
    bool output(bool x, bool y, RandomSource& rng);

    const NeuronParams& params() const { return params_; }
    ShuntingDendrite& dendrite1() { return d1_; }
    ShuntingDendrite& dendrite2() { return d2_; }

private:
    NeuronParams params_;
    ShuntingDendrite d1_;
    ShuntingDendrite d2_;
};

} // namespace optomem
