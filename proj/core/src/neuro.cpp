#include "optomem/neuro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optomem {

SynapseParams::SynapseParams() {
    device = ag_ag_nonvolatile();
    device.polarity_sign = -1;
}

void SynapseParams::validate() const {
    device.validate();
    if (device.kind != DeviceKind::NonVolatile)
        throw std::invalid_argument("synapse device must be non-volatile");
    if (device.polarity_sign != -1)
        throw std::invalid_argument("synapse light must lower the threshold");
    if (!(flag_power > 0.0) || !(reward_width > 0.0) || !(bias_voltage >= 0.0))
        throw std::invalid_argument("synapse drive parameters must be positive");
    if (eligibility_window < 1)
        throw std::invalid_argument("eligibility window must be >= 1");

    const double vth_lit = effective_threshold(device, flag_power);
    const double gate_lit = std::max(0.8 * vth_lit, device.v_hold);
    if (!(reward_voltage < 0.8 * device.v_th_dark))
        throw std::invalid_argument("reward pulse must sit below the dark switching band");
    if (!(reward_voltage > vth_lit) || !(reward_voltage >= gate_lit))
        throw std::invalid_argument("reward pulse must clear the illuminated threshold");
    if (!(bias_voltage < gate_lit))
        throw std::invalid_argument("read bias must sit below the illuminated switching band");
}

ThreeFactorSynapse::ThreeFactorSynapse(const SynapseParams& params) : params_(params) {
    params_.validate();
}

void ThreeFactorSynapse::raise_eligibility() {
    eligibility_ = params_.eligibility_window;
}

void ThreeFactorSynapse::tick_eligibility() {
    if (eligibility_ > 0) --eligibility_;
}

void ThreeFactorSynapse::clear_eligibility() {
    eligibility_ = 0;
}

bool ThreeFactorSynapse::apply_reward(RandomSource& rng, std::vector<SwitchEvent>* events) {
    const bool was_latched = state_.latched;
    const double power = eligible() ? params_.flag_power : 0.0;
    auto pulse_events =
        step(params_.device, state_, {params_.reward_voltage, power, params_.reward_width}, rng);
    if (events)
        events->insert(events->end(), pulse_events.begin(), pulse_events.end());
    eligibility_ = 0;
    return state_.latched && !was_latched;
}

double ThreeFactorSynapse::conductance() const {
    return optomem::conductance(params_.device, state_);
}

double ThreeFactorSynapse::read_current() const {
    return device_current(params_.device, state_, params_.bias_voltage, 0.0);
}

void ThreeFactorSynapse::reset() {
    reset_device(state_);
    eligibility_ = 0;
}

DendriteParams::DendriteParams() {
    device = pt_ag_volatile();
}

void DendriteParams::validate() const {
    device.validate();
    if (device.kind != DeviceKind::Volatile)
        throw std::invalid_argument("dendrite device must be volatile");
    if (device.polarity_sign != +1)
        throw std::invalid_argument("dendrite light must raise the threshold");
    if (!(excit_width > 0.0) || !(inhib_power > 0.0))
        throw std::invalid_argument("dendrite drive parameters must be positive");
    if (!(excit_voltage > device.v_th_dark))
        throw std::invalid_argument("excitatory pulse must exceed the dark threshold");
    const double vth_lit = effective_threshold(device, inhib_power);
    if (!(excit_voltage < 0.8 * vth_lit))
        throw std::invalid_argument("illumination must not leave the pulse in the switching band");
    if (!(relax_tail >= device.tau_relax))
        throw std::invalid_argument("relax tail shorter than the relaxation time");
}

ShuntingDendrite::ShuntingDendrite(const DendriteParams& params) : params_(params) {
    params_.validate();
}

double ShuntingDendrite::respond(bool excitatory, bool inhibitory, RandomSource& rng,
                                 std::vector<SwitchEvent>* events) {
    const double v = excitatory ? params_.excit_voltage : 0.0;
    const double p = inhibitory ? params_.inhib_power : 0.0;

    auto pulse_events = step(params_.device, state_, {v, p, params_.excit_width}, rng);
    const double current = device_current(params_.device, state_, v, p);

    auto tail_events = step(params_.device, state_, {0.0, 0.0, params_.relax_tail}, rng);
    if (events) {
        events->insert(events->end(), pulse_events.begin(), pulse_events.end());
        for (auto ev : tail_events) {
            ev.time += params_.excit_width;
            events->push_back(ev);
        }
    }
    return current;
}

double ShuntingDendrite::lrs_read_current() const {
    return params_.device.g_lrs * params_.excit_voltage;
}

void NeuronParams::validate() const {
    dendrite.validate();
    if (!std::isfinite(soma_threshold) || soma_threshold < 0.0)
        throw std::invalid_argument("soma threshold must be finite and non-negative");
}

DendriticNeuron::DendriticNeuron(const NeuronParams& params)
    : params_(params), d1_(params.dendrite), d2_(params.dendrite) {
    params_.validate();
}

DendriticNeuron::PairResponse DendriticNeuron::respond(bool x, bool y, RandomSource& rng,
                                                       std::vector<SwitchEvent>* d1_events,
                                                       std::vector<SwitchEvent>* d2_events) {
    PairResponse r;
    r.i_d1 = d1_.respond(x, y, rng, d1_events);
    r.i_d2 = d2_.respond(y, x, rng, d2_events);
    return r;
}

bool DendriticNeuron::output(bool x, bool y, RandomSource& rng) {
    return respond(x, y, rng).sum() > params_.soma_threshold;
}

} // namespace optomem
