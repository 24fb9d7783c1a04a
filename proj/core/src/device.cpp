#include "optomem/device.hpp"

#include <cmath>
#include <stdexcept>

namespace optomem {

void DeviceParams::calibrate() {
    // Anchors: threshold shift magnitude equals v_th_dark at 0.5 mW (a 100%
    // relative change), open-circuit voltage is 455 mV at 1 mW.
    k_vth = v_th_dark / std::log1p(5e-4 / p_ref);
    k_v0 = 0.455 / std::log1p(1e-3 / p_ref);
}

void DeviceParams::validate() const {
    if (polarity_sign != 1 && polarity_sign != -1)
        throw std::invalid_argument("polarity_sign must be +1 or -1");
    if (!(v_th_dark > 0.0) || !(v_hold > 0.0) || !(v_hold < v_th_dark))
        throw std::invalid_argument("need 0 < v_hold < v_th_dark");
    if (!(g_hrs > 0.0) || !(g_lrs > g_hrs))
        throw std::invalid_argument("need 0 < g_hrs < g_lrs");
    if (n_intermediate < 1)
        throw std::invalid_argument("n_intermediate must be >= 1");
    if (!(k_vth > 0.0) || !(k_v0 > 0.0))
        throw std::invalid_argument("calibration scales must be positive");
    if (!(p_ref > 0.0) || !(tau0 > 0.0) || !(v_c > 0.0) || !(tau_relax > 0.0) ||
        !(p_volatile > 0.0) || !(i_compliance > 0.0))
        throw std::invalid_argument("scale parameters must be positive");
}

DeviceParams ag_ag_nonvolatile() {
    DeviceParams p;
    p.kind = DeviceKind::NonVolatile;
    p.polarity_sign = +1;
    // Threshold above the 0.4 V protocol pulse so a dark pulse sits strictly
    // below the stochastic switching band; sharper latency acceleration so a
    // 500 ns pulse completes the staircase reliably once light arms it.
    p.v_th_dark = 0.52;
    p.v_c = 0.02;
    p.calibrate();
    return p;
}

DeviceParams pt_ag_volatile() {
    DeviceParams p;
    p.kind = DeviceKind::Volatile;
    p.polarity_sign = +1;
    p.v_th_dark = 0.40;
    p.v_c = 0.05;
    p.calibrate();
    return p;
}

double conductance(const DeviceParams& params, const DeviceState& state) {
    double frac = static_cast<double>(state.step_index) / params.n_intermediate;
    return params.g_hrs + frac * (params.g_lrs - params.g_hrs);
}

double effective_threshold(const DeviceParams& params, double optical_power) {
    double shift = params.k_vth * std::log1p(optical_power / params.p_ref);
    double vth = params.v_th_dark + params.polarity_sign * shift;
    return std::max(0.05 * params.v_th_dark, vth);
}

double open_circuit_voltage(const DeviceParams& params, double optical_power) {
    return params.polarity_sign * params.k_v0 * std::log1p(optical_power / params.p_ref);
}

double device_current(const DeviceParams& params, const DeviceState& state,
                      double voltage, double optical_power) {
    double i = conductance(params, state) *
               (voltage - open_circuit_voltage(params, optical_power));
    if (i > params.i_compliance) return params.i_compliance;
    if (i < -params.i_compliance) return -params.i_compliance;
    return i;
}

double sample_latency(const DeviceParams& params, double delta_v, RandomSource& rng) {
    return rng.exponential(params.tau0 * std::exp(-delta_v / params.v_c));
}

static Cause set_cause(const DeviceParams& params, double v, double p) {
    if (p <= 0.0) return Cause::Electrical;
    return v >= params.v_th_dark ? Cause::Electrical : Cause::Coincident;
}

std::vector<SwitchEvent> step(const DeviceParams& params, DeviceState& state,
                              const StimulusSample& sample, RandomSource& rng) {
    const double v = sample.voltage;
    const double p = sample.optical_power;
    const double dur = sample.duration;
    if (!std::isfinite(v) || !std::isfinite(p) || !std::isfinite(dur))
        throw std::invalid_argument("non-finite stimulus");
    if (p < 0.0) throw std::invalid_argument("negative optical power");
    if (!(dur > 0.0)) throw std::invalid_argument("non-positive duration");

    std::vector<SwitchEvent> events;
    const double vth = effective_threshold(params, p);

    // 1. SET path. Partial steps are stochastic from 0.8*vth up, accelerating
    // above threshold. A filament also needs at least the holding bias to
    // grow, which keeps this rule disjoint from the two reset rules below.
    if (!state.latched && v >= std::max(0.8 * vth, params.v_hold)) {
        const double dv = v - vth;
        double t = 0.0;
        while (true) {
            if (!state.pending_latency)
                state.pending_latency = sample_latency(params, dv, rng);
            if (t + *state.pending_latency <= dur) {
                t += *state.pending_latency;
                state.pending_latency.reset();
                ++state.step_index;
                if (state.step_index >= params.n_intermediate) {
                    state.step_index = params.n_intermediate;
                    state.latched = true;
                    events.push_back({t, Transition::Set, set_cause(params, v, p)});
                    break;
                }
                events.push_back({t, Transition::PartialSet, set_cause(params, v, p)});
            } else {
                *state.pending_latency -= dur - t;
                break;
            }
        }
    }

    // 2. Volatile relaxation: tau_relax of contiguous sub-hold time dissolves
    // whatever staircase progress exists.
    if (params.kind == DeviceKind::Volatile) {
        if (v < params.v_hold) {
            const double before = state.sub_hold_accum;
            state.sub_hold_accum += dur;
            if (state.step_index > 0 && before < params.tau_relax &&
                state.sub_hold_accum >= params.tau_relax) {
                state.step_index = 0;
                state.latched = false;
                state.pending_latency.reset();
                events.push_back({params.tau_relax - before, Transition::Reset,
                                  Cause::Relaxation});
            }
        } else {
            state.sub_hold_accum = 0.0;
        }
    }

    // 3. Light deletes non-volatility: a latched device held near zero bias
    // under sufficient illumination resets immediately.
    if (params.kind == DeviceKind::NonVolatile && state.latched &&
        std::abs(v) < params.v_hold && p > params.p_volatile) {
        state.step_index = 0;
        state.latched = false;
        state.pending_latency.reset();
        events.push_back({0.0, Transition::Reset, Cause::Optical});
    }

    return events;
}

void reset_device(DeviceState& state) {
    state = DeviceState{};
}

std::vector<std::pair<double, double>> sweep_iv(const DeviceParams& params,
                                                double v_start, double v_stop,
                                                double v_step, double optical_power,
                                                RandomSource& rng, double dwell_s) {
    if (!(v_step > 0.0)) throw std::invalid_argument("v_step must be positive");
    if (!(dwell_s > 0.0)) throw std::invalid_argument("dwell must be positive");

    const double dir = v_stop >= v_start ? 1.0 : -1.0;
    const double span = std::abs(v_stop - v_start);
    const long n = static_cast<long>(std::floor(span / v_step + 1e-9));
    std::vector<double> grid;
    grid.reserve(2 * n + 1);
    for (long i = 0; i <= n; ++i) grid.push_back(v_start + dir * v_step * i);
    for (long i = n - 1; i >= 0; --i) grid.push_back(v_start + dir * v_step * i);
    if (grid.empty()) throw std::invalid_argument("empty sweep grid");

    DeviceState state;
    std::vector<std::pair<double, double>> trace;
    trace.reserve(grid.size());
    for (double v : grid) {
        step(params, state, {v, optical_power, dwell_s}, rng);
        trace.emplace_back(v, device_current(params, state, v, optical_power));
    }
    return trace;
}

const char* to_string(Transition t) {
    switch (t) {
        case Transition::Set: return "Set";
        case Transition::PartialSet: return "PartialSet";
        case Transition::Reset: return "Reset";
    }
    return "?";
}

const char* to_string(Cause c) {
    switch (c) {
        case Cause::Electrical: return "Electrical";
        case Cause::Optical: return "Optical";
        case Cause::Coincident: return "Coincident";
        case Cause::Relaxation: return "Relaxation";
    }
    return "?";
}

} // namespace optomem
