#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optomem/rng.hpp"

// Behavioral model of a dual-input (electrical + optical) chalcogenide
// memristor. Conductance moves on a discrete staircase between a high
// resistance state (HRS) and a low resistance state (LRS); illumination
// shifts the switching threshold (sign set by bias polarity), adds a
// photovoltaic offset to the I-V characteristic, and can destabilize the
// latched state of an otherwise non-volatile device.
//
// Units are SI throughout: volts, amperes, siemens, seconds, watts.

namespace optomem {

enum class DeviceKind { NonVolatile, Volatile };

enum class Transition { Set, PartialSet, Reset };

enum class Cause { Electrical, Optical, Coincident, Relaxation };

struct DeviceParams {
    DeviceKind kind = DeviceKind::NonVolatile;
    int polarity_sign = +1;     // +1: light raises the threshold, -1: lowers it
    double v_th_dark = 0.4;     // dark switching threshold [V]
    double v_hold = 0.1;        // below this a volatile filament dissolves [V]
    double g_hrs = 1e-7;        // staircase bottom [S]
    double g_lrs = 1e-4;        // staircase top [S]
    int n_intermediate = 5;     // staircase steps from HRS to LRS
    double k_vth = 0.0;         // threshold shift scale [V]; see calibrate()
    double k_v0 = 0.0;          // photovoltaic offset scale [V]; see calibrate()
    double p_ref = 1e-4;        // optical reference power in the log laws [W]
    double tau0 = 1e-3;         // per-step latency scale at threshold [s]
    double v_c = 0.05;          // latency voltage acceleration [V]
    double tau_relax = 1e-6;    // volatile relaxation time once V < v_hold [s]
    double p_volatile = 1e-4;   // above this light deletes non-volatility [W]
    double i_compliance = 1e-3; // current clamp magnitude [A]

    // Fills k_vth so the threshold shift magnitude equals v_th_dark at 0.5 mW,
    // and k_v0 so the open-circuit voltage is 455 mV at 1 mW.
    void calibrate();

    // Throws std::invalid_argument on an inconsistent parameter set.
    void validate() const;
};

// Shipped parameter sets. Ag/GeSe3/Ag latches (non-volatile); Pt/GeSe3/Ag
// relaxes back to HRS once bias drops below v_hold (volatile).
DeviceParams ag_ag_nonvolatile();
DeviceParams pt_ag_volatile();

struct DeviceState {
    int step_index = 0;   // 0 = HRS .. n_intermediate = LRS
    bool latched = false; // true only at the top of the staircase
    // Remaining time to the next staircase advance, sampled lazily while the
    // drive satisfies the switching condition.
    std::optional<double> pending_latency;
    // Contiguous time spent below v_hold (volatile relaxation clock).
    double sub_hold_accum = 0.0;
};

// One constant-drive segment of a stimulus waveform.
struct StimulusSample {
    double voltage = 0.0;       // [V]
    double optical_power = 0.0; // [W], >= 0
    double duration = 0.0;      // [s], > 0
};

struct SwitchEvent {
    double time = 0.0; // offset from the start of the sample that produced it [s]
    Transition transition;
    Cause cause;
};

// Conductance is a pure function of the staircase position.
double conductance(const DeviceParams& params, const DeviceState& state);

// Threshold under illumination. The shift grows logarithmically with power
// and is clamped so the threshold never drops below 5% of its dark value.
double effective_threshold(const DeviceParams& params, double optical_power);

// Photovoltaic open-circuit voltage; zero in the dark, sign follows polarity.
double open_circuit_voltage(const DeviceParams& params, double optical_power);

// I = G * (V - V0(P)), clamped to +/- i_compliance. At V = 0 this is the
// short-circuit photocurrent.
double device_current(const DeviceParams& params, const DeviceState& state,
                      double voltage, double optical_power);

// Draw of the time to the next staircase advance at overdrive delta_v
// (= V - effective threshold): Exponential with mean tau0 * exp(-delta_v/v_c).
double sample_latency(const DeviceParams& params, double delta_v, RandomSource& rng);

// Advances the device through one constant-drive segment. Event times are
// offsets into the segment and come out non-decreasing. Segments are resolved
// event by event, so a single call covers any duration exactly.
//
// Rules, in order:
//   1. SET path while V >= max(0.8 * effective threshold, v_hold): partial
//      steps are stochastic below threshold, faster above; a filament needs
//      at least the holding bias to grow.
//   2. Volatile devices reset after tau_relax of contiguous sub-hold time.
//   3. A latched non-volatile device illuminated above p_volatile near zero
//      bias resets immediately: light deletes the non-volatility.
//
// Throws std::invalid_argument on non-finite voltage/power, negative power,
// or non-positive duration.
std::vector<SwitchEvent> step(const DeviceParams& params, DeviceState& state,
                              const StimulusSample& sample, RandomSource& rng);

// Back to HRS, pending latency and relaxation clock cleared.
void reset_device(DeviceState& state);

// Quasi-static triangular sweep v_start -> v_stop -> v_start at fixed optical
// power, dwelling dwell_s per grid point. Returns (voltage, current) pairs in
// sweep order. Throws std::invalid_argument on a non-positive v_step or an
// empty grid.
std::vector<std::pair<double, double>> sweep_iv(const DeviceParams& params,
                                                double v_start, double v_stop,
                                                double v_step, double optical_power,
                                                RandomSource& rng,
                                                double dwell_s = 1e-3);

const char* to_string(Transition t);
const char* to_string(Cause c);

} // namespace optomem
