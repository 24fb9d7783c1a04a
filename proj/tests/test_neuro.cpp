#include "doctest.h"

#include <stdexcept>
#include <cmath>
#include <vector>

#include "optomem/neuro.hpp"

using namespace optomem;

namespace {

bool aligned(RandomSource& a, RandomSource& b) { return a.u64() == b.u64(); }

} // namespace

TEST_CASE("synapse defaults describe a working three-factor cell") {
    const SynapseParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.device.kind == DeviceKind::NonVolatile);
    CHECK(p.device.polarity_sign == -1);
    // Light drops the threshold below the reward amplitude; the read bias
    // stays under the illuminated switching band.
    CHECK(effective_threshold(p.device, p.flag_power) ==
          doctest::Approx(0.1824332498381956).epsilon(1e-12));
    CHECK(p.reward_voltage < 0.8 * p.device.v_th_dark);
    CHECK(p.bias_voltage < 0.8 * effective_threshold(p.device, p.flag_power));
}

TEST_CASE("synapse validation rejects broken operating points") {
    SynapseParams p;
    p.reward_voltage = 0.45; // inside the dark switching band
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SynapseParams{};
    p.flag_power = 1e-5; // too dim to pull the threshold under the reward
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SynapseParams{};
    p.bias_voltage = 0.2; // read bias would switch an eligible cell
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SynapseParams{};
    p.eligibility_window = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SynapseParams{};
    p.device.kind = DeviceKind::Volatile;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = SynapseParams{};
    p.device.polarity_sign = +1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("eligibility counts down and re-arms") {
    ThreeFactorSynapse syn;
    CHECK(syn.eligibility_remaining() == 0);
    CHECK_FALSE(syn.eligible());

    syn.raise_eligibility();
    CHECK(syn.eligibility_remaining() == 3);
    syn.tick_eligibility();
    syn.tick_eligibility();
    CHECK(syn.eligibility_remaining() == 1);
    syn.raise_eligibility();
    CHECK(syn.eligibility_remaining() == 3);
    for (int i = 0; i < 5; ++i) syn.tick_eligibility();
    CHECK(syn.eligibility_remaining() == 0);

    // Flag bookkeeping never touches the device.
    CHECK(syn.device_state().step_index == 0);
    CHECK(syn.conductance() == 1e-7);
}

TEST_CASE("reward switches an eligible synapse and only an eligible one") {
    RandomSource rng(31);

    SUBCASE("eligible: the pulse completes the staircase") {
        ThreeFactorSynapse syn;
        syn.raise_eligibility();
        std::vector<SwitchEvent> events;
        CHECK(syn.apply_reward(rng, &events));
        CHECK(syn.latched());
        CHECK(syn.conductance() == 1e-4);
        CHECK(syn.eligibility_remaining() == 0);
        REQUIRE(events.size() == 5);
        for (const auto& ev : events) {
            CHECK(ev.cause == Cause::Coincident);
            CHECK(ev.time <= syn.params().reward_width);
        }
        CHECK(events.back().transition == Transition::Set);
    }

    SUBCASE("dark: the pulse is inert and burns no entropy") {
        ThreeFactorSynapse syn;
        RandomSource r(32), shadow(32);
        std::vector<SwitchEvent> events;
        CHECK_FALSE(syn.apply_reward(r, &events));
        CHECK(events.empty());
        CHECK(syn.conductance() == 1e-7);
        CHECK(aligned(r, shadow));
    }

    SUBCASE("an already latched synapse reports no new switch") {
        ThreeFactorSynapse syn;
        syn.raise_eligibility();
        CHECK(syn.apply_reward(rng));
        syn.raise_eligibility();
        CHECK_FALSE(syn.apply_reward(rng));
        CHECK(syn.conductance() == 1e-4);
    }
}

TEST_CASE("the flag alone never writes the synapse") {
    const SynapseParams p;
    DeviceState s;
    RandomSource rng(33), shadow(33);
    for (int i = 0; i < 1000; ++i) {
        const auto events = step(p.device, s, {p.bias_voltage, p.flag_power, 1e-3}, rng);
        CHECK(events.empty());
    }
    CHECK(s.step_index == 0);
    CHECK(aligned(rng, shadow));
}

TEST_CASE("synapse tracks a boolean three-factor oracle over random schedules") {
    RandomSource sched(91), device_rng(92);
    for (int run = 0; run < 2000; ++run) {
        ThreeFactorSynapse syn;
        int oracle_elig = 0;
        bool oracle_latched = false;
        for (int op = 0; op < 40; ++op) {
            switch (sched.pick(6)) {
                case 0:
                case 1:
                    syn.raise_eligibility();
                    oracle_elig = syn.params().eligibility_window;
                    break;
                case 5:
                    syn.apply_reward(device_rng);
                    if (oracle_elig > 0) oracle_latched = true;
                    oracle_elig = 0;
                    break;
                default:
                    syn.tick_eligibility();
                    if (oracle_elig > 0) --oracle_elig;
                    break;
            }
            REQUIRE(syn.eligibility_remaining() == oracle_elig);
            REQUIRE(syn.latched() == oracle_latched);
        }
    }
}

TEST_CASE("synapse read current and reset") {
    ThreeFactorSynapse syn;
    CHECK(syn.read_current() == doctest::Approx(1e-8).epsilon(1e-12));
    RandomSource rng(34);
    syn.raise_eligibility();
    CHECK(syn.apply_reward(rng));
    CHECK(syn.read_current() == doctest::Approx(1e-5).epsilon(1e-12));
    syn.reset();
    CHECK_FALSE(syn.latched());
    CHECK(syn.eligibility_remaining() == 0);
    CHECK(syn.conductance() == 1e-7);
}

TEST_CASE("dendrite defaults describe a working shunting cell") {
    const DendriteParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.device.kind == DeviceKind::Volatile);
    CHECK(p.device.polarity_sign == +1);
    // Light pushes the band above the pulse: 0.5 V < 0.8 * 0.8 V.
    CHECK(effective_threshold(p.device, p.inhib_power) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(p.excit_voltage < 0.8 * effective_threshold(p.device, p.inhib_power));
    CHECK(p.excit_voltage > p.device.v_th_dark);
}

TEST_CASE("dendrite validation rejects broken operating points") {
    DendriteParams p;
    p.excit_voltage = 0.3; // below the dark threshold
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = DendriteParams{};
    p.inhib_power = 2e-5; // too dim to shunt the pulse
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = DendriteParams{};
    p.relax_tail = 1e-7; // shorter than the relaxation time
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    p = DendriteParams{};
    p.device.kind = DeviceKind::NonVolatile;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("dendrite response separates the four input pairs") {
    ShuntingDendrite den;
    RandomSource rng(41);

    SUBCASE("pulse in the dark switches and reads the full current") {
        std::vector<SwitchEvent> events;
        const double i = den.respond(true, false, rng, &events);
        CHECK(i == doctest::Approx(5e-5).epsilon(1e-12));
        REQUIRE(events.size() == 6);
        CHECK(events.back().transition == Transition::Reset);
        CHECK(events.back().cause == Cause::Relaxation);
        // Tail events land after the pulse window.
        CHECK(events.back().time == doctest::Approx(5e-3 + 1e-6).epsilon(1e-9));
        CHECK(den.device_state().step_index == 0); // relaxed, reusable
    }

    SUBCASE("shunted pulse never even starts a filament") {
        RandomSource r(42), shadow(42);
        std::vector<SwitchEvent> events;
        const double i = den.respond(true, true, r, &events);
        CHECK(i == doctest::Approx(1.600141099793076e-08).epsilon(1e-12));
        CHECK(events.empty());
        CHECK(den.device_state().step_index == 0);
        CHECK(aligned(r, shadow));
    }

    SUBCASE("light alone gives only the photocurrent") {
        RandomSource r(43), shadow(43);
        std::vector<SwitchEvent> events;
        const double i = den.respond(false, true, r, &events);
        CHECK(i == doctest::Approx(-3.399858900206924e-08).epsilon(1e-12));
        CHECK(events.empty());
        CHECK(den.device_state().step_index == 0);
        CHECK(aligned(r, shadow));
    }

    SUBCASE("silence in, silence out") {
        const double i = den.respond(false, false, rng);
        CHECK(i == 0.0);
    }
}

TEST_CASE("dendrite is reusable across many mixed pulses") {
    ShuntingDendrite den;
    RandomSource rng(44);
    for (int i = 0; i < 50; ++i) {
        CHECK(den.respond(true, false, rng) == doctest::Approx(5e-5).epsilon(1e-12));
        CHECK(den.respond(true, true, rng) ==
              doctest::Approx(1.600141099793076e-08).epsilon(1e-12));
        CHECK(den.respond(false, true, rng) ==
              doctest::Approx(-3.399858900206924e-08).epsilon(1e-12));
    }
    CHECK(den.lrs_read_current() == doctest::Approx(5e-5).epsilon(1e-12));
}

TEST_CASE("neuron wiring crosses the inputs") {
    DendriticNeuron neuron;
    RandomSource rng(51);

    auto r = neuron.respond(true, false, rng);
    CHECK(r.i_d1 == doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(r.i_d2 == doctest::Approx(-3.399858900206924e-08).epsilon(1e-12));

    r = neuron.respond(false, true, rng);
    CHECK(r.i_d1 == doctest::Approx(-3.399858900206924e-08).epsilon(1e-12));
    CHECK(r.i_d2 == doctest::Approx(5e-5).epsilon(1e-12));

    r = neuron.respond(true, true, rng);
    CHECK(r.sum() == doctest::Approx(3.200282199586152e-08).epsilon(1e-12));

    r = neuron.respond(false, false, rng);
    CHECK(r.sum() == 0.0);
}

TEST_CASE("neuron output is XOR at the default threshold") {
    DendriticNeuron neuron;
    CHECK(neuron.params().soma_threshold < neuron.dendrite1().lrs_read_current());
    RandomSource rng(52);
    CHECK_FALSE(neuron.output(false, false, rng));
    CHECK(neuron.output(false, true, rng));
    CHECK(neuron.output(true, false, rng));
    CHECK_FALSE(neuron.output(true, true, rng));
}

TEST_CASE("the soma threshold is what kills the (1,1) case") {
    NeuronParams zero;
    zero.soma_threshold = 0.0;
    DendriticNeuron neuron(zero);
    RandomSource rng(53);
    // Strict comparison: exactly zero input stays silent, every other pair
    // leaks at least a photocurrent imbalance past zero.
    CHECK_FALSE(neuron.output(false, false, rng));
    CHECK(neuron.output(false, true, rng));
    CHECK(neuron.output(true, false, rng));
    CHECK(neuron.output(true, true, rng)); // XOR broken without a threshold

    NeuronParams high;
    high.soma_threshold = 1.2e-4; // above twice the latched read current
    DendriticNeuron mute(high);
    CHECK_FALSE(mute.output(false, true, rng));
    CHECK_FALSE(mute.output(true, false, rng));
    CHECK_FALSE(mute.output(true, true, rng));
}

TEST_CASE("neuron params validation") {
    NeuronParams p;
    CHECK_NOTHROW(p.validate());
    p.soma_threshold = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("mirror symmetry of the dendrite pair") {
    DendriticNeuron neuron;
    RandomSource rng(54);
    const auto a = neuron.respond(true, false, rng);
    const auto b = neuron.respond(false, true, rng);
    CHECK(a.sum() == b.sum());
    CHECK(a.i_d1 == b.i_d2);
    CHECK(a.i_d2 == b.i_d1);
}
