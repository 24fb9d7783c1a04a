#include "optomem/xor_gate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace optomem {

std::array<XorCase, 4> xor_truth_table(DendriticNeuron& neuron, RandomSource& rng) {
    std::array<XorCase, 4> table{};
    int i = 0;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) {
            auto r = neuron.respond(x != 0, y != 0, rng);
            XorCase& c = table[i++];
            c.x = x != 0;
            c.y = y != 0;
            c.i_d1 = r.i_d1;
            c.i_d2 = r.i_d2;
            c.i_sum = r.sum();
            c.output = c.i_sum > neuron.params().soma_threshold;
        }
    return table;
}

std::array<XorCase, 4> threshold_plane_data(DendriticNeuron& neuron, RandomSource& rng) {
    return xor_truth_table(neuron, rng);
}

XorReport run_xor(const NeuronParams& params, const std::vector<std::uint64_t>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("need at least one seed");
    DendriticNeuron neuron(params);
    XorReport report;
    report.soma_threshold = params.soma_threshold;
    report.seeds_total = static_cast<int>(seeds.size());
    report.min_margin = std::numeric_limits<double>::infinity();
    bool first = true;
    for (auto seed : seeds) {
        RandomSource rng(seed);
        const auto table = xor_truth_table(neuron, rng);
        if (first) {
            report.truth = table;
            first = false;
        }
        bool correct = true;
        for (const auto& c : table) {
            if (c.output != (c.x != c.y)) correct = false;
            report.min_margin =
                std::min(report.min_margin, std::abs(c.i_sum - params.soma_threshold));
        }
        if (correct) ++report.seeds_correct;
    }
    return report;
}

} // namespace optomem
