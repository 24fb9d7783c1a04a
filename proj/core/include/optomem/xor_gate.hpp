#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "optomem/neuro.hpp"

// The single-neuron XOR experiment: evaluates a two-dendrite shunting neuron
// over all binary input pairs and aggregates correctness and noise margins
// across seeds.

namespace optomem {

struct XorCase {
    bool x = false;
    bool y = false;
    double i_d1 = 0.0;
    double i_d2 = 0.0;
    double i_sum = 0.0;
    bool output = false;
};

struct XorReport {
    double soma_threshold = 0.0;
    std::array<XorCase, 4> truth{}; // from the first seed, pairs in (0,0) (0,1) (1,0) (1,1) order
    int seeds_total = 0;
    int seeds_correct = 0; // seeds where all four pairs matched XOR
    double min_margin = 0.0; // min |i_sum - soma_threshold| over seeds and pairs

    bool all_correct() const { return seeds_total > 0 && seeds_correct == seeds_total; }
};

// Evaluates the four input pairs once; the dendrites self-restore between
// cases, so the same neuron serves the whole table.
std::array<XorCase, 4> xor_truth_table(DendriticNeuron& neuron, RandomSource& rng);

// Summed-current surface over the binary input grid (the threshold-plane
// plot data); same evaluation as the truth table.
std::array<XorCase, 4> threshold_plane_data(DendriticNeuron& neuron, RandomSource& rng);

// Runs the truth table once per seed on a fresh random stream.
XorReport run_xor(const NeuronParams& params, const std::vector<std::uint64_t>& seeds);

} // namespace optomem
