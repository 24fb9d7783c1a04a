#pragma once

#include <cstddef>
#include <vector>

// Small statistics helpers for latency validation.

namespace optomem {

double mean(const std::vector<double>& xs);

// Two-sided Kolmogorov-Smirnov distance between the sample and an
// exponential distribution with the given mean.
double ks_distance_exponential(std::vector<double> xs, double mean);

// Large-n Kolmogorov critical value at significance alpha:
// sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical(std::size_t n, double alpha);

} // namespace optomem
