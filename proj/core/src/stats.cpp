#include "optomem/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optomem {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double ks_distance_exponential(std::vector<double> xs, double mean) {
    if (xs.empty()) throw std::invalid_argument("KS distance of empty sample");
    if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be positive");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 1.0 - std::exp(-xs[i] / mean);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

double ks_critical(std::size_t n, double alpha) {
    if (n == 0 || !(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("bad KS critical arguments");
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

} // namespace optomem
