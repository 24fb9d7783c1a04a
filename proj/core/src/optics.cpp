#include "optomem/optics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef OPTOMEM_SOURCE_DATA_DIR
#define OPTOMEM_SOURCE_DATA_DIR ""
#endif

namespace optomem::optics {

namespace fs = std::filesystem;

MaterialTable MaterialTable::load_directory(const std::string& dir) {
    MaterialTable table;
    if (!fs::is_directory(dir))
        throw std::runtime_error("material directory not found: " + dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".csv") continue;
        std::ifstream in(entry.path());
        if (!in) throw std::runtime_error("cannot read " + entry.path().string());
        std::vector<Row> rows;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (line.find_first_of("0123456789") != 0) continue; // header row
            std::istringstream ls(line);
            Row r{};
            char comma;
            if (!(ls >> r.wavelength_nm >> comma >> r.n >> comma >> r.k))
                throw std::runtime_error("malformed row in " + entry.path().string() +
                                         ": " + line);
            rows.push_back(r);
        }
        if (rows.empty())
            throw std::runtime_error("no data rows in " + entry.path().string());
        table.add(entry.path().stem().string(), std::move(rows));
    }
    return table;
}

void MaterialTable::add(const std::string& id, std::vector<Row> rows) {
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.wavelength_nm < b.wavelength_nm; });
    for (const Row& r : rows)
        if (r.k < 0.0)
            throw std::runtime_error("negative extinction coefficient for " + id);
    tables_[id] = std::move(rows);
}

std::complex<double> MaterialTable::index(const std::string& id,
                                          double wavelength_nm) const {
    auto it = tables_.find(id);
    if (it == tables_.end()) throw std::out_of_range("unknown material: " + id);
    const auto& rows = it->second;
    if (wavelength_nm < rows.front().wavelength_nm ||
        wavelength_nm > rows.back().wavelength_nm)
        throw std::out_of_range(id + ": wavelength " + std::to_string(wavelength_nm) +
                                " nm outside tabulated range");
    auto hi = std::lower_bound(rows.begin(), rows.end(), wavelength_nm,
                               [](const Row& r, double w) { return r.wavelength_nm < w; });
    if (hi == rows.begin()) return {hi->n, -hi->k};
    auto lo = hi - 1;
    if (hi == rows.end()) return {lo->n, -lo->k};
    double f = (wavelength_nm - lo->wavelength_nm) /
               (hi->wavelength_nm - lo->wavelength_nm);
    return {lo->n + f * (hi->n - lo->n), -(lo->k + f * (hi->k - lo->k))};
}

std::string default_material_dir() {
    if (const char* env = std::getenv("OPTOMEM_DATA_DIR"))
        return std::string(env) + "/materials";
    return std::string(OPTOMEM_SOURCE_DATA_DIR) + "/materials";
}

Matrix2 layer_matrix(std::complex<double> eta, double thickness_nm,
                     double wavelength_nm) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> delta = 2.0 * M_PI * eta * thickness_nm / wavelength_nm;
    std::complex<double> c = std::cos(delta);
    std::complex<double> s = std::sin(delta);
    return {c, i * s / eta, i * eta * s, c};
}

static Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Response stack_response(const LayerStack& stack, double wavelength_nm,
                        const MaterialTable& materials) {
    std::complex<double> eta0 = materials.index(stack.ambient, wavelength_nm);
    std::complex<double> etas = materials.index(stack.substrate, wavelength_nm);
    if (eta0.imag() != 0.0)
        throw std::invalid_argument("ambient must be lossless: " + stack.ambient);
    if (etas.imag() != 0.0)
        throw std::invalid_argument("substrate must be lossless: " + stack.substrate);

    Matrix2 m{1.0, 0.0, 0.0, 1.0};
    for (const Layer& layer : stack.layers) {
        std::complex<double> eta = materials.index(layer.material, wavelength_nm);
        m = multiply(m, layer_matrix(eta, layer.thickness_nm, wavelength_nm));
    }
    std::complex<double> b = m.m00 + m.m01 * etas;
    std::complex<double> c = m.m10 + m.m11 * etas;
    std::complex<double> denom = eta0 * b + c;
    std::complex<double> r = (eta0 * b - c) / denom;
    std::complex<double> t = 2.0 * eta0 / denom;
    double reflectance = std::norm(r);
    double transmittance = (etas.real() / eta0.real()) * std::norm(t);
    return {reflectance, transmittance, 1.0 - reflectance - transmittance};
}

SpectralResponse absorption_spectrum(const LayerStack& stack, double lambda_min_nm,
                                     double lambda_max_nm, int n_points,
                                     const MaterialTable& materials) {
    if (n_points < 2) throw std::invalid_argument("need at least 2 grid points");
    if (!(lambda_min_nm < lambda_max_nm))
        throw std::invalid_argument("need lambda_min < lambda_max");
    SpectralResponse out;
    out.wavelength_nm.reserve(n_points);
    const double span = lambda_max_nm - lambda_min_nm;
    for (int i = 0; i < n_points; ++i) {
        double lambda = lambda_min_nm + (span * i) / (n_points - 1);
        Response r = stack_response(stack, lambda, materials);
        out.wavelength_nm.push_back(lambda);
        out.reflectance.push_back(r.reflectance);
        out.transmittance.push_back(r.transmittance);
        out.absorptance.push_back(r.absorptance);
    }
    return out;
}

std::pair<double, double> peak_absorption(const SpectralResponse& spectrum) {
    if (spectrum.wavelength_nm.empty())
        throw std::invalid_argument("empty spectrum");
    std::size_t best = 0;
    for (std::size_t i = 1; i < spectrum.absorptance.size(); ++i)
        if (spectrum.absorptance[i] > spectrum.absorptance[best]) best = i;
    return {spectrum.wavelength_nm[best], spectrum.absorptance[best]};
}

DesignResult design_thickness(const LayerStack& stack_template, double lambda_target_nm,
                              double d_min_nm, double d_max_nm,
                              const MaterialTable& materials,
                              double lambda_min_nm, double lambda_max_nm,
                              int n_points) {
    if (!(d_min_nm <= d_max_nm) || !(d_min_nm > 0.0))
        throw std::invalid_argument("empty thickness range");
    std::size_t open = stack_template.layers.size();
    for (std::size_t i = 0; i < stack_template.layers.size(); ++i) {
        if (stack_template.layers[i].thickness_nm <= 0.0) {
            if (open != stack_template.layers.size())
                throw std::invalid_argument("more than one open layer in template");
            open = i;
        }
    }
    if (open == stack_template.layers.size())
        throw std::invalid_argument("template has no open layer (thickness <= 0)");

    LayerStack stack = stack_template;
    DesignResult best{0.0, 0.0, 0.0};
    double best_dist = 0.0;
    for (double d = std::ceil(d_min_nm); d <= d_max_nm; d += 1.0) {
        stack.layers[open].thickness_nm = d;
        auto spectrum = absorption_spectrum(stack, lambda_min_nm, lambda_max_nm,
                                        n_points, materials);
        auto [lambda_peak, a_peak] = peak_absorption(spectrum);
        double dist = std::abs(lambda_peak - lambda_target_nm);
        if (best.thickness_nm == 0.0 || dist < best_dist) {
            best = {d, lambda_peak, a_peak};
            best_dist = dist;
        }
    }
    if (best.thickness_nm == 0.0) throw std::invalid_argument("empty thickness range");
    return best;
}

} // namespace optomem::optics
