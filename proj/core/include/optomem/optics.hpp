#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

// Transfer-matrix optics for the layered cavity that delivers light to the
// chalcogenide film. Normal incidence, time dependence exp(-i w t), complex
// index written n - ik with k >= 0. Wavelengths and thicknesses in nm.

namespace optomem::optics {

struct Layer {
    std::string material;
    double thickness_nm = 0.0;
};

struct LayerStack {
    std::string ambient = "air";
    std::vector<Layer> layers;
    std::string substrate = "sio2";
};

// Dispersion tables loaded from CSV files (wavelength_nm, n, k), linearly
// interpolated. Material ids are the file stems (e.g. "ag", "gese3").
class MaterialTable {
public:
    struct Row {
        double wavelength_nm;
        double n;
        double k;
    };

    // Loads every *.csv in the directory. Lines starting with '#' and the
    // header row are skipped. Throws std::runtime_error on unreadable or
    // malformed files.
    static MaterialTable load_directory(const std::string& dir);

    void add(const std::string& id, std::vector<Row> rows);

    // n - ik at the given wavelength. Throws std::out_of_range for an unknown
    // id or a wavelength outside the tabulated range.
    std::complex<double> index(const std::string& id, double wavelength_nm) const;

    bool has(const std::string& id) const { return tables_.count(id) != 0; }

private:
    std::map<std::string, std::vector<Row>> tables_;
};

// Resolution order for the bundled data: OPTOMEM_DATA_DIR environment
// variable, then the source-tree data directory compiled in at build time.
std::string default_material_dir();

struct Matrix2 {
    std::complex<double> m00, m01, m10, m11;
};

// Characteristic matrix of one homogeneous layer:
//   [[cos d, i sin d / eta], [i eta sin d, cos d]],  d = 2 pi eta t / lambda.
Matrix2 layer_matrix(std::complex<double> eta, double thickness_nm,
                     double wavelength_nm);

struct Response {
    double reflectance;
    double transmittance;
    double absorptance;
};

// R, T, A of the stack at one wavelength. Ambient and substrate must be
// lossless (k = 0) so the R/T energy bookkeeping is exact; throws
// std::invalid_argument otherwise.
Response stack_response(const LayerStack& stack, double wavelength_nm,
                        const MaterialTable& materials);

struct SpectralResponse {
    std::vector<double> wavelength_nm;
    std::vector<double> reflectance;
    std::vector<double> transmittance;
    std::vector<double> absorptance;
};

// Uniform wavelength grid, n_points >= 2. Grid point i is
// lambda_min + (span * i) / (n - 1), so doubling the resolution reproduces
// the shared points exactly.
SpectralResponse absorption_spectrum(const LayerStack& stack, double lambda_min_nm,
                                     double lambda_max_nm, int n_points,
                                     const MaterialTable& materials);

// Highest-absorptance grid point; ties break toward the shorter wavelength.
// Throws std::invalid_argument on an empty spectrum.
std::pair<double, double> peak_absorption(const SpectralResponse& spectrum);

struct DesignResult {
    double thickness_nm;
    double lambda_peak_nm;
    double peak_absorptance;
};

// Scans the template's open layer (the single layer with thickness <= 0) over
// [d_min, d_max] on a 1 nm grid and returns the thickness whose absorption
// peak lands closest to lambda_target; ties break toward the smaller
// thickness. The peak search uses the given wavelength window. Throws
// std::invalid_argument on an empty thickness range or a template without
// exactly one open layer.
DesignResult design_thickness(const LayerStack& stack_template, double lambda_target_nm,
                              double d_min_nm, double d_max_nm,
                              const MaterialTable& materials,
                              double lambda_min_nm = 380.0, double lambda_max_nm = 1400.0,
                              int n_points = 511);

} // namespace optomem::optics
