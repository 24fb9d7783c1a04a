#include <benchmark/benchmark.h>

#include "optomem/optics.hpp"

using namespace optomem::optics;

namespace {

const MaterialTable& materials() {
    static const MaterialTable m = MaterialTable::load_directory(default_material_dir());
    return m;
}

LayerStack cavity(double film_nm) {
    LayerStack s;
    s.ambient = "air";
    s.layers = {{"ag", 15.0}, {"gese3", film_nm}, {"ag", 100.0}};
    s.substrate = "sio2";
    return s;
}

} // namespace

static void BM_LayerMatrix(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(layer_matrix({2.5, -0.1}, 78.0, 637.0));
    }
}
BENCHMARK(BM_LayerMatrix);

static void BM_StackResponse(benchmark::State& state) {
    const auto stack = cavity(78.0);
    const auto& m = materials();
    for (auto _ : state) {
        benchmark::DoNotOptimize(stack_response(stack, 637.0, m));
    }
}
BENCHMARK(BM_StackResponse);

static void BM_AbsorptionSpectrum(benchmark::State& state) {
    const auto stack = cavity(78.0);
    const auto& m = materials();
    const int n_points = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(absorption_spectrum(stack, 380.0, 1400.0, n_points, m));
    }
}
BENCHMARK(BM_AbsorptionSpectrum)->Arg(511)->Arg(2047);

static void BM_DesignThickness(benchmark::State& state) {
    const auto tmpl = cavity(-1.0);
    const auto& m = materials();
    for (auto _ : state) {
        benchmark::DoNotOptimize(design_thickness(tmpl, 637.0, 5.0, 300.0, m));
    }
}
BENCHMARK(BM_DesignThickness)->Unit(benchmark::kMillisecond);
