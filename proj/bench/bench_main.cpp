// Timing comparison between the serial reference kernels and the OpenMP
// parallel ones. Both paths produce bit-identical results (the test suites
// assert that); this target reports the wall-clock ratio on this machine.

#include <Eigen/Dense>
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levysu2/fourier.hpp"
#include "levysu2/generator.hpp"
#include "levysu2/simulate.hpp"
#include "levysu2/su2.hpp"

namespace {

using namespace levysu2;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        double t0 = now_seconds();
        fn();
        best = std::min(best, now_seconds() - t0);
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-34s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", name,
                1e3 * serial_s, 1e3 * parallel_s, serial_s / parallel_s);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available: both columns run the same serial code\n");
#endif

    // an anisotropic diffusion with drift and jumps keeps every kernel on the
    // general matrix path (no scalar shortcut)
    GeneratorSpec spec;
    spec.a << 620.0, 40.0, 0.0, 40.0, 560.0, -25.0, 0.0, -25.0, 590.0;
    spec.drift = AlgebraElement(3.0, -1.0, 2.0);
    LevyAtom atom;
    atom.kind = LevyAtom::Kind::Class;
    atom.weight = 1.5;
    atom.theta = 0.27;
    spec.levy.atoms.push_back(atom);

    {
        const double t = 1.1;
        const int k_max = 48;
        double serial =
            time_best_of(3, [&] { (void)coefficients(spec, t, k_max, Exec::Serial); });
        double parallel =
            time_best_of(3, [&] { (void)coefficients(spec, t, k_max, Exec::Parallel); });
        report("coefficient matrices (k <= 48)", serial, parallel);
    }

    {
        const double t = 1.1;
        const int k_max = 24;
        const int grid = 4097;
        double serial = time_best_of(
            3, [&] { (void)density_profile(spec, t, k_max, grid, false, Exec::Serial); });
        double parallel = time_best_of(
            3, [&] { (void)density_profile(spec, t, k_max, grid, false, Exec::Parallel); });
        report("density profile (4097 angles)", serial, parallel);
    }

    {
        GeneratorSpec heat;
        heat.a = 2.0 * 32.0 * M_PI * M_PI * Eigen::Matrix3d::Identity();
        PathConfig config{0.3, 1e-3, 20000, 12345};
        double serial =
            time_best_of(3, [&] { (void)simulate_terminal(heat, config, Exec::Serial); });
        double parallel =
            time_best_of(3, [&] { (void)simulate_terminal(heat, config, Exec::Parallel); });
        report("simulation (20000 paths)", serial, parallel);
    }

    return 0;
}
