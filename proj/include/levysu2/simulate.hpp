#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "levysu2/fourier.hpp"
#include "levysu2/generator.hpp"
#include "levysu2/rng.hpp"
#include "levysu2/su2.hpp"

namespace levysu2 {

struct PathConfig {
    double t_end = 1.0;
    double dt = 1e-3;
    long long n_paths = 1;
    std::uint64_t master_seed = 0;
};

// dt = min(1e-3, 0.1/lambda_Pi, 0.1*(32 pi^2)/(3 c)) with c = lambda_max(a)/2:
// one-step angle increments stay small relative to the curvature scale.
double default_dt(const GeneratorSpec& spec);

// Advisory when dt exceeds 0.01*min(1, 1/lambda_Pi); hard errors are thrown
// by simulate_terminal instead.
std::optional<std::string> path_config_warning(const GeneratorSpec& spec, const PathConfig& config);

/**
 * Terminal samples of n_paths independent runs. Results are a pure function
 * of (spec, config): each path owns a counter-derived RNG stream, so serial
 * and parallel execution agree bit for bit.
 */
struct SampleSet {
    PathConfig config;
    std::vector<GroupElement> terminals;
    std::vector<int> jump_counts;

    double mean_jumps() const;
};

// One geodesic Euler step: g o exp_map(sqrt(dt) sum_i xi_i Y_i + dt X0) with
// xi_i iid standard normals and Y_i the rows of the symmetric square root of
// a. Exact for drift-only specs. The rows overload skips the re-factorization.
GroupElement diffusion_step(const GroupElement& g, const GeneratorSpec& spec, double dt,
                            RandomStream& rng);
GroupElement diffusion_step(const GroupElement& g, const std::array<AlgebraElement, 3>& rows,
                            const AlgebraElement& drift, double dt, RandomStream& rng);

// Atom chosen with probability weight/lambda_Pi. Fixed atoms return their
// element; class atoms return a Haar-random conjugate of the torus element.
GroupElement sample_jump(const LevyMeasure& levy, RandomStream& rng);

// Jump times drawn first as a Poisson process on [0, t_end]; the diffusion is
// stepped on the dt grid refined to include the jump times, and the jump
// factor is applied on the right exactly at each jump time.
SampleSet simulate_terminal(const GeneratorSpec& spec, const PathConfig& config,
                            Exec exec = Exec::Parallel);

// header path,w,x,y,z,theta,jumps; 17 significant digits. The config echo is
// not serialized: a parsed SampleSet has t_end = 0 (unknown).
std::string sample_set_to_csv(const SampleSet& samples);
SampleSet sample_set_from_csv(const std::string& text);

struct AngleHistogram {
    int bins = 0;
    std::vector<long long> counts;
    std::vector<double> density; // sum(density[i]) * width() == 1
    double width() const { return 0.5 / bins; }
};

// Normalized histogram of conjugacy angles over [0, 1/2]; bins >= 10.
AngleHistogram empirical_angle_hist(const SampleSet& samples, int bins);

struct ComparisonReport {
    double l1 = 0.0;
    double sup = 0.0;
    double ks = 0.0;
    double ks_critical_1pct = 0.0;
    long long n_paths = 0;
    int bins = 0;
};

// 1% critical value of the one-sample Kolmogorov-Smirnov statistic.
double ks_critical_value_1pct(long long n);

/**
 * Empirical angle law vs. the series density: L1 and sup distance between the
 * histogram and the bin-averaged theoretical angle density
 * angle_weight(theta) * p_t(theta), plus the KS statistic against its CDF
 * (cumulative Simpson). Throws TimeMismatch when the sample set carries a
 * t_end that disagrees with t. k_max = 0 means automatic.
 */
ComparisonReport compare(const GeneratorSpec& spec, double t, const SampleSet& samples,
                         int k_max = 0, int bins = 64);

// {"l1","sup","ks","ks_critical_1pct","n_paths","bins"}
std::string comparison_to_json(const ComparisonReport& report);

} // namespace levysu2
