#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "levysu2/generator.hpp"
#include "levysu2/su2.hpp"

namespace levysu2 {

enum class Exec { Serial, Parallel };

/**
 * Fourier coefficients A_k(t) = exp(t L(U^{k*})(e)) for k = 1..k_max.
 * Conjugate-invariant specs store scalars a_k(t) (A_k = a_k I by Schur).
 * Semigroup: A_k(t+s) = A_k(s) A_k(t); spectral radius <= 1.
 */
struct CoefficientSet {
    double t = 0.0;
    int k_max = 0;
    bool scalar_mode = false;
    std::vector<std::complex<double>> scalars;  // scalar_mode
    std::vector<Eigen::MatrixXcd> matrices;     // general mode

    // Trace(A_k)/(k+1): the normalized-character coefficient of the theta
    // marginal, valid in both modes.
    std::complex<double> class_coefficient(int k) const;
};

CoefficientSet coefficients(const GeneratorSpec& spec, double t, int k_max,
                            Exec exec = Exec::Parallel);

struct TailEstimate {
    double bound = 0.0;
    bool certified = false;
};

// Tail of the density series beyond k_max. Certified comparison sum
// sum_{k>k_max} (k+1)^2 exp(-(c*casimir(k) - 2*lambda_Pi)*t) when a = c*I with
// c > 0; otherwise last-term magnitude times a geometric factor, uncertified.
TailEstimate truncation_tail(const GeneratorSpec& spec, double t, int k_max);
double truncation_error(const GeneratorSpec& spec, double t, int k_max);

// Smallest k_max whose tail estimate is < 1e-10, capped at 200.
int default_k_max(const GeneratorSpec& spec, double t);

struct DensityValue {
    double value = 0.0;
    double tail = 0.0;
};

// p_t(g) = 1 + sum_k (k+1) Re Trace(A_k(t) U^k(g)). Throws SmallTimeUnresolved
// when the tail estimate at the effective cutoff exceeds 1e-3. k_max = 0 means
// automatic selection.
DensityValue density_at(const GeneratorSpec& spec, double t, const GroupElement& g, int k_max = 0);

// Character form for conjugate-invariant specs:
// p_t(theta) = 1 + sum_k (k+1) a_k(t) character(k, theta).
DensityValue density_class(const GeneratorSpec& spec, double t, double theta, int k_max = 0);

// Theta marginal of a general density: 1 + sum_k Re Trace(A_k) character(k, theta)
// (class-averaging U^k over a conjugacy class is psi_k * I).
double class_marginal_density(const CoefficientSet& coeffs, double theta);

// Heat kernel on the group (a = c*I, no drift, no jumps): partial sum of
// n exp(-c (n^2-1) t/(32 pi^2)) sin(2 pi n theta)/sin(2 pi theta).
// n_max = 0 selects the cutoff so the next term is < 1e-14 relative.
double heat_kernel(double c, double t, double theta, int n_max = 0);

struct L2Result {
    double value = 0.0;
    double tail = 0.0;
};
// Parseval: ||p_t - 1||_2^2 = sum_k (k+1) Trace(A_k A_k*)
// (scalar mode: sum (k+1)^2 |a_k|^2); tail bounds the omitted k.
L2Result l2_norm_sq(const GeneratorSpec& spec, double t, int k_max);

struct TvBoundsResult {
    double lower = 0.0;
    double upper = 0.0;
};
// lower = max_k max_i |A_k(t)_{ii}| (a Fourier-coefficient witness);
// upper = sqrt(l2_norm_sq + tail) (Cauchy-Schwarz).
TvBoundsResult tv_bounds(const GeneratorSpec& spec, double t, int k_max);

struct DensityProfile {
    double t = 0.0;
    int k_max = 0;
    bool tail_certified = false;
    std::vector<double> theta;
    std::vector<double> density;
    std::vector<double> weighted;
    std::vector<double> tail;
};

// Evaluates the theta density on a uniform grid: the character series for
// conjugate-invariant specs, the trace-reduced marginal otherwise (or always
// when force_general is set). k_max = 0 means automatic.
DensityProfile density_profile(const GeneratorSpec& spec, double t, int k_max, int grid_n,
                               bool force_general = false, Exec exec = Exec::Parallel);

// header theta,density,weighted_density,tail_estimate; 17 significant digits
std::string profile_to_csv(const DensityProfile& profile);
DensityProfile profile_from_csv(const std::string& text);

// {"t","k_max","l2","tv_lower","tv_upper","gap","certified"}
std::string report_json(const GeneratorSpec& spec, double t, int k_max);

} // namespace levysu2
