#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "levysu2/su2.hpp"

namespace levysu2 {

/**
 * Finite atomic Levy measure. An atom is either a point mass at a fixed group
 * element or the uniform distribution over a conjugacy class (given by its
 * angle). Atoms at the identity (Fixed(e) or class angle 0) are rejected.
 */
struct LevyAtom {
    enum class Kind { Fixed, Class };
    Kind kind = Kind::Fixed;
    double weight = 0.0;
    std::array<double, 4> quat{1.0, 0.0, 0.0, 0.0}; // Fixed: as supplied (for exact re-emission)
    double theta = 0.0;                             // Class

    GroupElement element() const { return GroupElement(quat[0], quat[1], quat[2], quat[3]); }
};

struct LevyMeasure {
    std::vector<LevyAtom> atoms;
    double total_rate() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.weight;
        return s;
    }
};

/**
 * Hunt generator data: diffusion matrix a (symmetric PSD, coordinates in the
 * fixed algebra basis), drift X0, and a finite Levy measure.
 */
struct GeneratorSpec {
    Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
    AlgebraElement drift;
    LevyMeasure levy;
};

struct GeneratorMatrix {
    int k = 0;
    Eigen::MatrixXcd entries;
};

// JSON: {"diffusion": [[3x3]], "drift": [3], "levy": {"atoms": [...]}}.
// Emission is canonical (shortest round-trip doubles, fixed key order), so
// parse -> emit is idempotent on its own output.
GeneratorSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const GeneratorSpec& spec);
GeneratorSpec load_spec_file(const std::string& path);

// Rows Y_i of the symmetric square root of a. Throws NotPSD below -1e-9.
std::array<AlgebraElement, 3> square_root_rows(const Eigen::Matrix3d& a);

// Hypothesis (H): iterated brackets of the diffusion vectors span the algebra.
bool hypothesis_H(const GeneratorSpec& spec);

// L(U^{k*})(e) = -(1/2) sum_i Y~_i* Y~_i + X~_0 + sum_atoms w (J_atom - I).
GeneratorMatrix generator_matrix(const GeneratorSpec& spec, int k);

struct SpectralReport {
    double max_real_part = 0.0;
    std::vector<std::complex<double>> eigenvalues;
    bool nonpositive_ok = true;     // max real part <= 1e-9
    bool strictly_negative = true;  // max real part < 0 (meaningful when (H) holds)
};
SpectralReport spectral_check(const GeneratorSpec& spec, int k);

bool is_inverse_invariant(const GeneratorSpec& spec);
bool is_conjugate_invariant(const GeneratorSpec& spec);

// (1/(2(k+1))) sum_i Trace(Y~_i* Y~_i); requires hypothesis (H).
double lambda_delta(const GeneratorSpec& spec, int k);

// Scalar exponent for conjugate-invariant specs:
// -lambda_delta - sum_atoms w (1 - psi_k(theta0)).
std::complex<double> conjugate_rate(const GeneratorSpec& spec, int k);

struct GapReport {
    double gap = 0.0;
    int attained_k = 1;
    bool certified = false;
    std::vector<double> per_k_rates; // per_k_rates[i] = rate at level i+1
};
GapReport spectral_gap(const GeneratorSpec& spec, int k_max);

// The constant c if a = c*I within 1e-10 (entrywise), else nullopt.
std::optional<double> isotropic_constant(const Eigen::Matrix3d& a);

} // namespace levysu2
