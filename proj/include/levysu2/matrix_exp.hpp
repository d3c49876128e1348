#pragma once

#include <Eigen/Dense>

namespace levysu2 {

// exp(M) by Pade-13 scaling-and-squaring (Higham's theta thresholds).
Eigen::MatrixXcd matrix_exp_pade(const Eigen::MatrixXcd& M);

// exp(M) for Hermitian M by eigendecomposition.
Eigen::MatrixXcd matrix_exp_hermitian(const Eigen::MatrixXcd& M);

// Dispatches to the Hermitian path when M is Hermitian to rounding; the two
// paths agree within 1e-11 on Hermitian inputs.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M);

/**
 * Empirical exponential-decay envelope for a stable matrix: the certified rate
 * lambda = |max Re eigenvalue|*(1 - 1e-9) and the constant
 * K = sup over a geometric grid t in [0, 50/lambda] of ||e^{tM}||_F e^{lambda t}.
 * Throws NotStable if some eigenvalue has nonnegative real part.
 */
struct DecayBound {
    double lambda = 0.0;
    double K = 0.0;
};
DecayBound decay_bound(const Eigen::MatrixXcd& M);

} // namespace levysu2
