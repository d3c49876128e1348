#pragma once

#include <Eigen/Dense>

#include "levysu2/su2.hpp"

namespace levysu2 {

// chi_k(theta) = sin(2*pi*(k+1)*theta)/sin(2*pi*theta), evaluated through the
// cosine-sum form near the singular angles; chi_k(0) = k+1, chi_k(1/2) = (-1)^k (k+1).
double character(int k, double theta);

// psi_k = chi_k/(k+1), class function with |psi_k| <= 1.
double normalized_character(int k, double theta);

inline double character_of(int k, const GroupElement& g) {
    return character(k, conjugacy_angle(g));
}

// Weyl integration weight on [0,1/2]: 4*sin^2(2*pi*theta); integrates to 1.
double angle_weight(double theta);

// ((k+1)^2 - 1)/(32*pi^2): the Laplace-Beltrami eigenvalue on level k
// in the fixed basis normalization.
double casimir_eigenvalue(int k);

/**
 * Spin-(k/2) unitary irrep of dimension k+1, realized on degree-k homogeneous
 * polynomials in two complex variables with the binomial-weighted orthonormal
 * monomial basis: (U^k(g) f)(z) = f(M(g)^{-1} z). U^k(e) = I, traces equal
 * character(k, angle).
 */
Eigen::MatrixXcd wigner_matrix(int k, const GroupElement& g);

/**
 * Derived representation: d/dt U^k(exp(tX)) at t = 0. Skew-Hermitian,
 * tridiagonal in the monomial basis, and a Lie algebra homomorphism:
 * derived_rep(k, [X,Y]) = [derived_rep(k,X), derived_rep(k,Y)].
 */
Eigen::MatrixXcd derived_rep(int k, const AlgebraElement& X);

} // namespace levysu2
