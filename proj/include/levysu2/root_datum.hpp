#pragma once

#include <complex>
#include <string>
#include <vector>

namespace levysu2 {

/**
 * Numeric root datum for the generic Weyl dimension/character formulas.
 * Weights and roots are coordinate vectors on the weight space; torus points H
 * pair with them by the plain dot product, so a weight beta evaluates as
 * e^{2*pi*i*beta.H}. `gram` is the invariant inner product on the weight space
 * (used by the dimension formula); `rho` is computed as half the sum of the
 * positive roots.
 */
struct WeylElement {
    std::vector<std::vector<double>> matrix; // r x r, acts on torus coordinates
    int det = 1;                             // +1 or -1
};

struct RootDatum {
    int rank = 0;
    std::vector<std::vector<double>> positive_roots;
    std::vector<std::vector<double>> gram;
    std::vector<WeylElement> weyl;
    std::vector<double> rho;
};

// Parse + validate: gram SPD, each Weyl element permutes {+-roots}, stated
// determinant signs match, rho consistent. Throws BadInput on violations.
RootDatum load_root_datum_json(const std::string& text);
std::string root_datum_to_json(const RootDatum& rd);
RootDatum validate_root_datum(RootDatum rd);

// The SU(2) datum used throughout: alpha = [2], rho = [1],
// gram = [[1/(32*pi^2)]], Weyl group {[1], [-1]}.
const RootDatum& su2_root_datum();

// prod over positive roots of <alpha, beta+rho>/<alpha, rho>; must be a
// positive integer within 1e-6 (else NonIntegerDimension); beta must be
// dominant (<alpha, beta> >= 0, else NonDominantWeight).
double weyl_dimension(const RootDatum& rd, const std::vector<double>& beta);

// Weyl character formula at a torus point H (coordinates pairing by dot):
//   [sum_w det(w) e^{2*pi*i*(beta+rho).(wH)}] / [e^{2*pi*i*rho.H} prod_{a>0}(1 - e^{-2*pi*i*a.H})]
// Throws SingularTorusPoint when |denominator| < 1e-9.
std::complex<double> weyl_character_torus(const RootDatum& rd, const std::vector<double>& beta,
                                          const std::vector<double>& H);

} // namespace levysu2
