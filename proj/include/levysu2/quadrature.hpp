#pragma once

#include <functional>
#include <vector>

namespace levysu2 {

/**
 * Composite Gauss-Legendre rule: `panels` equal subintervals of [a,b], each
 * carrying an `order`-point Gauss-Legendre rule. The 2048-point rule used for
 * all theta integrals is composite_gauss_legendre(0, 0.5, 128, 16).
 */
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::function<double(double)>& f) const {
        // compensated (Kahan) accumulation; order-stable
        double sum = 0.0, c = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            double term = weights[i] * f(nodes[i]) - c;
            double t = sum + term;
            c = (t - sum) - term;
            sum = t;
        }
        return sum;
    }
};

// order-point Gauss-Legendre nodes/weights on [-1,1] (Newton on P_n).
void gauss_legendre_rule(int order, std::vector<double>& nodes, std::vector<double>& weights);

Quadrature composite_gauss_legendre(double a, double b, int panels, int order);

// The default 2048-point rule on [0, 1/2].
const Quadrature& theta_quadrature();

} // namespace levysu2
