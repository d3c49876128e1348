#include "levysu2/quadrature.hpp"

#include <cmath>

namespace levysu2 {

void gauss_legendre_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n(x) = 0
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
}

Quadrature composite_gauss_legendre(double a, double b, int panels, int order) {
    std::vector<double> n1, w1;
    gauss_legendre_rule(order, n1, w1);
    Quadrature q;
    q.nodes.reserve(static_cast<std::size_t>(panels) * order);
    q.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int j = 0; j < order; ++j) {
            q.nodes.push_back(lo + 0.5 * h * (n1[j] + 1.0));
            q.weights.push_back(0.5 * h * w1[j]);
        }
    }
    return q;
}

const Quadrature& theta_quadrature() {
    static const Quadrature q = composite_gauss_legendre(0.0, 0.5, 128, 16);
    return q;
}

} // namespace levysu2
