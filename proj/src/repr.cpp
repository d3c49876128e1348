#include "levysu2/repr.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace levysu2 {

namespace {

std::complex<double> ipow(std::complex<double> base, int n) {
    std::complex<double> r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

} // namespace

double character(int k, double theta) {
    if (k < 0) throw std::invalid_argument("character: k must be >= 0");
    const double s = std::sin(2.0 * pi() * theta);
    if (std::abs(s) < 1e-6) {
        // sum_{j=0..k} cos(2*pi*(k-2j)*theta), paired to cancel imaginary parts
        double sum = 0.0;
        for (int j = 0; j <= k; ++j) sum += std::cos(2.0 * pi() * (k - 2 * j) * theta);
        return sum;
    }
    return std::sin(2.0 * pi() * (k + 1) * theta) / s;
}

double normalized_character(int k, double theta) { return character(k, theta) / (k + 1); }

double angle_weight(double theta) {
    const double s = std::sin(2.0 * pi() * theta);
    return 4.0 * s * s;
}

double casimir_eigenvalue(int k) {
    if (k < 0) throw std::invalid_argument("casimir_eigenvalue: k must be >= 0");
    const double kp1 = k + 1.0;
    return (kp1 * kp1 - 1.0) / (32.0 * pi() * pi());
}

Eigen::MatrixXcd wigner_matrix(int k, const GroupElement& g) {
    if (k < 0) throw std::invalid_argument("wigner_matrix: k must be >= 0");
    const int n = k + 1;
    Eigen::MatrixXcd U(n, n);
    // (U^k(g) v_j)(z) = v_j(A z) with A = M(g)^{-1} = M(g)^*
    const Eigen::Matrix2cd A = g.matrix().adjoint();
    const std::complex<double> a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
    for (int j = 0; j <= k; ++j) {
        for (int i = 0; i <= k; ++i) {
            // coefficient of z1^{k-i} z2^i in (a z1 + b z2)^{k-j} (c z1 + d z2)^j
            std::complex<double> sum(0.0, 0.0);
            const int qlo = std::max(0, i - (k - j));
            const int qhi = std::min(j, i);
            for (int q = qlo; q <= qhi; ++q) {
                const int p = i - q;
                double lg = log_factorial(k - j) - log_factorial(p) - log_factorial(k - j - p)
                          + log_factorial(j) - log_factorial(q) - log_factorial(j - q);
                sum += std::exp(lg) * ipow(a, k - j - p) * ipow(b, p) * ipow(c, j - q) * ipow(d, q);
            }
            const double lnorm = 0.5 * (log_factorial(k - i) + log_factorial(i)
                                        - log_factorial(k - j) - log_factorial(j));
            U(i, j) = sum * std::exp(lnorm);
        }
    }
    return U;
}

Eigen::MatrixXcd derived_rep(int k, const AlgebraElement& X) {
    if (k < 0) throw std::invalid_argument("derived_rep: k must be >= 0");
    const int n = k + 1;
    // X as 2x2: [[p, q], [r, -p]]
    const Eigen::Matrix2cd Xm = X.matrix();
    const std::complex<double> p = Xm(0, 0), q = Xm(0, 1), r = Xm(1, 0);
    Eigen::MatrixXcd dU = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j <= k; ++j) {
        dU(j, j) = static_cast<double>(k - 2 * j) * p;
        if (j + 1 <= k) dU(j + 1, j) = q * std::sqrt(double(k - j) * double(j + 1));
        if (j - 1 >= 0) dU(j - 1, j) = r * std::sqrt(double(j) * double(k - j + 1));
    }
    // adjoint so that d/dt wigner_matrix(k, exp_map(t X)) at t = 0 is returned
    return dU.adjoint().eval();
}

} // namespace levysu2
