#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "levysu2/rng.hpp"

namespace levysu2 {

// Fixed algebra basis: X_j = i*sigma_j / (4*sqrt(2)*pi), orthonormal under
// <X,Y> = -16*pi^2*Trace(XY). This is the normalization in which the
// Laplace-Beltrami character eigenvalues are ((k+1)^2 - 1)/(32*pi^2), so every
// spectral constant downstream (heat kernel, decay rates, default step sizes)
// is expressed in these units. Coordinates of AlgebraElement refer to it.
inline constexpr double kBasisScale = 4.0 * 1.4142135623730951 * 3.141592653589793;

constexpr double pi() { return 3.141592653589793238462643383279502884; }

struct AlgebraElement {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    AlgebraElement() = default;
    AlgebraElement(double a, double b, double c) : v{a, b, c} {}

    double norm() const { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

    AlgebraElement operator+(const AlgebraElement& o) const {
        return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]};
    }
    AlgebraElement operator*(double s) const { return {s * v[0], s * v[1], s * v[2]}; }

    // 2x2 realization sum_j v_j * i*sigma_j/(4*sqrt(2)*pi)
    Eigen::Matrix2cd matrix() const;
};

// <X,Y> in the fixed basis is the plain coordinate dot product.
inline double algebra_inner(const AlgebraElement& a, const AlgebraElement& b) {
    return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

/**
 * Unit quaternion q = (w,x,y,z) acting as the SU(2) matrix
 *   M(q) = w*I + x*(i*sigma1) + y*(i*sigma2) + z*(i*sigma3)
 *        = [[w+iz, ix+y], [ix-y, w-iz]].
 * The constructor renormalizes; products renormalize too, so |q| stays within
 * 1e-12 of 1 through arbitrarily long chains.
 */
struct GroupElement {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    GroupElement() = default;
    GroupElement(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {
        renormalize();
    }

    static GroupElement identity() { return GroupElement(); }

    void renormalize() {
        double n2 = w * w + x * x + y * y + z * z;
        // a projection: values already on the sphere within round-off pass
        // through bit-unchanged, so emit/parse cycles are stable
        if (std::abs(n2 - 1.0) < 1e-13) return;
        double n = std::sqrt(n2);
        w /= n; x /= n; y /= n; z /= n;
    }

    double quat_norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Eigen::Matrix2cd matrix() const {
        using C = std::complex<double>;
        Eigen::Matrix2cd m;
        m << C(w, z), C(y, x),
             C(-y, x), C(w, -z);
        return m;
    }
};

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);

// exp of sum_j v_j X_j; rotation half-angle |v|/(4*sqrt(2)*pi).
GroupElement exp_map(const AlgebraElement& v);

// theta in [0, 1/2]; eigenvalues of M(g) are e^{+-2*pi*i*theta}, trace 2cos(2*pi*theta).
double conjugacy_angle(const GroupElement& g);

// torus element with conjugacy angle theta: diag(e^{2*pi*i*theta}, e^{-2*pi*i*theta})
GroupElement torus_element(double theta);

// Ad(g): X -> g X g^{-1}, an orthogonal map in the fixed basis coordinates.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X);

// [X,Y]; in coordinates -(1/(2*sqrt(2)*pi)) * cross(X,Y).
AlgebraElement bracket(const AlgebraElement& X, const AlgebraElement& Y);

// Haar-uniform sample (normalized 4d Gaussian).
GroupElement haar_sample(RandomStream& rng);

} // namespace levysu2
