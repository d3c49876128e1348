#include "levysu2/su2.hpp"

#include <algorithm>

namespace levysu2 {

Eigen::Matrix2cd AlgebraElement::matrix() const {
    using C = std::complex<double>;
    const double s = 1.0 / kBasisScale;
    // (i/scale) * [[v3, v1 - i v2], [v1 + i v2, -v3]]
    Eigen::Matrix2cd m;
    m << C(0.0, v[2] * s), C(v[1] * s, v[0] * s),
         C(-v[1] * s, v[0] * s), C(0.0, -v[2] * s);
    return m;
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    // Product matching M(g*h) = M(g)M(h) for the fixed matrix convention.
    // The basis e_j = i*sigma_j satisfies e1*e2 = -e3 (cyclically), hence the
    // sign of the cross terms is opposite to the Hamilton product.
    GroupElement r;
    r.w = g.w * h.w - g.x * h.x - g.y * h.y - g.z * h.z;
    r.x = g.w * h.x + g.x * h.w - (g.y * h.z - g.z * h.y);
    r.y = g.w * h.y + g.y * h.w - (g.z * h.x - g.x * h.z);
    r.z = g.w * h.z + g.z * h.w - (g.x * h.y - g.y * h.x);
    r.renormalize();
    return r;
}

GroupElement inverse(const GroupElement& g) {
    GroupElement r;
    r.w = g.w; r.x = -g.x; r.y = -g.y; r.z = -g.z;
    return r;
}

GroupElement exp_map(const AlgebraElement& v) {
    const double s = v.norm();
    const double half = s / kBasisScale;
    GroupElement r;
    r.w = std::cos(half);
    double f;
    if (s < 1e-8) {
        // sin(s/c)/s = 1/c - s^2/(6 c^3) + ...
        f = (1.0 - half * half / 6.0) / kBasisScale;
    } else {
        f = std::sin(half) / s;
    }
    r.x = f * v.v[0];
    r.y = f * v.v[1];
    r.z = f * v.v[2];
    r.renormalize();
    return r;
}

double conjugacy_angle(const GroupElement& g) {
    double c = std::clamp(g.w, -1.0, 1.0);
    return std::acos(c) / (2.0 * pi());
}

GroupElement torus_element(double theta) {
    GroupElement r;
    r.w = std::cos(2.0 * pi() * theta);
    r.x = 0.0;
    r.y = 0.0;
    r.z = std::sin(2.0 * pi() * theta);
    return r;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& X) {
    // Conjugate the pure-vector quaternion carrying X's coordinates; the basis
    // scale cancels. Compose without renormalizing (p is not unit).
    const double pw = 0.0, px = X.v[0], py = X.v[1], pz = X.v[2];
    // t = g * p
    const double tw = g.w * pw - g.x * px - g.y * py - g.z * pz;
    const double tx = g.w * px + g.x * pw - (g.y * pz - g.z * py);
    const double ty = g.w * py + g.y * pw - (g.z * px - g.x * pz);
    const double tz = g.w * pz + g.z * pw - (g.x * py - g.y * px);
    // r = t * g^{-1}
    const GroupElement gi = inverse(g);
    AlgebraElement r;
    r.v[0] = tw * gi.x + tx * gi.w - (ty * gi.z - tz * gi.y);
    r.v[1] = tw * gi.y + ty * gi.w - (tz * gi.x - tx * gi.z);
    r.v[2] = tw * gi.z + tz * gi.w - (tx * gi.y - ty * gi.x);
    return r;
}

AlgebraElement bracket(const AlgebraElement& X, const AlgebraElement& Y) {
    const double c = -1.0 / (2.0 * std::sqrt(2.0) * pi());
    return {c * (X.v[1] * Y.v[2] - X.v[2] * Y.v[1]),
            c * (X.v[2] * Y.v[0] - X.v[0] * Y.v[2]),
            c * (X.v[0] * Y.v[1] - X.v[1] * Y.v[0])};
}

GroupElement haar_sample(RandomStream& rng) {
    while (true) {
        double a = draw_normal(rng);
        double b = draw_normal(rng);
        double c = draw_normal(rng);
        double d = draw_normal(rng);
        double n = std::sqrt(a * a + b * b + c * c + d * d);
        if (n > 1e-12) {
            GroupElement g;
            g.w = a / n; g.x = b / n; g.y = c / n; g.z = d / n;
            return g;
        }
    }
}

} // namespace levysu2
