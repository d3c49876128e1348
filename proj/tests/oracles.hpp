#pragma once

// Independent reference implementations used only by the tests: a Taylor-series
// matrix exponential, KS statistics, a chi-square quantile, and random spec
// generators. Nothing here calls the library code paths under test.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "levysu2/generator.hpp"
#include "levysu2/rng.hpp"
#include "levysu2/su2.hpp"

namespace oracles {

// plain scaling + Taylor series; slow but independent of the Pade kernel
inline Eigen::MatrixXcd taylor_exp(const Eigen::MatrixXcd& m) {
    double nrm = m.cwiseAbs().sum();
    int s = 0;
    while (nrm > 0.25 && s < 60) {
        nrm /= 2.0;
        ++s;
    }
    Eigen::MatrixXcd a = m / std::pow(2.0, s);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd term = sum;
    for (int n = 1; n <= 40; ++n) {
        term = (term * a / static_cast<double>(n)).eval();
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int i = 0; i < s; ++i) sum = (sum * sum).eval();
    return sum;
}

// one-sample KS against a CDF callable
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = cdf(xs[i]);
        d = std::max(d, std::max(std::abs((i + 1.0) / n - f), std::abs(f - i / n)));
    }
    return d;
}

// two-sample KS, ties handled by advancing both CDFs past each distinct value
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

inline double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
    return 1.6276 * std::sqrt((n + m) / (static_cast<double>(n) * m));
}

// Wilson-Hilferty approximation of the chi-square upper quantile
inline double chi2_quantile(double p_upper, int dof) {
    // upper-tail normal quantile via Acklam-style rational fit on the tail
    auto z_upper = [](double p) {
        double t = std::sqrt(-2.0 * std::log(p));
        return t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
    };
    double z = z_upper(p_upper);
    double k = dof;
    double h = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * h * h * h;
}

inline levysu2::GroupElement pow_int(const levysu2::GroupElement& h, int n) {
    levysu2::GroupElement r = levysu2::GroupElement::identity();
    for (int i = 0; i < n; ++i) r = levysu2::compose(r, h);
    return r;
}

struct SpecOptions {
    bool with_drift = false;
    bool with_fixed_atoms = false;
    bool with_class_atoms = false;
    bool paired_fixed_atoms = false; // inverse-invariant pairs {h, h^-1}
    bool isotropic = false;          // a = c I
    double diffusion_floor = 0.05;   // added ridge so (H) holds robustly
};

inline levysu2::GeneratorSpec random_spec(levysu2::RandomStream& rng, const SpecOptions& opt) {
    using namespace levysu2;
    GeneratorSpec spec;
    if (opt.isotropic) {
        double c = 0.5 + 2.0 * draw_uniform(rng);
        spec.a = c * Eigen::Matrix3d::Identity();
    } else {
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = draw_normal(rng);
        spec.a = m.transpose() * m + opt.diffusion_floor * Eigen::Matrix3d::Identity();
    }
    if (opt.with_drift)
        spec.drift = AlgebraElement(draw_normal(rng), draw_normal(rng), draw_normal(rng));
    if (opt.with_fixed_atoms) {
        int n = 1 + static_cast<int>(draw_uniform(rng) * 2.0);
        for (int i = 0; i < n; ++i) {
            GroupElement h = haar_sample(rng);
            double w = 0.2 + 1.5 * draw_uniform(rng);
            LevyAtom atom;
            atom.kind = LevyAtom::Kind::Fixed;
            atom.weight = w;
            atom.quat = {h.w, h.x, h.y, h.z};
            spec.levy.atoms.push_back(atom);
            if (opt.paired_fixed_atoms) {
                GroupElement hi = inverse(h);
                LevyAtom mirror = atom;
                mirror.quat = {hi.w, hi.x, hi.y, hi.z};
                spec.levy.atoms.push_back(mirror);
            }
        }
    }
    if (opt.with_class_atoms) {
        int n = 1 + static_cast<int>(draw_uniform(rng) * 2.0);
        for (int i = 0; i < n; ++i) {
            LevyAtom atom;
            atom.kind = LevyAtom::Kind::Class;
            atom.weight = 0.2 + 1.5 * draw_uniform(rng);
            atom.theta = 0.05 + 0.4 * draw_uniform(rng);
            spec.levy.atoms.push_back(atom);
        }
    }
    return spec;
}

} // namespace oracles
