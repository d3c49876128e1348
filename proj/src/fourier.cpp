#include "levysu2/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "levysu2/errors.hpp"
#include "levysu2/matrix_exp.hpp"
#include "levysu2/repr.hpp"

namespace levysu2 {

namespace {

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// sum_{k > k_max} (k+1)^2 exp(-(c*casimir(k) - 2*lambda_pi) * tau), bounded by
// explicit terms until the term ratio drops below 1/2, then a geometric tail.
double comparison_tail(double c, double lambda_pi, double tau, int k_max) {
    auto term = [&](double k) {
        return (k + 1.0) * (k + 1.0) * std::exp(-(c * casimir_eigenvalue(static_cast<int>(k)) -
                                                  2.0 * lambda_pi) * tau);
    };
    double sum = 0.0;
    double k = k_max + 1.0;
    double tk = term(k);
    for (long iter = 0; iter < 2000000; ++iter) {
        if (tk == 0.0) return sum; // remaining terms underflow
        double tn = term(k + 1.0);
        double r = tn / tk;
        if (r <= 0.5) {
            sum += tk + tn / (1.0 - r); // ratio is decreasing in k
            return sum;
        }
        sum += tk;
        tk = tn;
        k += 1.0;
        if (sum > 1e300) return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::infinity();
}

double frob(const Eigen::MatrixXcd& m) { return m.norm(); }

// heuristic tail for non-isotropic specs: envelope of the last computed series
// term times a geometric factor from the observed decay ratio
double heuristic_tail(const GeneratorSpec& spec, double t, int k_max) {
    auto envelope = [&](int k) {
        Eigen::MatrixXcd A = matrix_exp(t * generator_matrix(spec, k).entries);
        return std::pow(k + 1.0, 1.5) * frob(A);
    };
    double last = envelope(k_max);
    double r = 0.5;
    if (k_max >= 2) {
        double prev = envelope(k_max - 1);
        if (prev > 0.0) r = std::clamp(last / prev, 0.0, 0.9);
    }
    return last * r / (1.0 - r);
}

void check_resolvable(double tail, int k_max) {
    if (tail > 1e-3)
        throw SmallTimeUnresolved("density series unresolved at k_max = " + std::to_string(k_max) +
                                  " (tail estimate " + std::to_string(tail) + ")");
}

// decay-rate constant for the comparison sums: a = 2c I means level k decays
// at c * casimir(k), so halve the isotropic constant of a itself
std::optional<double> certified_rate_constant(const GeneratorSpec& spec) {
    auto c = isotropic_constant(spec.a);
    if (c && *c > 0.0) return 0.5 * *c;
    return std::nullopt;
}

} // namespace

std::complex<double> CoefficientSet::class_coefficient(int k) const {
    if (k < 1 || k > k_max) throw BadInput("class_coefficient: k out of range");
    if (scalar_mode) return scalars[k - 1];
    return matrices[k - 1].trace() / static_cast<double>(k + 1);
}

namespace {

// always the full matrix exponentials, regardless of invariance
CoefficientSet matrix_coefficients(const GeneratorSpec& spec, double t, int k_max, Exec exec) {
    CoefficientSet out;
    out.t = t;
    out.k_max = k_max;
    out.scalar_mode = false;
    out.matrices.resize(k_max);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int k = 1; k <= k_max; ++k)
            out.matrices[k - 1] = matrix_exp(t * generator_matrix(spec, k).entries);
    } else {
        for (int k = 1; k <= k_max; ++k)
            out.matrices[k - 1] = matrix_exp(t * generator_matrix(spec, k).entries);
    }
    return out;
}

} // namespace

CoefficientSet coefficients(const GeneratorSpec& spec, double t, int k_max, Exec exec) {
    if (!(t > 0.0)) throw BadInput("coefficients: t must be > 0");
    if (k_max < 1) throw BadInput("coefficients: k_max must be >= 1");
    if (is_conjugate_invariant(spec)) {
        CoefficientSet out;
        out.t = t;
        out.k_max = k_max;
        out.scalar_mode = true;
        out.scalars.resize(k_max);
        for (int k = 1; k <= k_max; ++k)
            out.scalars[k - 1] = std::exp(t * conjugate_rate(spec, k));
        return out;
    }
    return matrix_coefficients(spec, t, k_max, exec);
}

TailEstimate truncation_tail(const GeneratorSpec& spec, double t, int k_max) {
    if (!(t > 0.0)) throw BadInput("truncation_tail: t must be > 0");
    if (k_max < 1) throw BadInput("truncation_tail: k_max must be >= 1");
    auto c = certified_rate_constant(spec);
    TailEstimate est;
    if (c) {
        est.certified = true;
        est.bound = comparison_tail(*c, spec.levy.total_rate(), t, k_max);
    } else {
        est.certified = false;
        est.bound = heuristic_tail(spec, t, k_max);
    }
    return est;
}

double truncation_error(const GeneratorSpec& spec, double t, int k_max) {
    return truncation_tail(spec, t, k_max).bound;
}

int default_k_max(const GeneratorSpec& spec, double t) {
    auto c = certified_rate_constant(spec);
    if (c) {
        for (int k = 1; k <= 200; ++k)
            if (comparison_tail(*c, spec.levy.total_rate(), t, k) < 1e-10) return k;
        return 200;
    }
    for (int k = 1; k <= 200; ++k)
        if (heuristic_tail(spec, t, k) < 1e-10) return k;
    return 200;
}

DensityValue density_at(const GeneratorSpec& spec, double t, const GroupElement& g, int k_max) {
    if (!(t > 0.0)) throw BadInput("density_at: t must be > 0");
    if (k_max <= 0) k_max = default_k_max(spec, t);
    TailEstimate tail = truncation_tail(spec, t, k_max);
    check_resolvable(tail.bound, k_max);
    CoefficientSet cs = coefficients(spec, t, k_max);
    KahanSum re, im;
    re.add(1.0);
    for (int k = 1; k <= k_max; ++k) {
        std::complex<double> tr;
        if (cs.scalar_mode) {
            tr = cs.scalars[k - 1] * character_of(k, g);
        } else {
            tr = (cs.matrices[k - 1] * wigner_matrix(k, g)).trace();
        }
        re.add((k + 1.0) * tr.real());
        im.add((k + 1.0) * tr.imag());
    }
    if (std::abs(im.s) >= 1e-8)
        throw InconsistencyDetected("density_at: imaginary residual " + std::to_string(im.s));
    return DensityValue{re.s, tail.bound};
}

DensityValue density_class(const GeneratorSpec& spec, double t, double theta, int k_max) {
    if (!(t > 0.0)) throw BadInput("density_class: t must be > 0");
    if (!is_conjugate_invariant(spec))
        throw NotConjugateInvariant("density_class: spec is not conjugate-invariant");
    if (k_max <= 0) k_max = default_k_max(spec, t);
    TailEstimate tail = truncation_tail(spec, t, k_max);
    check_resolvable(tail.bound, k_max);
    KahanSum sum;
    sum.add(1.0);
    for (int k = 1; k <= k_max; ++k) {
        double a = std::exp(t * conjugate_rate(spec, k)).real();
        sum.add((k + 1.0) * a * character(k, theta));
    }
    return DensityValue{sum.s, tail.bound};
}

double class_marginal_density(const CoefficientSet& coeffs, double theta) {
    KahanSum sum;
    sum.add(1.0);
    for (int k = 1; k <= coeffs.k_max; ++k) {
        double a = coeffs.class_coefficient(k).real();
        sum.add((k + 1.0) * a * character(k, theta));
    }
    return sum.s;
}

double heat_kernel(double c, double t, double theta, int n_max) {
    if (!(c > 0.0)) throw BadInput("heat_kernel: c must be > 0");
    if (!(t > 0.0)) throw BadInput("heat_kernel: t must be > 0");
    const double rate = c * t / (32.0 * pi() * pi());
    KahanSum sum;
    const long cap = (n_max > 0) ? n_max : 1000000;
    for (long n = 1; n <= cap; ++n) {
        double term = n * std::exp(-rate * (static_cast<double>(n) * n - 1.0)) *
                      character(static_cast<int>(n) - 1, theta);
        sum.add(term);
        if (n_max == 0) {
            double next = (n + 1.0) * (n + 1.0) * std::exp(-rate * ((n + 1.0) * (n + 1.0) - 1.0));
            if (next < 1e-14 * std::max(1.0, std::abs(sum.s))) break;
        }
    }
    return sum.s;
}

L2Result l2_norm_sq(const GeneratorSpec& spec, double t, int k_max) {
    if (!(t > 0.0)) throw BadInput("l2_norm_sq: t must be > 0");
    if (k_max < 1) throw BadInput("l2_norm_sq: k_max must be >= 1");
    CoefficientSet cs = coefficients(spec, t, k_max);
    KahanSum sum;
    for (int k = 1; k <= k_max; ++k) {
        if (cs.scalar_mode) {
            double a = std::abs(cs.scalars[k - 1]);
            sum.add((k + 1.0) * (k + 1.0) * a * a);
        } else {
            sum.add((k + 1.0) * (cs.matrices[k - 1] * cs.matrices[k - 1].adjoint()).trace().real());
        }
    }
    // tail of the l2 series: same comparison with doubled time
    auto c = certified_rate_constant(spec);
    double tail;
    if (c) {
        tail = comparison_tail(*c, spec.levy.total_rate(), 2.0 * t, k_max);
    } else {
        double h = heuristic_tail(spec, t, k_max);
        tail = h * h;
    }
    return L2Result{sum.s, tail};
}

TvBoundsResult tv_bounds(const GeneratorSpec& spec, double t, int k_max) {
    CoefficientSet cs = coefficients(spec, t, k_max);
    double lower = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        if (cs.scalar_mode) {
            lower = std::max(lower, std::abs(cs.scalars[k - 1]));
        } else {
            for (int i = 0; i <= k; ++i)
                lower = std::max(lower, std::abs(cs.matrices[k - 1](i, i)));
        }
    }
    L2Result l2 = l2_norm_sq(spec, t, k_max);
    return TvBoundsResult{lower, std::sqrt(l2.value + l2.tail)};
}

DensityProfile density_profile(const GeneratorSpec& spec, double t, int k_max, int grid_n,
                               bool force_general, Exec exec) {
    if (!(t > 0.0)) throw BadInput("density_profile: t must be > 0");
    if (grid_n < 2) throw BadInput("density_profile: grid must have at least 2 points");
    if (k_max <= 0) k_max = default_k_max(spec, t);
    TailEstimate tail = truncation_tail(spec, t, k_max);
    check_resolvable(tail.bound, k_max);

    CoefficientSet cs = force_general ? matrix_coefficients(spec, t, k_max, exec)
                                      : coefficients(spec, t, k_max, exec);
    const bool scalar = cs.scalar_mode;

    DensityProfile prof;
    prof.t = t;
    prof.k_max = k_max;
    prof.tail_certified = tail.certified;
    prof.theta.resize(grid_n);
    prof.density.resize(grid_n);
    prof.weighted.resize(grid_n);
    prof.tail.assign(grid_n, tail.bound);

    auto eval_point = [&](int i) {
        const double th = 0.5 * i / (grid_n - 1);
        prof.theta[i] = th;
        double p;
        if (scalar) {
            KahanSum sum;
            sum.add(1.0);
            for (int k = 1; k <= k_max; ++k)
                sum.add((k + 1.0) * cs.scalars[k - 1].real() * character(k, th));
            p = sum.s;
        } else {
            p = class_marginal_density(cs, th);
        }
        prof.density[i] = p;
        prof.weighted[i] = p * angle_weight(th);
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < grid_n; ++i) eval_point(i);
    } else {
        for (int i = 0; i < grid_n; ++i) eval_point(i);
    }
    return prof;
}

std::string profile_to_csv(const DensityProfile& profile) {
    std::string out = "theta,density,weighted_density,tail_estimate\n";
    char buf[256];
    for (std::size_t i = 0; i < profile.theta.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", profile.theta[i],
                      profile.density[i], profile.weighted[i], profile.tail[i]);
        out += buf;
    }
    return out;
}

DensityProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "theta,density,weighted_density,tail_estimate")
        throw BadInput("density profile CSV: bad header");
    DensityProfile prof;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b, c, d;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lg", &a, &b, &c, &d) != 4)
            throw BadInput("density profile CSV: bad row");
        prof.theta.push_back(a);
        prof.density.push_back(b);
        prof.weighted.push_back(c);
        prof.tail.push_back(d);
    }
    return prof;
}

std::string report_json(const GeneratorSpec& spec, double t, int k_max) {
    if (k_max <= 0) k_max = default_k_max(spec, t);
    L2Result l2 = l2_norm_sq(spec, t, k_max);
    TvBoundsResult tv = tv_bounds(spec, t, k_max);
    GapReport gap = spectral_gap(spec, k_max);
    nlohmann::ordered_json j;
    j["t"] = t;
    j["k_max"] = k_max;
    j["l2"] = std::sqrt(l2.value);
    j["tv_lower"] = tv.lower;
    j["tv_upper"] = tv.upper;
    j["gap"] = gap.gap;
    j["certified"] = gap.certified;
    return j.dump(2);
}

} // namespace levysu2
