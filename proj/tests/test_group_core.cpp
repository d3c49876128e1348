#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "levysu2/errors.hpp"
#include "levysu2/matrix_exp.hpp"
#include "levysu2/quadrature.hpp"
#include "levysu2/repr.hpp"
#include "levysu2/rng.hpp"
#include "levysu2/su2.hpp"
#include "oracles.hpp"

using namespace levysu2;

namespace {
double mat_dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}
} // namespace

TEST_CASE("group composition matches 2x2 matrix multiplication") {
    RandomStream rng(101);
    for (int i = 0; i < 200; ++i) {
        GroupElement g = haar_sample(rng), h = haar_sample(rng);
        CHECK(mat_dist(compose(g, h).matrix(), g.matrix() * h.matrix()) < 1e-14);
    }
}

TEST_CASE("inverse and identity") {
    RandomStream rng(102);
    for (int i = 0; i < 50; ++i) {
        GroupElement g = haar_sample(rng);
        GroupElement e = compose(g, inverse(g));
        CHECK(std::abs(e.w - 1.0) < 1e-14);
        CHECK(std::abs(e.x) < 1e-14);
        CHECK(std::abs(e.y) < 1e-14);
        CHECK(std::abs(e.z) < 1e-14);
        CHECK(mat_dist(inverse(g).matrix(), g.matrix().inverse()) < 1e-13);
    }
    CHECK(GroupElement::identity().w == 1.0);
}

TEST_CASE("constructor renormalizes") {
    GroupElement g(2.0, 0.0, 0.0, 0.0);
    CHECK(g.w == doctest::Approx(1.0).epsilon(1e-15));
    GroupElement h(1.0, 1.0, 1.0, 1.0);
    CHECK(h.quat_norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exp_map anchor: coordinate 2*sqrt(2)*pi^2 gives a quarter turn") {
    // half-angle = |v|/(4 sqrt(2) pi) = pi/2, so the result is the unit
    // quaternion (0,1,0,0) with conjugacy angle 1/4
    GroupElement g = exp_map(AlgebraElement(2.0 * std::sqrt(2.0) * pi() * pi(), 0.0, 0.0));
    CHECK(std::abs(g.w) < 1e-14);
    CHECK(g.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(conjugacy_angle(g) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("exp_map matches the series exponential of the algebra matrix") {
    RandomStream rng(103);
    for (double scale : {1e-9, 1e-5, 0.1, 1.0, 10.0, 80.0}) {
        for (int i = 0; i < 20; ++i) {
            AlgebraElement v(scale * draw_normal(rng), scale * draw_normal(rng),
                             scale * draw_normal(rng));
            CHECK(mat_dist(exp_map(v).matrix(), oracles::taylor_exp(v.matrix())) < 1e-13);
        }
    }
}

TEST_CASE("exp_map is a one-parameter subgroup in each direction") {
    RandomStream rng(104);
    for (int i = 0; i < 30; ++i) {
        AlgebraElement v(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        GroupElement whole = exp_map(v * 3.7);
        GroupElement split = compose(exp_map(v * 1.2), exp_map(v * 2.5));
        CHECK(mat_dist(whole.matrix(), split.matrix()) < 1e-13);
    }
}

TEST_CASE("conjugacy angle: torus round trip, trace relation, class invariance") {
    RandomStream rng(105);
    for (double theta : {0.0, 0.01, 0.1, 0.25, 0.4, 0.5}) {
        GroupElement u = torus_element(theta);
        CHECK(conjugacy_angle(u) == doctest::Approx(theta).epsilon(1e-13));
        CHECK(u.matrix().trace().real() ==
              doctest::Approx(2.0 * std::cos(2.0 * pi() * theta)).epsilon(1e-13));
        CHECK(std::abs(u.matrix().trace().imag()) < 1e-15);
    }
    for (int i = 0; i < 50; ++i) {
        GroupElement g = haar_sample(rng), h = haar_sample(rng);
        GroupElement conj = compose(h, compose(g, inverse(h)));
        CHECK(conjugacy_angle(conj) == doctest::Approx(conjugacy_angle(g)).epsilon(1e-11));
    }
}

TEST_CASE("adjoint action: matrix conjugation oracle, orthogonality, fixed axis") {
    RandomStream rng(106);
    for (int i = 0; i < 50; ++i) {
        GroupElement g = haar_sample(rng);
        AlgebraElement X(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        AlgebraElement ad = adjoint(g, X);
        Eigen::Matrix2cd lhs = ad.matrix();
        Eigen::Matrix2cd rhs = g.matrix() * X.matrix() * g.matrix().inverse();
        CHECK(mat_dist(lhs, rhs) < 1e-13);
        CHECK(ad.norm() == doctest::Approx(X.norm()).epsilon(1e-12));
    }
    for (int i = 0; i < 20; ++i) {
        AlgebraElement v(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        AlgebraElement fixed = adjoint(exp_map(v), v);
        CHECK(std::abs(fixed.v[0] - v.v[0]) < 1e-12);
        CHECK(std::abs(fixed.v[1] - v.v[1]) < 1e-12);
        CHECK(std::abs(fixed.v[2] - v.v[2]) < 1e-12);
    }
}

TEST_CASE("bracket: commutator oracle and structure constant") {
    RandomStream rng(107);
    for (int i = 0; i < 50; ++i) {
        AlgebraElement X(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        AlgebraElement Y(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        Eigen::Matrix2cd comm = X.matrix() * Y.matrix() - Y.matrix() * X.matrix();
        CHECK(mat_dist(bracket(X, Y).matrix(), comm) < 1e-14);
    }
    AlgebraElement b = bracket(AlgebraElement(1, 0, 0), AlgebraElement(0, 1, 0));
    CHECK(b.v[2] == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.0) * pi())).epsilon(1e-14));
    CHECK(std::abs(b.v[0]) < 1e-15);
    CHECK(std::abs(b.v[1]) < 1e-15);
}

TEST_CASE("algebra inner product equals the trace form") {
    RandomStream rng(108);
    for (int i = 0; i < 50; ++i) {
        AlgebraElement X(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        AlgebraElement Y(draw_normal(rng), draw_normal(rng), draw_normal(rng));
        double trace_form = (-16.0 * pi() * pi() * (X.matrix() * Y.matrix()).trace()).real();
        CHECK(algebra_inner(X, Y) == doctest::Approx(trace_form).epsilon(1e-11));
    }
}

TEST_CASE("haar samples: first and second moment of the real part") {
    RandomStream rng(109);
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        GroupElement g = haar_sample(rng);
        s1 += g.w;
        s2 += g.w * g.w;
    }
    // w has mean 0, variance 1/4; w^2 has variance 1/16
    CHECK(std::abs(s1 / n) < 4.0 * 0.5 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 0.25) < 4.0 * 0.25 / std::sqrt(n));
}

TEST_CASE("long product chains stay on the unit sphere") {
    RandomStream rng(110);
    GroupElement g = GroupElement::identity();
    for (int i = 0; i < 100000; ++i) g = compose(g, haar_sample(rng));
    CHECK(std::abs(g.quat_norm() - 1.0) < 1e-12);
}

TEST_CASE("quadrature: angle weight integrates to one") {
    const Quadrature& q = theta_quadrature();
    double v = q.integrate([](double th) { return angle_weight(th); });
    CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("quadrature: polynomial exactness and smooth reference integral") {
    Quadrature q = composite_gauss_legendre(0.0, 1.0, 1, 8);
    double v = q.integrate([](double x) { return 9.0 * std::pow(x, 8.0); }); // degree 8 < 2*8
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    Quadrature q2 = composite_gauss_legendre(0.0, 1.0, 4, 12);
    double e = q2.integrate([](double x) { return std::exp(x); });
    CHECK(e == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("matrix_exp matches an independent series oracle across scales") {
    RandomStream rng(111);
    for (int n : {1, 2, 3, 5, 8}) {
        for (double scale : {0.1, 1.0, 10.0, 100.0}) {
            Eigen::MatrixXcd m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m(i, j) = std::complex<double>(draw_normal(rng), draw_normal(rng)) * scale /
                              std::sqrt(static_cast<double>(n));
            Eigen::MatrixXcd got = matrix_exp(m);
            Eigen::MatrixXcd want = oracles::taylor_exp(m);
            double rel = (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
            CHECK(rel < 1e-11);
        }
    }
}

TEST_CASE("matrix_exp: Hermitian inputs take the eigen route and agree with the series") {
    RandomStream rng(112);
    for (int i = 0; i < 20; ++i) {
        Eigen::MatrixXcd m(6, 6);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) m(r, c) = std::complex<double>(draw_normal(rng), draw_normal(rng));
        Eigen::MatrixXcd h = (m + m.adjoint()).eval();
        CHECK(mat_dist(matrix_exp(h), oracles::taylor_exp(h)) / oracles::taylor_exp(h).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("matrix_exp basics: zero matrix, inverse pairing") {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(4, 4);
    CHECK(mat_dist(matrix_exp(z), Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
    RandomStream rng(113);
    Eigen::MatrixXcd m(5, 5);
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) m(r, c) = std::complex<double>(draw_normal(rng), draw_normal(rng));
    CHECK(mat_dist(matrix_exp(m) * matrix_exp(-m), Eigen::MatrixXcd::Identity(5, 5)) < 1e-10);
}

TEST_CASE("matrix_exp on a size-4 Jordan block matches the closed form") {
    for (double t : {0.5, 2.0}) {
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 4);
        for (int i = 0; i < 4; ++i) b(i, i) = -1.0;
        for (int i = 0; i < 3; ++i) b(i, i + 1) = 1.0;
        Eigen::MatrixXcd e = matrix_exp(t * b);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                double want = 0.0;
                if (j >= i) {
                    want = std::exp(-t);
                    for (int f = 1; f <= j - i; ++f) want *= t / f;
                }
                if (j < i) {
                    CHECK(std::abs(e(i, j)) < 1e-15);
                } else {
                    CHECK(std::abs(e(i, j).real() - want) / want < 1e-12);
                    CHECK(std::abs(e(i, j).imag()) < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("decay_bound: certificate holds along the semigroup") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = -2.0;
    DecayBound db = decay_bound(m);
    CHECK(db.lambda == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(db.K >= std::sqrt(2.0) - 1e-12);
    for (double t : {0.0, 0.1, 1.0, 5.0, 30.0}) {
        double norm = matrix_exp(t * m).norm();
        CHECK(norm <= db.K * std::exp(-db.lambda * t) * (1.0 + 1e-9));
    }

    // non-normal: transient growth must be absorbed into K
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(3, 3);
    for (int i = 0; i < 3; ++i) j(i, i) = -0.5;
    for (int i = 0; i < 2; ++i) j(i, i + 1) = 5.0;
    DecayBound dj = decay_bound(j);
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 20.0}) {
        double norm = matrix_exp(t * j).norm();
        CHECK(norm <= dj.K * std::exp(-dj.lambda * t) * (1.0 + 1e-9));
    }
}

TEST_CASE("decay_bound rejects unstable matrices") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    CHECK_THROWS_AS(decay_bound(m), NotStable);
}
