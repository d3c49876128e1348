#include "levysu2/matrix_exp.hpp"

#include <cmath>
#include <complex>

#include "levysu2/errors.hpp"

namespace levysu2 {

namespace {

using Mat = Eigen::MatrixXcd;

double one_norm(const Mat& M) {
    return M.cwiseAbs().colwise().sum().maxCoeff();
}

// [m/m] Pade approximant to exp; b holds the coefficients for the given order.
Mat pade_solve(const Mat& U, const Mat& V) {
    return (V - U).partialPivLu().solve(V + U);
}

Mat pade_low(const Mat& A, const double* b, int m) {
    const int n = static_cast<int>(A.rows());
    const Mat I = Mat::Identity(n, n);
    const Mat A2 = A * A;
    Mat Ueven = b[1] * I, Veven = b[0] * I;
    Mat P = I;
    for (int j = 1; 2 * j <= m; ++j) {
        P = P * A2;
        Ueven += b[2 * j + 1] * P;
        Veven += b[2 * j] * P;
    }
    return pade_solve(A * Ueven, Veven);
}

Mat pade13(const Mat& A) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const int n = static_cast<int>(A.rows());
    const Mat I = Mat::Identity(n, n);
    const Mat A2 = A * A;
    const Mat A4 = A2 * A2;
    const Mat A6 = A2 * A4;
    Mat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 +
                 b[1] * I);
    Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 +
            b[0] * I;
    return pade_solve(U, V);
}

} // namespace

Eigen::MatrixXcd matrix_exp_pade(const Eigen::MatrixXcd& M) {
    static const double b3[] = {120.0, 60.0, 12.0, 1.0};
    static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
    static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                30270240.0,    2162160.0,    110880.0,     3960.0,
                                90.0,          1.0};
    const double theta3 = 1.495585217958292e-2;
    const double theta5 = 2.539398330063230e-1;
    const double theta7 = 9.504178996162932e-1;
    const double theta9 = 2.097847961257068e0;
    const double theta13 = 5.371920351148152e0;

    const double nrm = one_norm(M);
    if (nrm <= theta3) return pade_low(M, b3, 3);
    if (nrm <= theta5) return pade_low(M, b5, 5);
    if (nrm <= theta7) return pade_low(M, b7, 7);
    if (nrm <= theta9) return pade_low(M, b9, 9);

    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    Mat R = pade13(M / std::pow(2.0, s));
    for (int i = 0; i < s; ++i) R = R * R;
    return R;
}

Eigen::MatrixXcd matrix_exp_hermitian(const Eigen::MatrixXcd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXcd e(lam.size());
    for (int i = 0; i < lam.size(); ++i) e(i) = std::exp(lam(i));
    return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M) {
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale) return matrix_exp_hermitian(M);
    return matrix_exp_pade(M);
}

DecayBound decay_bound(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    double max_re = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        max_re = std::max(max_re, es.eigenvalues()(i).real());
    if (max_re >= 0.0) throw NotStable("decay_bound: eigenvalue with nonnegative real part");

    DecayBound out;
    out.lambda = -max_re * (1.0 - 1e-9);
    // geometric grid on (0, 50/lambda], plus t = 0
    out.K = std::sqrt(static_cast<double>(M.rows())); // ||e^{0}||_F
    const double t_hi = 50.0 / out.lambda;
    const double t_lo = t_hi * 1e-4;
    const int npts = 200;
    for (int i = 0; i < npts; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (npts - 1));
        const double f = (matrix_exp(t * M)).norm() * std::exp(out.lambda * t);
        out.K = std::max(out.K, f);
    }
    return out;
}

} // namespace levysu2
