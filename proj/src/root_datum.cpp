#include "levysu2/root_datum.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <json.hpp>

#include "levysu2/errors.hpp"
#include "levysu2/su2.hpp"

namespace levysu2 {

namespace {

using json = nlohmann::ordered_json;

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m, int rows, int cols) {
    Eigen::MatrixXd e(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) e(i, j) = m[i][j];
    return e;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    Eigen::VectorXd e(static_cast<int>(v.size()));
    for (int i = 0; i < e.size(); ++i) e(i) = v[i];
    return e;
}

double pair_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// <a,b> through the gram matrix
double gram_inner(const RootDatum& rd, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < rd.rank; ++i)
        for (int j = 0; j < rd.rank; ++j) s += a[i] * rd.gram[i][j] * b[j];
    return s;
}

std::vector<double> apply(const WeylElement& w, const std::vector<double>& v) {
    std::vector<double> r(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += w.matrix[i][j] * v[j];
    return r;
}

} // namespace

RootDatum validate_root_datum(RootDatum rd) {
    if (rd.rank <= 0) throw BadInput("root datum: rank must be positive");
    if (rd.positive_roots.empty()) throw BadInput("root datum: no positive roots");
    for (const auto& a : rd.positive_roots)
        if (static_cast<int>(a.size()) != rd.rank) throw BadInput("root datum: root dimension mismatch");
    if (static_cast<int>(rd.gram.size()) != rd.rank) throw BadInput("root datum: gram dimension mismatch");
    for (const auto& row : rd.gram)
        if (static_cast<int>(row.size()) != rd.rank) throw BadInput("root datum: gram dimension mismatch");

    Eigen::MatrixXd G = to_eigen(rd.gram, rd.rank, rd.rank);
    if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw BadInput("root datum: gram not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.eigenvalues().minCoeff() <= 0.0) throw BadInput("root datum: gram not positive definite");

    // rho = half sum of positive roots
    rd.rho.assign(rd.rank, 0.0);
    for (const auto& a : rd.positive_roots)
        for (int i = 0; i < rd.rank; ++i) rd.rho[i] += 0.5 * a[i];

    if (rd.weyl.empty()) throw BadInput("root datum: empty Weyl group");
    for (const auto& w : rd.weyl) {
        if (static_cast<int>(w.matrix.size()) != rd.rank) throw BadInput("root datum: weyl dimension mismatch");
        for (const auto& row : w.matrix)
            if (static_cast<int>(row.size()) != rd.rank) throw BadInput("root datum: weyl dimension mismatch");
        if (w.det != 1 && w.det != -1) throw BadInput("root datum: weyl det must be +-1");
        Eigen::MatrixXd W = to_eigen(w.matrix, rd.rank, rd.rank);
        double actual = W.determinant();
        if (std::abs(actual - w.det) > 1e-6) throw BadInput("root datum: stated det does not match matrix");
        // must permute the root set {+-alpha}
        for (const auto& a : rd.positive_roots) {
            std::vector<double> wa = apply(w, a);
            bool found = false;
            for (const auto& b : rd.positive_roots) {
                double dp = 0.0, dm = 0.0;
                for (int i = 0; i < rd.rank; ++i) {
                    dp = std::max(dp, std::abs(wa[i] - b[i]));
                    dm = std::max(dm, std::abs(wa[i] + b[i]));
                }
                if (dp < 1e-9 || dm < 1e-9) { found = true; break; }
            }
            if (!found) throw BadInput("root datum: weyl element does not permute the roots");
        }
    }
    return rd;
}

RootDatum load_root_datum_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw BadInput(std::string("root datum: JSON parse error: ") + e.what());
    }
    RootDatum rd;
    try {
        rd.rank = j.at("rank").get<int>();
        rd.positive_roots = j.at("positive_roots").get<std::vector<std::vector<double>>>();
        rd.gram = j.at("gram").get<std::vector<std::vector<double>>>();
        for (const auto& w : j.at("weyl")) {
            WeylElement we;
            we.matrix = w.at("matrix").get<std::vector<std::vector<double>>>();
            we.det = w.at("det").get<int>();
            rd.weyl.push_back(std::move(we));
        }
    } catch (const BadInput&) {
        throw;
    } catch (const std::exception& e) {
        throw BadInput(std::string("root datum: schema error: ") + e.what());
    }
    return validate_root_datum(std::move(rd));
}

std::string root_datum_to_json(const RootDatum& rd) {
    json j;
    j["rank"] = rd.rank;
    j["positive_roots"] = rd.positive_roots;
    j["gram"] = rd.gram;
    json weyl = json::array();
    for (const auto& w : rd.weyl) {
        json e;
        e["matrix"] = w.matrix;
        e["det"] = w.det;
        weyl.push_back(e);
    }
    j["weyl"] = weyl;
    return j.dump(2);
}

const RootDatum& su2_root_datum() {
    static const RootDatum rd = [] {
        RootDatum r;
        r.rank = 1;
        r.positive_roots = {{2.0}};
        r.gram = {{1.0 / (32.0 * pi() * pi())}};
        r.weyl.push_back({{{1.0}}, 1});
        r.weyl.push_back({{{-1.0}}, -1});
        return validate_root_datum(std::move(r));
    }();
    return rd;
}

double weyl_dimension(const RootDatum& rd, const std::vector<double>& beta) {
    if (static_cast<int>(beta.size()) != rd.rank) throw BadInput("weyl_dimension: weight dimension mismatch");
    std::vector<double> br(beta);
    for (int i = 0; i < rd.rank; ++i) br[i] += rd.rho[i];
    double prod = 1.0;
    for (const auto& a : rd.positive_roots) {
        double num = gram_inner(rd, a, br);
        double den = gram_inner(rd, a, rd.rho);
        if (gram_inner(rd, a, beta) < -1e-12) throw NonDominantWeight("weyl_dimension: weight not dominant");
        prod *= num / den;
    }
    double rounded = std::round(prod);
    if (std::abs(prod - rounded) > 1e-6 || rounded < 1.0)
        throw NonIntegerDimension("weyl_dimension: non-integer dimension");
    return rounded;
}

std::complex<double> weyl_character_torus(const RootDatum& rd, const std::vector<double>& beta,
                                          const std::vector<double>& H) {
    if (static_cast<int>(beta.size()) != rd.rank || static_cast<int>(H.size()) != rd.rank)
        throw BadInput("weyl_character_torus: dimension mismatch");
    const std::complex<double> twopii(0.0, 2.0 * pi());
    std::vector<double> br(beta);
    for (int i = 0; i < rd.rank; ++i) br[i] += rd.rho[i];

    std::complex<double> num(0.0, 0.0);
    for (const auto& w : rd.weyl) {
        std::vector<double> wH = apply(w, H);
        num += static_cast<double>(w.det) * std::exp(twopii * pair_dot(br, wH));
    }
    std::complex<double> den = std::exp(twopii * pair_dot(rd.rho, H));
    for (const auto& a : rd.positive_roots)
        den *= (1.0 - std::exp(-twopii * pair_dot(a, H)));
    if (std::abs(den) < 1e-9) throw SingularTorusPoint("weyl_character_torus: singular torus point");
    return num / den;
}

} // namespace levysu2
