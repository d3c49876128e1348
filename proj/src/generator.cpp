#include "levysu2/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "levysu2/errors.hpp"
#include "levysu2/repr.hpp"

namespace levysu2 {

namespace {

using json = nlohmann::ordered_json;

void validate_spec(const GeneratorSpec& spec) {
    if ((spec.a - spec.a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw BadInput("generator spec: diffusion matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(spec.a);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw BadInput("generator spec: diffusion matrix not positive semidefinite");
    for (const auto& atom : spec.levy.atoms) {
        if (!(atom.weight > 0.0)) throw BadInput("generator spec: atom weight must be > 0");
        if (atom.kind == LevyAtom::Kind::Fixed) {
            double n = std::sqrt(atom.quat[0] * atom.quat[0] + atom.quat[1] * atom.quat[1] +
                                 atom.quat[2] * atom.quat[2] + atom.quat[3] * atom.quat[3]);
            if (std::abs(n - 1.0) > 1e-9)
                throw BadInput("generator spec: fixed-atom quaternion not unit length");
            // no atom at the identity
            if (std::abs(atom.quat[0] - 1.0) < 1e-12 && std::abs(atom.quat[1]) < 1e-12 &&
                std::abs(atom.quat[2]) < 1e-12 && std::abs(atom.quat[3]) < 1e-12)
                throw BadInput("generator spec: fixed atom at the identity");
        } else {
            if (!(atom.theta > 0.0) || atom.theta > 0.5)
                throw BadInput("generator spec: class-atom angle must lie in (0, 1/2]");
        }
    }
}

} // namespace

GeneratorSpec parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw BadInput(std::string("generator spec: JSON parse error: ") + e.what());
    }
    GeneratorSpec spec;
    try {
        auto diff = j.at("diffusion").get<std::vector<std::vector<double>>>();
        if (diff.size() != 3 || diff[0].size() != 3 || diff[1].size() != 3 || diff[2].size() != 3)
            throw BadInput("generator spec: diffusion must be 3x3");
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l) spec.a(i, l) = diff[i][l];
        auto drift = j.at("drift").get<std::vector<double>>();
        if (drift.size() != 3) throw BadInput("generator spec: drift must have 3 entries");
        spec.drift = AlgebraElement(drift[0], drift[1], drift[2]);
        const auto& levy = j.at("levy");
        for (const auto& a : levy.at("atoms")) {
            LevyAtom atom;
            atom.weight = a.at("weight").get<double>();
            std::string type = a.at("type").get<std::string>();
            if (type == "fixed") {
                atom.kind = LevyAtom::Kind::Fixed;
                auto q = a.at("quaternion").get<std::vector<double>>();
                if (q.size() != 4) throw BadInput("generator spec: quaternion must have 4 entries");
                atom.quat = {q[0], q[1], q[2], q[3]};
            } else if (type == "class") {
                atom.kind = LevyAtom::Kind::Class;
                atom.theta = a.at("theta").get<double>();
            } else {
                throw BadInput("generator spec: atom type must be \"fixed\" or \"class\"");
            }
            spec.levy.atoms.push_back(atom);
        }
    } catch (const BadInput&) {
        throw;
    } catch (const std::exception& e) {
        throw BadInput(std::string("generator spec: schema error: ") + e.what());
    }
    validate_spec(spec);
    return spec;
}

std::string spec_to_json(const GeneratorSpec& spec) {
    json j;
    json diff = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int l = 0; l < 3; ++l) row.push_back(spec.a(i, l));
        diff.push_back(row);
    }
    j["diffusion"] = diff;
    j["drift"] = {spec.drift.v[0], spec.drift.v[1], spec.drift.v[2]};
    json atoms = json::array();
    for (const auto& atom : spec.levy.atoms) {
        json a;
        a["weight"] = atom.weight;
        if (atom.kind == LevyAtom::Kind::Fixed) {
            a["type"] = "fixed";
            a["quaternion"] = {atom.quat[0], atom.quat[1], atom.quat[2], atom.quat[3]};
        } else {
            a["type"] = "class";
            a["theta"] = atom.theta;
        }
        atoms.push_back(a);
    }
    j["levy"] = json{{"atoms", atoms}};
    return j.dump(2);
}

GeneratorSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("generator spec: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

std::array<AlgebraElement, 3> square_root_rows(const Eigen::Matrix3d& a) {
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw NotPSD("square_root_rows: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(a);
    Eigen::Vector3d ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-9) throw NotPSD("square_root_rows: negative eigenvalue");
    // eigenvalues at rounding level would surface as sqrt(eps)-sized spurious
    // directions, so cut relative to the largest one
    const double cut = 1e-13 * std::max(ev.maxCoeff(), 0.0);
    Eigen::Vector3d sq;
    for (int i = 0; i < 3; ++i) sq(i) = ev(i) > cut ? std::sqrt(ev(i)) : 0.0;
    Eigen::Matrix3d sigma = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
    std::array<AlgebraElement, 3> rows;
    for (int i = 0; i < 3; ++i) rows[i] = AlgebraElement(sigma(i, 0), sigma(i, 1), sigma(i, 2));
    return rows;
}

bool hypothesis_H(const GeneratorSpec& spec) {
    auto rows = square_root_rows(spec.a);
    std::vector<AlgebraElement> span;
    for (const auto& y : rows)
        if (y.norm() > 0.0) span.push_back(y * (1.0 / y.norm()));
    if (span.empty()) return false;
    // two bracket levels close the span in 3 dimensions; brackets of unit
    // vectors below 1e-9 are parallel up to rounding, not new directions
    for (int level = 0; level < 2; ++level) {
        std::size_t n = span.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                AlgebraElement b = bracket(span[i], span[j]);
                if (b.norm() > 1e-9) span.push_back(b * (1.0 / b.norm()));
            }
        }
    }
    Eigen::MatrixXd m(static_cast<int>(span.size()), 3);
    for (std::size_t i = 0; i < span.size(); ++i)
        for (int j = 0; j < 3; ++j) m(static_cast<int>(i), j) = span[i].v[j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9) ++rank;
    return rank == 3;
}

GeneratorMatrix generator_matrix(const GeneratorSpec& spec, int k) {
    if (k < 1) throw BadInput("generator_matrix: k must be >= 1");
    const int n = k + 1;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    auto rows = square_root_rows(spec.a);
    for (const auto& y : rows) {
        if (y.norm() == 0.0) continue;
        Eigen::MatrixXcd Yt = derived_rep(k, y);
        G -= 0.5 * (Yt.adjoint() * Yt);
    }
    // coefficients track E[U^k(g_t)^*], so the drift enters through the
    // adjoint flow: d/dt U^k(exp(tX))^* at t = 0.
    if (spec.drift.norm() > 0.0) G += derived_rep(k, spec.drift).adjoint();
    for (const auto& atom : spec.levy.atoms) {
        if (atom.kind == LevyAtom::Kind::Fixed) {
            G += atom.weight *
                 (wigner_matrix(k, atom.element()).adjoint() - Eigen::MatrixXcd::Identity(n, n));
        } else {
            double psi = normalized_character(k, atom.theta);
            G += atom.weight * (psi - 1.0) * Eigen::MatrixXcd::Identity(n, n);
        }
    }
    return GeneratorMatrix{k, std::move(G)};
}

SpectralReport spectral_check(const GeneratorSpec& spec, int k) {
    GeneratorMatrix gm = generator_matrix(spec, k);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(gm.entries, false);
    SpectralReport rep;
    rep.max_real_part = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        rep.eigenvalues.push_back(es.eigenvalues()(i));
        rep.max_real_part = std::max(rep.max_real_part, es.eigenvalues()(i).real());
    }
    rep.nonpositive_ok = rep.max_real_part <= 1e-9;
    rep.strictly_negative = rep.max_real_part < 0.0;
    return rep;
}

bool is_inverse_invariant(const GeneratorSpec& spec) {
    bool structural = true;
    if (spec.drift.norm() > 1e-12) structural = false;
    if (structural) {
        // the Fixed-atom multiset must be closed under inverse with equal weights
        std::vector<const LevyAtom*> fixed;
        for (const auto& a : spec.levy.atoms)
            if (a.kind == LevyAtom::Kind::Fixed) fixed.push_back(&a);
        std::vector<bool> used(fixed.size(), false);
        for (std::size_t i = 0; i < fixed.size() && structural; ++i) {
            if (used[i]) continue;
            GroupElement hi = inverse(fixed[i]->element());
            bool matched = false;
            for (std::size_t j = i; j < fixed.size(); ++j) {
                if (used[j] && j != i) continue;
                GroupElement hj = fixed[j]->element();
                double d = std::max({std::abs(hi.w - hj.w), std::abs(hi.x - hj.x),
                                     std::abs(hi.y - hj.y), std::abs(hi.z - hj.z)});
                if (d < 1e-9 && std::abs(fixed[i]->weight - fixed[j]->weight) < 1e-12) {
                    used[i] = used[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched) structural = false;
        }
    }
    // cross-validate against the Hermitian characterization
    bool hermitian = true;
    for (int k = 1; k <= 4; ++k) {
        Eigen::MatrixXcd G = generator_matrix(spec, k).entries;
        if ((G - G.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
            hermitian = false;
            break;
        }
    }
    if (structural != hermitian)
        throw InconsistencyDetected("is_inverse_invariant: structural and Hermitian tests disagree");
    return structural;
}

std::optional<double> isotropic_constant(const Eigen::Matrix3d& a) {
    double c = a.trace() / 3.0;
    Eigen::Matrix3d d = a - c * Eigen::Matrix3d::Identity();
    if (d.cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;
    return c;
}

bool is_conjugate_invariant(const GeneratorSpec& spec) {
    auto c = isotropic_constant(spec.a);
    if (!c || *c < 0.0) return false;
    if (spec.drift.norm() > 1e-12) return false;
    for (const auto& atom : spec.levy.atoms)
        if (atom.kind != LevyAtom::Kind::Class) return false;
    return true;
}

double lambda_delta(const GeneratorSpec& spec, int k) {
    if (k < 1) throw BadInput("lambda_delta: k must be >= 1");
    if (!hypothesis_H(spec)) throw HypothesisHViolated("lambda_delta: hypothesis (H) fails");
    auto rows = square_root_rows(spec.a);
    double sum = 0.0;
    for (const auto& y : rows) {
        if (y.norm() == 0.0) continue;
        Eigen::MatrixXcd Yt = derived_rep(k, y);
        sum += (Yt.adjoint() * Yt).trace().real();
    }
    return sum / (2.0 * (k + 1));
}

std::complex<double> conjugate_rate(const GeneratorSpec& spec, int k) {
    if (k < 1) throw BadInput("conjugate_rate: k must be >= 1");
    if (!is_conjugate_invariant(spec))
        throw NotConjugateInvariant("conjugate_rate: spec is not conjugate-invariant");
    double lam = 0.0;
    if (isotropic_constant(spec.a).value() > 0.0) lam = lambda_delta(spec, k);
    double jump = 0.0;
    for (const auto& atom : spec.levy.atoms)
        jump += atom.weight * (1.0 - normalized_character(k, atom.theta));
    return std::complex<double>(-lam - jump, 0.0);
}

GapReport spectral_gap(const GeneratorSpec& spec, int k_max) {
    if (k_max < 1) throw BadInput("spectral_gap: k_max must be >= 1");
    if (!hypothesis_H(spec)) throw HypothesisHViolated("spectral_gap: hypothesis (H) fails");
    const bool conj = is_conjugate_invariant(spec);
    GapReport rep;
    rep.gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        double rate;
        if (conj) {
            rate = -conjugate_rate(spec, k).real();
        } else {
            rate = -spectral_check(spec, k).max_real_part;
        }
        rep.per_k_rates.push_back(rate);
        if (rate < rep.gap) {
            rep.gap = rate;
            rep.attained_k = k;
        }
    }
    rep.certified = false;
    auto c = isotropic_constant(spec.a);
    if (c && *c > 0.0) {
        // a = 2c I decays level k at c * casimir(k), i.e. half the isotropic
        // constant of a itself; jumps can slow a level by at most 2 lambda_Pi
        double lambda_pi = spec.levy.total_rate();
        if (0.5 * *c * casimir_eigenvalue(k_max + 1) - 2.0 * lambda_pi > rep.gap)
            rep.certified = true;
    }
    return rep;
}

} // namespace levysu2
