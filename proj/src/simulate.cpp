#include "levysu2/simulate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "levysu2/errors.hpp"
#include "levysu2/repr.hpp"

namespace levysu2 {

double default_dt(const GeneratorSpec& spec) {
    double dt = 1e-3;
    double rate = spec.levy.total_rate();
    if (rate > 0.0) dt = std::min(dt, 0.1 / rate);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(spec.a);
    double c_eff = es.eigenvalues().maxCoeff() / 2.0;
    if (c_eff > 0.0) dt = std::min(dt, 0.1 * (32.0 * pi() * pi()) / (3.0 * c_eff));
    return dt;
}

std::optional<std::string> path_config_warning(const GeneratorSpec& spec,
                                               const PathConfig& config) {
    double rate = spec.levy.total_rate();
    double rec = 0.01 * std::min(1.0, rate > 0.0 ? 1.0 / rate : 1.0);
    if (config.dt > rec) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "dt = %g exceeds the recommended %g = 0.01*min(1, 1/rate)",
                      config.dt, rec);
        return std::string(buf);
    }
    return std::nullopt;
}

double SampleSet::mean_jumps() const {
    if (jump_counts.empty()) return 0.0;
    double s = 0.0;
    for (int n : jump_counts) s += n;
    return s / static_cast<double>(jump_counts.size());
}

GroupElement diffusion_step(const GroupElement& g, const std::array<AlgebraElement, 3>& rows,
                            const AlgebraElement& drift, double dt, RandomStream& rng) {
    const double sq = std::sqrt(dt);
    AlgebraElement v;
    for (int i = 0; i < 3; ++i) {
        double xi = draw_normal(rng);
        for (int d = 0; d < 3; ++d) v.v[d] += sq * xi * rows[i].v[d];
    }
    for (int d = 0; d < 3; ++d) v.v[d] += dt * drift.v[d];
    return compose(g, exp_map(v));
}

GroupElement diffusion_step(const GroupElement& g, const GeneratorSpec& spec, double dt,
                            RandomStream& rng) {
    if (!(dt > 0.0)) throw BadInput("diffusion_step: dt must be > 0");
    return diffusion_step(g, square_root_rows(spec.a), spec.drift, dt, rng);
}

GroupElement sample_jump(const LevyMeasure& levy, RandomStream& rng) {
    const double rate = levy.total_rate();
    if (levy.atoms.empty() || !(rate > 0.0))
        throw EmptyLevyMeasure("sample_jump: no atoms to draw from");
    double u = draw_uniform(rng) * rate;
    const LevyAtom* chosen = &levy.atoms.back();
    double acc = 0.0;
    for (const auto& atom : levy.atoms) {
        acc += atom.weight;
        if (u < acc) {
            chosen = &atom;
            break;
        }
    }
    if (chosen->kind == LevyAtom::Kind::Fixed) return chosen->element();
    GroupElement h = haar_sample(rng);
    return compose(h, compose(torus_element(chosen->theta), inverse(h)));
}

namespace {

void run_path(const GeneratorSpec& spec, const PathConfig& config,
              const std::array<AlgebraElement, 3>& rows, bool has_diffusion, long long p,
              GroupElement& terminal, int& jump_count) {
    RandomStream rng = stream_for_path(config.master_seed, static_cast<std::uint64_t>(p));
    const double rate = spec.levy.total_rate();

    std::vector<double> jump_times;
    if (rate > 0.0) {
        double s = draw_exponential(rng, rate);
        while (s < config.t_end) {
            jump_times.push_back(s);
            s += draw_exponential(rng, rate);
        }
    }

    GroupElement g = GroupElement::identity();
    double t_cur = 0.0;
    long long grid_i = 1;
    std::size_t jn = 0;
    int njumps = 0;
    while (t_cur < config.t_end) {
        double t_reg = std::min(static_cast<double>(grid_i) * config.dt, config.t_end);
        double t_next = t_reg;
        bool jump_now = false;
        if (jn < jump_times.size() && jump_times[jn] <= t_reg) {
            t_next = jump_times[jn];
            jump_now = true;
        }
        double h = t_next - t_cur;
        if (h > 0.0) {
            if (has_diffusion) {
                g = diffusion_step(g, rows, spec.drift, h, rng);
            } else if (spec.drift.norm() > 0.0) {
                g = compose(g, exp_map(spec.drift * h));
            }
        }
        if (jump_now) {
            g = compose(g, sample_jump(spec.levy, rng));
            ++jn;
            ++njumps;
        }
        if (t_next >= t_reg) ++grid_i;
        t_cur = t_next;
    }
    terminal = g;
    jump_count = njumps;
}

} // namespace

SampleSet simulate_terminal(const GeneratorSpec& spec, const PathConfig& config, Exec exec) {
    if (!(config.t_end > 0.0)) throw BadInput("simulate_terminal: t_end must be > 0");
    if (!(config.dt > 0.0)) throw BadInput("simulate_terminal: dt must be > 0");
    if (config.dt > config.t_end) throw BadInput("simulate_terminal: dt must be <= t_end");
    if (config.n_paths < 1) throw BadInput("simulate_terminal: n_paths must be >= 1");

    const std::array<AlgebraElement, 3> rows = square_root_rows(spec.a);
    bool has_diffusion = false;
    for (const auto& r : rows)
        if (r.norm() > 0.0) has_diffusion = true;

    SampleSet out;
    out.config = config;
    out.terminals.resize(static_cast<std::size_t>(config.n_paths));
    out.jump_counts.resize(static_cast<std::size_t>(config.n_paths));

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long long p = 0; p < config.n_paths; ++p)
            run_path(spec, config, rows, has_diffusion, p, out.terminals[p], out.jump_counts[p]);
    } else {
        for (long long p = 0; p < config.n_paths; ++p)
            run_path(spec, config, rows, has_diffusion, p, out.terminals[p], out.jump_counts[p]);
    }
    return out;
}

std::string sample_set_to_csv(const SampleSet& samples) {
    std::string out = "path,w,x,y,z,theta,jumps\n";
    char buf[256];
    for (std::size_t p = 0; p < samples.terminals.size(); ++p) {
        const GroupElement& g = samples.terminals[p];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", p, g.w, g.x, g.y,
                      g.z, conjugacy_angle(g), samples.jump_counts[p]);
        out += buf;
    }
    return out;
}

SampleSet sample_set_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "path,w,x,y,z,theta,jumps")
        throw BadInput("sample CSV: bad header");
    SampleSet out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        long long p;
        double w, x, y, z, theta;
        int jumps;
        if (std::sscanf(line.c_str(), "%lld,%lg,%lg,%lg,%lg,%lg,%d", &p, &w, &x, &y, &z, &theta,
                        &jumps) != 7)
            throw BadInput("sample CSV: bad row");
        out.terminals.emplace_back(w, x, y, z);
        out.jump_counts.push_back(jumps);
    }
    if (out.terminals.empty()) throw BadInput("sample CSV: no rows");
    out.config.t_end = 0.0; // unknown: the file does not carry the run time
    out.config.n_paths = static_cast<long long>(out.terminals.size());
    return out;
}

AngleHistogram empirical_angle_hist(const SampleSet& samples, int bins) {
    if (bins < 10) throw BadInput("empirical_angle_hist: bins must be >= 10");
    if (samples.terminals.empty()) throw BadInput("empirical_angle_hist: empty sample set");
    AngleHistogram h;
    h.bins = bins;
    h.counts.assign(bins, 0);
    const double width = h.width();
    for (const auto& g : samples.terminals) {
        int b = static_cast<int>(conjugacy_angle(g) / width);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
    }
    h.density.resize(bins);
    const double n = static_cast<double>(samples.terminals.size());
    for (int b = 0; b < bins; ++b) h.density[b] = h.counts[b] / (n * width);
    return h;
}

double ks_critical_value_1pct(long long n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

namespace {

// cumulative Simpson antiderivative of f on [0, 1/2]; nodes+values out
struct CdfTable {
    std::vector<double> x, F;

    double eval(double t) const {
        if (t <= x.front()) return 0.0;
        if (t >= x.back()) return F.back();
        auto it = std::upper_bound(x.begin(), x.end(), t);
        std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
        double u = (t - x[i]) / (x[i + 1] - x[i]);
        return F[i] + u * (F[i + 1] - F[i]);
    }
};

template <class F>
CdfTable cumulative_simpson(F f, int n_nodes) {
    CdfTable tbl;
    tbl.x.resize(n_nodes);
    tbl.F.resize(n_nodes);
    std::vector<double> fv(n_nodes);
    const double h = 0.5 / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        tbl.x[i] = 0.5 * i / (n_nodes - 1);
        fv[i] = f(tbl.x[i]);
    }
    tbl.F[0] = 0.0;
    for (int i = 0; i + 2 < n_nodes; i += 2) {
        tbl.F[i + 1] = tbl.F[i] + h / 12.0 * (5.0 * fv[i] + 8.0 * fv[i + 1] - fv[i + 2]);
        tbl.F[i + 2] = tbl.F[i] + h / 3.0 * (fv[i] + 4.0 * fv[i + 1] + fv[i + 2]);
    }
    // normalize: the series density integrates to 1 up to the truncation tail
    double total = tbl.F.back();
    if (!(total > 0.0)) throw InconsistencyDetected("compare: theoretical CDF not increasing");
    for (double& v : tbl.F) v /= total;
    return tbl;
}

} // namespace

ComparisonReport compare(const GeneratorSpec& spec, double t, const SampleSet& samples, int k_max,
                         int bins) {
    if (!(t > 0.0)) throw BadInput("compare: t must be > 0");
    if (samples.config.t_end > 0.0 &&
        std::abs(samples.config.t_end - t) > 1e-9 * std::max(1.0, std::abs(t)))
        throw TimeMismatch("compare: samples were generated at t_end = " +
                           std::to_string(samples.config.t_end) + ", not t = " +
                           std::to_string(t));
    if (k_max <= 0) k_max = default_k_max(spec, t);
    TailEstimate tail = truncation_tail(spec, t, k_max);
    if (tail.bound > 1e-3)
        throw SmallTimeUnresolved("compare: series unresolved at k_max = " +
                                  std::to_string(k_max));
    CoefficientSet cs = coefficients(spec, t, k_max);
    auto angle_density = [&](double th) {
        return angle_weight(th) * class_marginal_density(cs, th);
    };

    const int nodes = 8193;
    CdfTable cdf = cumulative_simpson(angle_density, nodes);

    std::vector<double> ang(samples.terminals.size());
    for (std::size_t i = 0; i < ang.size(); ++i) ang[i] = conjugacy_angle(samples.terminals[i]);
    std::sort(ang.begin(), ang.end());
    const double n = static_cast<double>(ang.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < ang.size(); ++i) {
        double F = cdf.eval(ang[i]);
        ks = std::max(ks, std::max(std::abs((i + 1.0) / n - F), std::abs(F - i / n)));
    }

    AngleHistogram hist = empirical_angle_hist(samples, bins);
    const double width = hist.width();
    double l1 = 0.0, sup = 0.0;
    for (int b = 0; b < bins; ++b) {
        double theory = (cdf.eval((b + 1.0) * width) - cdf.eval(b * width)) / width;
        double diff = std::abs(hist.density[b] - theory);
        l1 += diff * width;
        sup = std::max(sup, diff);
    }

    ComparisonReport rep;
    rep.l1 = l1;
    rep.sup = sup;
    rep.ks = ks;
    rep.ks_critical_1pct = ks_critical_value_1pct(static_cast<long long>(ang.size()));
    rep.n_paths = static_cast<long long>(ang.size());
    rep.bins = bins;
    return rep;
}

std::string comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["l1"] = report.l1;
    j["sup"] = report.sup;
    j["ks"] = report.ks;
    j["ks_critical_1pct"] = report.ks_critical_1pct;
    j["n_paths"] = report.n_paths;
    j["bins"] = report.bins;
    return j.dump(2);
}

} // namespace levysu2
