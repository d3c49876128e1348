#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "levysu2/errors.hpp"
#include "levysu2/fourier.hpp"
#include "levysu2/generator.hpp"
#include "levysu2/simulate.hpp"

namespace {

using namespace levysu2;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitSmallTime = 3;
constexpr int kExitBadSimParams = 4;
constexpr int kExitComparisonFailed = 5;
constexpr int kExitHypothesisH = 6;

GeneratorSpec load_or_die(const std::string& path, int& rc) {
    try {
        rc = kExitOk;
        return load_spec_file(path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        rc = kExitBadInput;
        return {};
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot open " + path + " for writing");
    out << text;
}

int cmd_check(const std::string& config_path) {
    int rc;
    GeneratorSpec spec = load_or_die(config_path, rc);
    if (rc != kExitOk) return rc;
    nlohmann::ordered_json j;
    j["hypothesis_H"] = hypothesis_H(spec);
    j["inverse_invariant"] = is_inverse_invariant(spec);
    j["conjugate_invariant"] = is_conjugate_invariant(spec);
    j["levy_mass"] = spec.levy.total_rate();
    nlohmann::ordered_json notes = nlohmann::ordered_json::array();
    if (spec.a.isZero(0.0)) notes.push_back("no diffusion part");
    if (!hypothesis_H(spec)) notes.push_back("diffusion does not bracket-generate the algebra");
    if (auto c = isotropic_constant(spec.a); c && *c > 0.0)
        notes.push_back("isotropic diffusion: certified spectral bounds available");
    j["notes"] = notes;
    std::printf("%s\n", j.dump(2).c_str());
    return kExitOk;
}

int cmd_density(const std::string& config_path, double t, int k_max, int grid,
                const std::string& out_path, bool force_general) {
    int rc;
    GeneratorSpec spec = load_or_die(config_path, rc);
    if (rc != kExitOk) return rc;
    try {
        DensityProfile prof = density_profile(spec, t, k_max, grid, force_general);
        write_file(out_path, profile_to_csv(prof));
        std::fprintf(stderr, "k_max=%d tail=%.17g certified=%s\n", prof.k_max,
                     prof.tail.empty() ? 0.0 : prof.tail.front(),
                     prof.tail_certified ? "true" : "false");
        std::printf("%s\n", report_json(spec, t, prof.k_max).c_str());
        return kExitOk;
    } catch (const SmallTimeUnresolved& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSmallTime;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
}

int cmd_simulate(const std::string& config_path, double t, long long paths, double dt,
                 std::uint64_t seed, const std::string& out_path) {
    int rc;
    GeneratorSpec spec = load_or_die(config_path, rc);
    if (rc != kExitOk) return rc;
    if (dt == 0.0) dt = default_dt(spec);
    PathConfig config{t, dt, paths, seed};
    if (!(t > 0.0) || !(dt > 0.0) || dt > t || paths < 1) {
        std::fprintf(stderr, "error: invalid simulation parameters (t=%g dt=%g paths=%lld)\n", t,
                     dt, paths);
        return kExitBadSimParams;
    }
    if (auto warn = path_config_warning(spec, config))
        std::fprintf(stderr, "warning: %s\n", warn->c_str());
    try {
        SampleSet samples = simulate_terminal(spec, config);
        write_file(out_path, sample_set_to_csv(samples));
        std::fprintf(stderr, "paths=%lld mean_jumps=%.17g\n",
                     static_cast<long long>(samples.terminals.size()), samples.mean_jumps());
        return kExitOk;
    } catch (const BadInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadSimParams;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
}

int cmd_compare(const std::string& config_path, double t, const std::string& samples_path,
                int k_max, int bins) {
    int rc;
    GeneratorSpec spec = load_or_die(config_path, rc);
    if (rc != kExitOk) return rc;
    try {
        SampleSet samples = sample_set_from_csv(read_file(samples_path));
        ComparisonReport rep = compare(spec, t, samples, k_max, bins);
        std::printf("%s\n", comparison_to_json(rep).c_str());
        return rep.ks < rep.ks_critical_1pct ? kExitOk : kExitComparisonFailed;
    } catch (const SmallTimeUnresolved& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSmallTime;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
}

int cmd_gap(const std::string& config_path, int k_max) {
    int rc;
    GeneratorSpec spec = load_or_die(config_path, rc);
    if (rc != kExitOk) return rc;
    try {
        if (!hypothesis_H(spec)) {
            std::fprintf(stderr,
                         "error: the diffusion vectors do not bracket-generate the algebra; "
                         "no certified gap\n");
            return kExitHypothesisH;
        }
        GapReport rep = spectral_gap(spec, k_max > 0 ? k_max : 16);
        nlohmann::ordered_json j;
        j["gap"] = rep.gap;
        j["attained_k"] = rep.attained_k;
        j["certified"] = rep.certified;
        j["per_k_rates"] = rep.per_k_rates;
        std::printf("%s\n", j.dump(2).c_str());
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character-series densities, spectral gaps, and Monte Carlo simulation of "
                 "finite-activity Levy processes on SU(2)"};
    app.require_subcommand(1);

    std::string config_path, out_path, samples_path;
    double t = 1.0, dt = 0.0;
    int k_max = 0, grid = 512, bins = 64;
    long long paths = 10000;
    std::uint64_t seed = 0;
    bool force_general = false;

    auto* check = app.add_subcommand("check", "Validate a spec and report invariance properties");
    check->add_option("--config", config_path, "generator spec JSON")->required();

    auto* density = app.add_subcommand("density", "Angle-density profile CSV + summary report");
    density->add_option("--config", config_path, "generator spec JSON")->required();
    density->add_option("--t", t, "time > 0")->required();
    density->add_option("--kmax", k_max, "series cutoff (0 = automatic)");
    density->add_option("--grid", grid, "theta grid points")->default_val(512);
    density->add_option("--out", out_path, "output CSV path")->required();
    density->add_flag("--force-general", force_general,
                      "use the matrix-coefficient marginal even when the character series applies");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo terminal samples CSV");
    simulate->add_option("--config", config_path, "generator spec JSON")->required();
    simulate->add_option("--t", t, "time horizon > 0")->required();
    simulate->add_option("--paths", paths, "number of paths")->default_val(10000);
    simulate->add_option("--dt", dt, "step size (0 = automatic)");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--out", out_path, "output CSV path")->required();

    auto* cmp = app.add_subcommand("compare", "Empirical angle law vs. the series density");
    cmp->add_option("--config", config_path, "generator spec JSON")->required();
    cmp->add_option("--t", t, "time the samples were generated at")->required();
    cmp->add_option("samples", samples_path, "sample CSV from the simulate subcommand")
        ->required();
    cmp->add_option("--kmax", k_max, "series cutoff (0 = automatic)");
    cmp->add_option("--bins", bins, "histogram bins")->default_val(64);

    auto* gap = app.add_subcommand("gap", "Exponential convergence rate to the uniform law");
    gap->add_option("--config", config_path, "generator spec JSON")->required();
    gap->add_option("--kmax", k_max, "levels to scan (0 = 16)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    if (app.got_subcommand(check)) return cmd_check(config_path);
    if (app.got_subcommand(density))
        return cmd_density(config_path, t, k_max, grid, out_path, force_general);
    if (app.got_subcommand(simulate))
        return cmd_simulate(config_path, t, paths, dt, seed, out_path);
    if (app.got_subcommand(cmp)) return cmd_compare(config_path, t, samples_path, k_max, bins);
    if (app.got_subcommand(gap)) return cmd_gap(config_path, k_max);
    return kExitBadInput;
}
