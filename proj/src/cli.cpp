#include "latsamp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "latsamp/decoder.hpp"
#include "latsamp/errors.hpp"
#include "latsamp/profile_store.hpp"

namespace latsamp::cli {
namespace {

using nlohmann::json;

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// Closed forms of the reference threshold table, keyed by sampling lattice.
const std::map<std::string, ThresholdPair>& reference_thresholds() {
    static const std::map<std::string, ThresholdPair> table = {
        {"Z1", {2.0, 2.0}},
        {"Z2", {std::sqrt(2.0), 2.0}},
        {"A2", {std::pow(3.0, 0.75) / std::sqrt(2.0), std::pow(3.0, 0.25) * std::sqrt(2.0)}},
        {"Z3", {2.0 / std::sqrt(3.0), 2.0}},
        {"A3_dual", {std::cbrt(2.0), std::pow(2.0, 5.0 / 6.0)}},
        {"A3", {std::pow(2.0, 5.0 / 3.0) / std::sqrt(5.0), std::pow(2.0, 5.0 / 3.0) / std::sqrt(3.0)}},
        {"Z4", {1.0, 2.0}},
        {"D4", {std::pow(2.0, 0.25), std::pow(2.0, 0.75)}},
        {"A4", {std::pow(5.0, 0.375) / std::sqrt(2.0), std::pow(5.0, 0.375)}},
        {"Z8", {1.0 / std::sqrt(2.0), 2.0}},
        {"E8", {1.0, std::sqrt(2.0)}},
        {"A8", {std::pow(3.0, 11.0 / 8.0) / std::sqrt(20.0), std::pow(3.0, 7.0 / 8.0) / std::sqrt(2.0)}},
    };
    return table;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ProfileIoError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw ProfileIoError("write failed for " + path);
}

std::optional<std::filesystem::path> cache_from_env() {
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

VarianceCurve curve_for(const std::string& name, const RunConfig& config, const ProfileCache& cache) {
    const LatticeSpec sampling = get_lattice(name);
    const LatticeSpec freq = frequency_lattice(sampling);
    const std::size_t n = config.n_directions.value_or(default_directions(sampling.dim));
    const RadialProfile profile = cache.get(freq, n, config.seed, config.bisect_tol, config.threads);
    const auto grid = uniform_grid(config.rate_min, config.rate_max, config.rate_steps);
    return sweep(profile, grid, name, config.threads);
}

json curve_point(const VarianceCurve& c, std::size_t i) {
    return {{"rate", c.rates[i]}, {"sigma_e2", c.sigma_e2[i]}, {"sigma_lb2", c.sigma_lb2[i]},
            {"gap", c.gap[i]}, {"stderr", c.std_error[i]}};
}

}  // namespace

void validate(const RunConfig& config) {
    if (config.lattice_names.empty()) throw UsageError("no lattices given");
    for (const auto& n : config.lattice_names) get_lattice(n);
    if (config.n_directions && *config.n_directions == 0) throw UsageError("--n must be at least 1");
    if (!(config.bisect_tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(config.rate_min > 0.0) || !(config.rate_max > config.rate_min))
        throw UsageError("rate range must satisfy 0 < rate-min < rate-max");
    if (config.rate_steps < 2) throw UsageError("--steps must be at least 2");
}

std::size_t default_directions(int dim) { return dim <= 4 ? 1000000 : 100000; }

std::string format_list(OutputFormat format) {
    if (format == OutputFormat::Json) {
        json rows = json::array();
        for (const auto& name : catalog_names()) {
            const auto s = get_lattice(name);
            rows.push_back({{"lattice", name}, {"dim", s.dim}, {"family", std::string(family_name(s.family))},
                            {"packing_radius", s.packing_radius}, {"covering_radius", s.covering_radius},
                            {"cell_volume", s.cell_volume}});
        }
        return rows.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "lattice,dim,family,packing_radius,covering_radius,cell_volume\n";
    for (const auto& name : catalog_names()) {
        const auto s = get_lattice(name);
        os << name << ',' << s.dim << ',' << family_name(s.family) << ',' << format_double(s.packing_radius)
           << ',' << format_double(s.covering_radius) << ',' << format_double(s.cell_volume) << '\n';
    }
    return os.str();
}

std::string format_thresholds(const std::vector<std::string>& names, OutputFormat format) {
    json rows = json::array();
    std::ostringstream os;
    os << "lattice,dim,low,high\n";
    for (const auto& name : names) {
        const auto s = get_lattice(name);
        const auto t = thresholds(s);
        if (format == OutputFormat::Json)
            rows.push_back({{"lattice", name}, {"dim", s.dim}, {"low", t.low}, {"high", t.high}});
        else
            os << name << ',' << s.dim << ',' << fixed6(t.low) << ',' << fixed6(t.high) << '\n';
    }
    return format == OutputFormat::Json ? rows.dump(2) + "\n" : os.str();
}

std::vector<VarianceCurve> compute_curves(const RunConfig& config) {
    validate(config);
    const ProfileCache cache(config.cache_dir ? config.cache_dir : cache_from_env());
    std::vector<VarianceCurve> curves;
    for (const auto& name : config.lattice_names) curves.push_back(curve_for(name, config, cache));
    return curves;
}

std::string format_curves(const std::vector<VarianceCurve>& curves, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json out = json::array();
        for (const auto& c : curves) {
            json points = json::array();
            for (std::size_t i = 0; i < c.size(); ++i) points.push_back(curve_point(c, i));
            out.push_back({{"lattice", c.lattice_name}, {"dim", c.dim}, {"points", std::move(points)}});
        }
        return out.dump(2) + "\n";
    }
    std::string s = std::string(kCurveCsvHeader) + "\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.size(); ++i) {
            s += c.lattice_name + ',' + std::to_string(c.dim) + ',' + format_double(c.rates[i]) + ',' +
                 format_double(c.sigma_e2[i]) + ',' + format_double(c.sigma_lb2[i]) + ',' +
                 format_double(c.gap[i]) + ',' + format_double(c.std_error[i]) + '\n';
        }
    return s;
}

json crossover_report(const RunConfig& config) {
    if (config.lattice_names.size() != 2) throw UsageError("crossover needs exactly two lattices");
    const auto curves = compute_curves(config);
    const auto& a = curves[0];
    const auto& b = curves[1];
    json report = {{"lattice_a", a.lattice_name}, {"lattice_b", b.lattice_name}};
    try {
        const Crossover x = crossover(a, b);
        report["found"] = true;
        report["rate"] = x.rate;
        json bracket = json::array();
        for (std::size_t i : {x.below, x.above})
            bracket.push_back({{"rate", a.rates[i]},
                               {"sigma_e2_a", a.sigma_e2[i]}, {"sigma_e2_b", b.sigma_e2[i]},
                               {"gap_a", a.gap[i]}, {"gap_b", b.gap[i]},
                               {"stderr_a", a.std_error[i]}, {"stderr_b", b.std_error[i]}});
        report["bracket"] = std::move(bracket);
    } catch (const MultipleCrossoverError& e) {
        report["found"] = false;
        report["reason"] = "multiple-sign-changes";
        report["candidates"] = e.candidates;
    } catch (const NoCrossoverError&) {
        report["found"] = false;
        report["reason"] = "no-sign-change";
    }
    return report;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> checks;

    // Threshold table: 24 closed-form numbers at 1e-9 relative.
    {
        double worst = 0.0;
        for (const auto& name : table_lattice_names()) {
            const auto got = thresholds(get_lattice(name));
            const auto& want = reference_thresholds().at(name);
            worst = std::max({worst, std::abs(got.low / want.low - 1.0), std::abs(got.high / want.high - 1.0)});
        }
        checks.push_back({"threshold-table", worst <= 1e-9, "max rel err " + sci(worst), "<= 1e-9 over 24 values"});
    }

    // Decoders against the brute-force oracle.
    for (const auto& name : catalog_names()) {
        const auto spec = get_lattice(name);
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> box(-2.0, 2.0);
        double worst = 0.0;
        for (std::size_t q = 0; q < options.decoder_queries; ++q) {
            Vec x(spec.dim);
            for (int i = 0; i < spec.dim; ++i) x(i) = box(rng);
            worst = std::max(worst, std::abs(nearest_point(spec, x).dist2 - oracle_nearest(spec, x).dist2));
        }
        checks.push_back({"decoder/" + name, worst <= 1e-12,
                          "max |dist2 diff| " + sci(worst) + " over " + std::to_string(options.decoder_queries),
                          "<= 1e-12"});
    }

    // Cell-volume identity and bound dominance on each sampling lattice's dual.
    const auto grid = default_rate_grid();
    for (const auto& name : table_lattice_names()) {
        const auto sampling = get_lattice(name);
        const auto profile =
            build_profile(frequency_lattice(sampling), options.profile_directions, options.seed,
                          kDefaultBisectTolerance, options.threads);
        const auto vol = estimate_cell_volume(profile);
        const double z = vol.std_error > 0 ? std::abs(vol.volume - 1.0) / vol.std_error : 0.0;
        checks.push_back({"cell-volume/" + name,
                          vol.std_error > 0 ? z <= 4.0 : std::abs(vol.volume - 1.0) <= 1e-12,
                          "volume " + format_double(vol.volume) + " (" + fixed6(z) + " SE)", "1 within 4 SE"});

        const auto curve = sweep(profile, grid, name, options.threads);
        const auto th = thresholds(sampling);
        std::size_t violations = 0;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double se = curve.std_error[i];
            if (curve.gap[i] < -3.0 * se) ++violations;
            if (curve.rates[i] >= th.high && curve.sigma_e2[i] != 0.0) ++violations;
            if (curve.rates[i] <= th.low && std::abs(curve.gap[i]) > 3.0 * se) ++violations;
        }
        checks.push_back({"bound/" + name, violations == 0,
                          std::to_string(violations) + " violations over " + std::to_string(curve.size()) + " rates",
                          "0"});
    }
    return checks;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reconstruction-error variance of lattice sampling for isotropically bandlimited processes"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "csv";
    std::string cache_dir;
    std::size_t n_directions = 0;
    std::size_t verify_queries = 10000;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", config.output_path, "output file (default: stdout)");
    };
    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--lattices", config.lattice_names, "comma-separated lattice names")->delimiter(',');
        cmd->add_option("--n", n_directions, "directions per profile (default 1e6 for d<=4, 1e5 above)");
        cmd->add_option("--seed", config.seed, "RNG seed");
        cmd->add_option("--tol", config.bisect_tol, "bisection tolerance");
        cmd->add_option("--rate-min", config.rate_min, "lowest r/w0");
        cmd->add_option("--rate-max", config.rate_max, "highest r/w0");
        cmd->add_option("--steps", config.rate_steps, "number of grid rates");
        cmd->add_option("--cache-dir", cache_dir, std::string("profile cache (default: $") + kCacheEnvVar + ")");
        cmd->add_option("--threads", config.threads, "worker threads (0 = all cores)");
        add_format(cmd);
    };

    auto* list = app.add_subcommand("list", "catalog lattices and their geometry");
    add_format(list);
    auto* thr = app.add_subcommand("thresholds", "normalized threshold rates per lattice");
    thr->add_option("--lattices", config.lattice_names, "comma-separated lattice names")->delimiter(',');
    add_format(thr);
    auto* curve = app.add_subcommand("curve", "error variance and lower bound over a rate grid");
    add_run_options(curve);
    auto* cross = app.add_subcommand("crossover", "rate where two lattices' error variances cross");
    add_run_options(cross);
    auto* verify = app.add_subcommand("verify", "run the built-in oracle checks");
    verify->add_option("--n", n_directions, "directions per profile (default 1e5)");
    verify->add_option("--queries", verify_queries, "decoder queries per lattice");
    verify->add_option("--seed", config.seed, "RNG seed");
    verify->add_option("--threads", config.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    config.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (n_directions > 0) config.n_directions = n_directions;
    if (!cache_dir.empty()) config.cache_dir = cache_dir;

    try {
        if (list->parsed()) {
            write_output(format_list(config.output_format), config.output_path, out);
        } else if (thr->parsed()) {
            const auto names = config.lattice_names.empty() ? table_lattice_names() : config.lattice_names;
            write_output(format_thresholds(names, config.output_format), config.output_path, out);
        } else if (curve->parsed()) {
            write_output(format_curves(compute_curves(config), config.output_format), config.output_path, out);
        } else if (cross->parsed()) {
            write_output(crossover_report(config).dump(2) + "\n", config.output_path, out);
        } else if (verify->parsed()) {
            VerifyOptions opts;
            opts.decoder_queries = verify_queries;
            if (n_directions > 0) opts.profile_directions = n_directions;
            opts.seed = config.seed;
            opts.threads = config.threads;
            bool ok = true;
            for (const auto& c : run_verification(opts)) {
                out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.measured << " (expected "
                    << c.expected << ")\n";
                ok = ok && c.passed;
            }
            return ok ? kExitOk : kExitVerifyFailed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnknownLatticeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ProfileIoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace latsamp::cli
