#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "latsamp/variance_engine.hpp"

namespace latsamp::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitVerifyFailed = 2,
    kExitIo = 3,
};

enum class OutputFormat { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr const char* kCacheEnvVar = "LATTICE_SAMPLER_CACHE";
inline constexpr const char* kCurveCsvHeader = "lattice,dim,rate,sigma_e2,sigma_lb2,gap,stderr";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> lattice_names;
    std::optional<std::size_t> n_directions;  // unset: per-dimension default
    std::uint64_t seed = kDefaultSeed;
    double bisect_tol = kDefaultBisectTolerance;
    double rate_min = 0.5;
    double rate_max = 2.05;
    std::size_t rate_steps = 601;
    std::string output_path;  // empty: stdout
    OutputFormat output_format = OutputFormat::Csv;
    std::optional<std::filesystem::path> cache_dir;
    unsigned threads = 0;
};

/// Throws UsageError or UnknownLatticeError.
void validate(const RunConfig& config);

/// 10^6 directions up to d = 4, 10^5 above.
std::size_t default_directions(int dim);

std::string format_list(OutputFormat format);
std::string format_thresholds(const std::vector<std::string>& names, OutputFormat format);

/// One curve per configured sampling lattice, computed on its unit-volume
/// dual. Curves carry the sampling lattice's name.
std::vector<VarianceCurve> compute_curves(const RunConfig& config);
std::string format_curves(const std::vector<VarianceCurve>& curves, OutputFormat format);

/// Needs exactly two lattice names. A missing or ambiguous crossover is a
/// result, not an error.
nlohmann::json crossover_report(const RunConfig& config);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string measured;
    std::string expected;
};

struct VerifyOptions {
    std::size_t decoder_queries = 10000;
    std::size_t profile_directions = 100000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latsamp::cli
