#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "latsamp/ball_geometry.hpp"

namespace latsamp {

/// Text format: one header line
///   # lattice=<name> dim=<d> n=<N> seed=<seed> tol=<tol>
/// followed by one boundary distance per line at 17 significant digits,
/// which round-trips doubles exactly.
void write_profile(const RadialProfile& profile, const std::filesystem::path& path);

/// Reads a profile written by write_profile. `lattice` must match the header
/// name and dimension; it becomes the profile's lattice.
RadialProfile read_profile(const std::filesystem::path& path, const LatticeSpec& lattice);

std::string profile_cache_key(const std::string& lattice_name, std::size_t n, std::uint64_t seed,
                              double tol);

/// Optional on-disk memo of profiles keyed by (lattice, N, seed, tol).
class ProfileCache {
public:
    explicit ProfileCache(std::optional<std::filesystem::path> dir = std::nullopt);

    RadialProfile get(const LatticeSpec& lattice, std::size_t n, std::uint64_t seed, double tol,
                      unsigned workers = 0) const;

    const std::optional<std::filesystem::path>& directory() const { return dir_; }

private:
    std::optional<std::filesystem::path> dir_;
};

/// Printf-style "%.17g".
std::string format_double(double value);

}  // namespace latsamp
