#include "latsamp/profile_store.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "latsamp/errors.hpp"

namespace latsamp {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_profile(const RadialProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ProfileIoError("cannot open " + path.string() + " for writing");
    out << "# lattice=" << profile.lattice.name << " dim=" << profile.dim() << " n=" << profile.size()
        << " seed=" << profile.seed << " tol=" << format_double(profile.tolerance) << '\n';
    for (double t : profile.t_values) out << format_double(t) << '\n';
    if (!out) throw ProfileIoError("write failed for " + path.string());
}

RadialProfile read_profile(const std::filesystem::path& path, const LatticeSpec& lattice) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProfileIoError("cannot open " + path.string());

    std::string header;
    std::getline(in, header);
    if (header.rfind("# ", 0) != 0) throw ProfileIoError(path.string() + ": missing header line");
    std::map<std::string, std::string> fields;
    std::istringstream hs(header.substr(2));
    for (std::string tok; hs >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ProfileIoError(path.string() + ": malformed header field " + tok);
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"lattice", "dim", "n", "seed", "tol"})
        if (!fields.count(key)) throw ProfileIoError(path.string() + ": header lacks " + key);
    if (fields["lattice"] != lattice.name || std::stoi(fields["dim"]) != lattice.dim)
        throw ProfileIoError(path.string() + ": profile belongs to " + fields["lattice"]);

    RadialProfile p;
    p.lattice = lattice;
    p.seed = std::stoull(fields["seed"]);
    p.tolerance = std::strtod(fields["tol"].c_str(), nullptr);
    const std::size_t n = std::stoull(fields["n"]);
    p.t_values.reserve(n);
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        if (end == line.c_str()) throw ProfileIoError(path.string() + ": bad value '" + line + "'");
        p.t_values.push_back(t);
    }
    if (p.t_values.size() != n)
        throw ProfileIoError(path.string() + ": expected " + std::to_string(n) + " values, found " +
                             std::to_string(p.t_values.size()));
    return p;
}

std::string profile_cache_key(const std::string& lattice_name, std::size_t n, std::uint64_t seed,
                              double tol) {
    char tol_buf[32];
    std::snprintf(tol_buf, sizeof tol_buf, "%.6g", tol);
    return "profile_" + lattice_name + "_n" + std::to_string(n) + "_seed" + std::to_string(seed) +
           "_tol" + tol_buf + ".txt";
}

ProfileCache::ProfileCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

RadialProfile ProfileCache::get(const LatticeSpec& lattice, std::size_t n, std::uint64_t seed,
                                double tol, unsigned workers) const {
    if (!dir_) return build_profile(lattice, n, seed, tol, workers);

    const auto path = *dir_ / profile_cache_key(lattice.name, n, seed, tol);
    if (std::filesystem::exists(path)) {
        RadialProfile cached = read_profile(path, lattice);
        if (cached.tolerance == tol && cached.seed == seed) return cached;
    }
    RadialProfile fresh = build_profile(lattice, n, seed, tol, workers);
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) throw ProfileIoError("cannot create cache directory " + dir_->string() + ": " + ec.message());
    write_profile(fresh, path);
    return fresh;
}

}  // namespace latsamp
