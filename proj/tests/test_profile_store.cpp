#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "latsamp/errors.hpp"
#include "latsamp/profile_store.hpp"

using namespace latsamp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("latsamp_store_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("profiles round-trip exactly") {
    TempDir tmp;
    const auto lat = frequency_lattice(get_lattice("A3"));
    const auto p = build_profile(lat, 2000, 9);
    const auto file = tmp.path / "p.txt";
    write_profile(p, file);
    const auto q = read_profile(file, lat);
    CHECK(q.t_values == p.t_values);
    CHECK(q.seed == 9);
    CHECK(q.tolerance == p.tolerance);
    CHECK(q.lattice.name == lat.name);
}

TEST_CASE("reading checks the header against the lattice") {
    TempDir tmp;
    const auto lat = frequency_lattice(get_lattice("Z2"));
    const auto file = tmp.path / "p.txt";
    write_profile(build_profile(lat, 10, 1), file);
    CHECK_THROWS_AS(read_profile(file, frequency_lattice(get_lattice("A2"))), ProfileIoError);
    CHECK_THROWS_AS(read_profile(tmp.path / "missing.txt", lat), ProfileIoError);

    std::ofstream(tmp.path / "short.txt") << "# lattice=Z2 dim=2 n=3 seed=1 tol=1e-10\n0.5\n0.6\n";
    CHECK_THROWS_AS(read_profile(tmp.path / "short.txt", lat), ProfileIoError);
    std::ofstream(tmp.path / "junk.txt") << "0.5\n";
    CHECK_THROWS_AS(read_profile(tmp.path / "junk.txt", lat), ProfileIoError);
}

TEST_CASE("cache stores and reuses profiles") {
    TempDir tmp;
    const auto cache_dir = tmp.path / "cache";
    const ProfileCache cache(cache_dir);
    const auto lat = frequency_lattice(get_lattice("D4"));
    const auto a = cache.get(lat, 500, 3, 1e-10);
    const auto key = cache_dir / profile_cache_key(lat.name, 500, 3, 1e-10);
    REQUIRE(fs::exists(key));
    const auto b = cache.get(lat, 500, 3, 1e-10);
    CHECK(a.t_values == b.t_values);
    CHECK(cache.get(lat, 500, 4, 1e-10).t_values != a.t_values);

    const ProfileCache none;
    CHECK(none.get(lat, 500, 3, 1e-10).t_values == a.t_values);
    CHECK_FALSE(none.directory().has_value());
}

TEST_CASE("cache keys distinguish every parameter") {
    const auto k = profile_cache_key("A3", 100, 1, 1e-10);
    CHECK(k != profile_cache_key("A3_dual", 100, 1, 1e-10));
    CHECK(k != profile_cache_key("A3", 101, 1, 1e-10));
    CHECK(k != profile_cache_key("A3", 100, 2, 1e-10));
    CHECK(k != profile_cache_key("A3", 100, 1, 1e-9));
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 2.05, 0.0}) CHECK(std::stod(format_double(v)) == v);
}
