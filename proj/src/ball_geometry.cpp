#include "latsamp/ball_geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "latsamp/decoder.hpp"
#include "latsamp/errors.hpp"
#include "latsamp/parallel.hpp"

namespace latsamp {

double ball_volume(int d, double radius) {
    if (d < 1) throw std::invalid_argument("ball dimension must be >= 1");
    // pi^{d/2} / Gamma(d/2 + 1), with the Gamma value expanded into exact
    // factorials so that V_1 = 2 and V_2 = pi come out exactly.
    double unit = 1.0;
    if (d % 2 == 0) {
        for (int k = 1; k <= d / 2; ++k) unit *= std::numbers::pi / k;
    } else {
        unit = 2.0;  // V_1, then V_d = 2 pi / d * V_{d-2}
        for (int k = 3; k <= d; k += 2) unit *= 2.0 * std::numbers::pi / k;
    }
    return unit * std::pow(radius, d);
}

IsotropicSpectrum IsotropicSpectrum::normalized(int d, double bandwidth) {
    return {bandwidth, std::pow(2.0 * std::numbers::pi, d) / ball_volume(d, bandwidth)};
}

double IsotropicSpectrum::process_variance(int d) const {
    return amplitude * ball_volume(d, bandwidth) / std::pow(2.0 * std::numbers::pi, d);
}

Vec sample_direction(int d, StreamRng& rng) {
    std::normal_distribution<double> gauss;
    Vec u(d);
    double n2 = 0.0;
    do {
        for (int i = 0; i < d; ++i) u(i) = gauss(rng);
        n2 = u.squaredNorm();
    } while (n2 == 0.0);
    return u / std::sqrt(n2);
}

double radial_boundary(const LatticeSpec& spec, const Vec& u, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw std::invalid_argument("direction must be a unit vector");

    const Vec w = detail::to_native(spec, u);
    auto inside = [&](double t) { return detail::inside_native(spec.family, t * w); };

    const double lo0 = spec.packing_radius;
    const double hi0 = spec.covering_radius;
    if (!inside(lo0 * (1.0 - kBracketMargin)))
        throw BracketViolationError(spec.name + ": point inside the packing sphere decoded outside the cell");
    if (inside(hi0 * (1.0 + kBracketMargin)))
        throw BracketViolationError(spec.name + ": point outside the covering sphere decoded inside the cell");

    if (inside(hi0)) return hi0;
    if (!inside(lo0)) return lo0;

    double lo = lo0, hi = hi0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

RadialProfile build_profile(const LatticeSpec& spec, std::size_t n, std::uint64_t seed, double tol,
                            unsigned workers) {
    if (n == 0) throw std::invalid_argument("profile needs at least one direction");
    if (std::abs(spec.cell_volume - 1.0) > 1e-9)
        throw std::invalid_argument("profile lattice must have unit cell volume (" + spec.name + ")");

    RadialProfile profile;
    profile.lattice = spec;
    profile.seed = seed;
    profile.tolerance = tol;
    profile.t_values.resize(n);
    parallel_for(n, workers, [&](std::size_t i) {
        StreamRng rng(seed, i);
        profile.t_values[i] = radial_boundary(spec, sample_direction(spec.dim, rng), tol);
    });
    return profile;
}

CellVolumeEstimate estimate_cell_volume(const RadialProfile& profile) {
    const int d = profile.dim();
    const std::size_t n = profile.size();
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::pow(profile.t_values[i], d);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double unit = ball_volume(d, 1.0);
    const double sd = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
    return {unit * mean, unit * sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace latsamp
