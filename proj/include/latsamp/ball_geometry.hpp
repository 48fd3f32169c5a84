#pragma once

#include <cstdint>
#include <vector>

#include "latsamp/lattice_catalog.hpp"
#include "latsamp/linalg.hpp"
#include "latsamp/rng.hpp"

namespace latsamp {

/// Default absolute bisection tolerance at unit cell volume.
inline constexpr double kDefaultBisectTolerance = 1e-10;

/// Relative margin used when checking membership just inside the packing
/// sphere and just outside the covering sphere.
inline constexpr double kBracketMargin = 1e-9;

/// Volume of the d-dimensional ball of the given radius.
double ball_volume(int d, double radius);

/// Flat power spectrum S0 on the ball of radius `bandwidth`, zero outside.
struct IsotropicSpectrum {
    double bandwidth = 1.0;
    double amplitude = 1.0;

    /// Spectrum whose amplitude makes the process variance 1 in dimension d.
    static IsotropicSpectrum normalized(int d, double bandwidth);

    /// S0 vol(ball) / (2 pi)^d
    double process_variance(int d) const;
};

/// Uniform direction on the unit sphere (normalized Gaussian vector).
Vec sample_direction(int d, StreamRng& rng);

/// Distance from the origin to the Voronoi boundary along unit direction u,
/// found by bisection on in_voronoi inside [packing, covering] radius.
double radial_boundary(const LatticeSpec& spec, const Vec& u, double tol);

/// Boundary distances t(u_i) of a unit-volume Voronoi cell over N random
/// directions. Immutable once built.
struct RadialProfile {
    LatticeSpec lattice;
    std::vector<double> t_values;
    std::uint64_t seed = 0;
    double tolerance = kDefaultBisectTolerance;

    int dim() const { return lattice.dim; }
    std::size_t size() const { return t_values.size(); }
};

/// Builds the profile with direction i drawn from stream (seed, i). `workers`
/// = 0 uses every hardware thread; the result is identical for any value.
RadialProfile build_profile(const LatticeSpec& spec, std::size_t n, std::uint64_t seed,
                            double tol = kDefaultBisectTolerance, unsigned workers = 0);

/// Sample mean of t^d times the unit-ball volume, with its standard error.
/// Estimates the cell volume.
struct CellVolumeEstimate {
    double volume = 0.0;
    double std_error = 0.0;
};
CellVolumeEstimate estimate_cell_volume(const RadialProfile& profile);

}  // namespace latsamp
