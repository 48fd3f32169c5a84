#pragma once

#include "latsamp/lattice_catalog.hpp"
#include "latsamp/linalg.hpp"

namespace latsamp {

/// Relative tolerance under which two candidate distances count as a tie.
inline constexpr double kTieTolerance = 1e-9;

/// Relative rounding allowance in Voronoi membership; far below any
/// bisection tolerance in use.
inline constexpr double kMembershipSlack = 1e-13;

struct DecodeResult {
    Vec point;      // nearest lattice point, ambient coordinates
    IVec coeffs;    // integer coordinates w.r.t. the generator rows
    double dist2 = 0.0;
    bool tie = false;
};

/// Exact nearest lattice point, using the family's classical algorithm.
DecodeResult nearest_point(const LatticeSpec& spec, const Vec& x);

/// Exact minimization over all coefficient vectors in [-radius_bound, radius_bound]^d
/// (exhaustive box search with lower-bound pruning).
/// Throws BoxTooSmallError if the box cannot be shown to contain the global
/// minimizer (in particular when the minimizer sits on its edge).
DecodeResult brute_force_nearest(const LatticeSpec& spec, const Vec& x, int radius_bound);

/// Integer coefficients of a lattice point near x (Babai nearest plane in the
/// generator basis). Subtracting it leaves a query near the origin, which is
/// what brute_force_nearest expects.
IVec babai_shift(const LatticeSpec& spec, const Vec& x);

/// Brute-force nearest point for an arbitrary query: reduces x with
/// babai_shift, then searches boxes of bound 3, 6, 12 until the minimizer is
/// interior.
DecodeResult oracle_nearest(const LatticeSpec& spec, const Vec& x);

/// True iff the origin is a nearest lattice point of x (facet ties count as inside).
bool in_voronoi(const LatticeSpec& spec, const Vec& x);

namespace detail {

/// Native-coordinate image of an ambient vector.
Vec to_native(const LatticeSpec& spec, const Vec& x);

/// Nearest point of the native family lattice (dimension n = spec.dim) to y.
Vec decode_native(LatticeFamily family, const Vec& y);

/// Voronoi membership for a native-coordinate query.
bool inside_native(LatticeFamily family, const Vec& y);

}  // namespace detail
}  // namespace latsamp
