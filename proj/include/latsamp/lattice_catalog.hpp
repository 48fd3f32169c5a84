#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "latsamp/linalg.hpp"

namespace latsamp {

/// Root-system family a lattice belongs to. Selects the nearest-point
/// algorithm and the closed-form packing/covering constants.
enum class LatticeFamily {
    Integer,    // Z^n
    RootA,      // A_n, zero-sum sublattice of Z^{n+1}
    RootAStar,  // A_n*, projection of Z^{n+1} onto the zero-sum hyperplane
    RootD,      // D_n, even-sum sublattice of Z^n
    RootDStar,  // D_n* = Z^n u (Z^n + 1/2)
    E8,         // D_8 u (D_8 + 1/2)
};

/// A catalog lattice in ambient coordinates R^dim.
///
/// Points of the lattice are the integer combinations of the rows of
/// `generator`. Decoding runs in the family's native coordinates; an ambient
/// point x corresponds to the native point `native_scale * embedding * x`.
/// `embedding` has orthonormal columns, so the map is a similarity.
struct LatticeSpec {
    std::string name;
    int dim = 0;
    Mat generator;
    double cell_volume = 0.0;
    double packing_radius = 0.0;
    double covering_radius = 0.0;

    LatticeFamily family = LatticeFamily::Integer;
    Mat embedding;
    double native_scale = 1.0;
    bool identity_embedding = true;

    /// Facet normals of the Voronoi cell: lattice vectors v for which the
    /// bisector of 0 and v carries a facet. Ambient coordinates.
    std::vector<Vec> relevant_vectors;

    int native_dim() const { return static_cast<int>(embedding.rows()); }
};

/// The two normalized rates r/w0 between which the error variance departs
/// from the universal lower bound.
struct ThresholdPair {
    double low = 0.0;   // (vol)^{1/d} / covering radius of the dual
    double high = 0.0;  // (vol)^{1/d} / packing radius of the dual
};

/// Every name get_lattice accepts.
const std::vector<std::string>& catalog_names();

/// The twelve sampling lattices of the reference threshold table, in table order.
const std::vector<std::string>& table_lattice_names();

LatticeSpec get_lattice(std::string_view name);

/// Unit dual: generator inverse-transpose, no 2*pi factor.
LatticeSpec dual_lattice(const LatticeSpec& spec);

/// Name of the dual partner ("A3" <-> "A3_dual", self-dual names unchanged).
std::string dual_name(std::string_view name);

/// The lattice scaled by `factor` (all lengths multiplied).
LatticeSpec scaled(const LatticeSpec& spec, double factor);

/// The lattice rescaled to unit cell volume.
LatticeSpec with_unit_volume(const LatticeSpec& spec);

/// The lattice rotated by an orthogonal matrix: every point p maps to Q p.
LatticeSpec rotated(const LatticeSpec& spec, const Mat& orthogonal);

/// Frequency-domain lattice used to evaluate sampling on `sampling`:
/// its dual rescaled to unit cell volume.
LatticeSpec frequency_lattice(const LatticeSpec& sampling);

ThresholdPair normalized_thresholds(const LatticeSpec& spec);

/// Coefficient vectors c with ||c * generator|| <= radius (Fincke-Pohst).
std::vector<IVec> enumerate_short_vectors(const Mat& generator, double radius);

std::string_view family_name(LatticeFamily family);

}  // namespace latsamp
