#include "latsamp/lattice_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "latsamp/errors.hpp"

namespace latsamp {
namespace {

struct NativeConstants {
    double cell_volume;
    double packing_radius;
    double covering_radius;
};

// Constants of the family member in its native coordinates (A_n and D_n with
// minimal norm sqrt(2), A_n* and D_n* as their exact duals).
NativeConstants native_constants(LatticeFamily family, int n) {
    const double nd = n;
    switch (family) {
        case LatticeFamily::Integer:
            return {1.0, 0.5, std::sqrt(nd) / 2.0};
        case LatticeFamily::RootA: {
            const double a = std::floor((nd + 1.0) / 2.0);
            return {std::sqrt(nd + 1.0), std::sqrt(2.0) / 2.0,
                    std::sqrt(a * (nd + 1.0 - a) / (nd + 1.0))};
        }
        case LatticeFamily::RootAStar:
            return {1.0 / std::sqrt(nd + 1.0), 0.5 * std::sqrt(nd / (nd + 1.0)),
                    std::sqrt(nd * (nd + 2.0) / (12.0 * (nd + 1.0)))};
        case LatticeFamily::RootD:
            return {2.0, std::sqrt(2.0) / 2.0, std::max(1.0, std::sqrt(nd) / 2.0)};
        case LatticeFamily::RootDStar:
            // Only D4* is catalogued; it is D4 scaled by 1/sqrt(2).
            if (n != 4) throw LatticeError("D_n* constants are only tabulated for n = 4");
            return {0.5, 0.5, 1.0 / std::sqrt(2.0)};
        case LatticeFamily::E8:
            return {1.0, std::sqrt(2.0) / 2.0, 1.0};
    }
    throw LatticeError("unhandled lattice family");
}

LatticeFamily dual_family(LatticeFamily family) {
    switch (family) {
        case LatticeFamily::RootA: return LatticeFamily::RootAStar;
        case LatticeFamily::RootAStar: return LatticeFamily::RootA;
        case LatticeFamily::RootD: return LatticeFamily::RootDStar;
        case LatticeFamily::RootDStar: return LatticeFamily::RootD;
        default: return family;
    }
}

// Orthonormal basis of the zero-sum hyperplane in R^{n+1}, as columns.
Mat helmert_basis(int n) {
    Mat q = Mat::Zero(n + 1, n);
    for (int k = 1; k <= n; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int j = 0; j < k; ++j) q(j, k - 1) = 1.0 / norm;
        q(k, k - 1) = -static_cast<double>(k) / norm;
    }
    return q;
}

std::uint32_t parity_class(const IVec& c) {
    std::uint32_t key = 0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
        if (c(i) % 2 != 0) key |= (1u << i);
    return key;
}

// Voronoi's criterion: v is facet-defining iff +-v are the only shortest
// vectors of the coset v + 2L. Every coset minimum has norm at most 2R, so
// enumerating that ball sees all of them.
std::vector<Vec> compute_relevant_vectors(const Mat& generator, double covering_radius) {
    const auto coeffs = enumerate_short_vectors(generator, 2.0 * covering_radius * (1.0 + 1e-9));

    struct ClassInfo {
        double min_norm2 = INFINITY;
        std::vector<Vec> members;
    };
    std::map<std::uint32_t, ClassInfo> classes;
    for (const auto& c : coeffs) {
        const std::uint32_t key = parity_class(c);
        if (key == 0) continue;
        const Vec v = (c.cast<double>().transpose() * generator).transpose();
        const double n2 = v.squaredNorm();
        auto& info = classes[key];
        if (n2 < info.min_norm2 * (1.0 - 1e-9)) {
            info.min_norm2 = n2;
            info.members.assign(1, v);
        } else if (n2 <= info.min_norm2 * (1.0 + 1e-9)) {
            info.members.push_back(v);
        }
    }

    std::vector<Vec> relevant;
    for (auto& [key, info] : classes)
        if (info.members.size() == 2)
            relevant.insert(relevant.end(), info.members.begin(), info.members.end());
    return relevant;
}

LatticeSpec make_spec(std::string name, LatticeFamily family, Mat generator, Mat embedding,
                      double native_scale) {
    LatticeSpec spec;
    spec.name = std::move(name);
    spec.dim = static_cast<int>(generator.rows());
    spec.family = family;
    spec.generator = std::move(generator);
    spec.embedding = std::move(embedding);
    spec.native_scale = native_scale;
    spec.identity_embedding = spec.embedding.rows() == spec.embedding.cols() &&
                              spec.embedding.isIdentity(0.0);

    const auto k = native_constants(family, spec.dim);
    spec.cell_volume = k.cell_volume / std::pow(native_scale, spec.dim);
    spec.packing_radius = k.packing_radius / native_scale;
    spec.covering_radius = k.covering_radius / native_scale;
    spec.relevant_vectors = compute_relevant_vectors(spec.generator, spec.covering_radius);
    return spec;
}

LatticeSpec integer_lattice(int n) {
    return make_spec("Z" + std::to_string(n), LatticeFamily::Integer, Mat::Identity(n, n),
                     Mat::Identity(n, n), 1.0);
}

// A_n with basis e_0 - e_i, scaled so that the minimal norm is sqrt(2)/native_scale.
LatticeSpec root_a(int n, double native_scale) {
    Mat basis = Mat::Zero(n, n + 1);
    for (int i = 0; i < n; ++i) {
        basis(i, 0) = 1.0;
        basis(i, i + 1) = -1.0;
    }
    Mat embedding = helmert_basis(n);
    Mat generator = basis * embedding / native_scale;
    return make_spec("A" + std::to_string(n), LatticeFamily::RootA, std::move(generator),
                     std::move(embedding), native_scale);
}

LatticeSpec root_d4() {
    Mat g(4, 4);
    g << 1, 1, 0, 0,
         1, -1, 0, 0,
         0, 1, -1, 0,
         0, 0, 1, -1;
    return make_spec("D4", LatticeFamily::RootD, g, Mat::Identity(4, 4), 1.0);
}

LatticeSpec lattice_e8() {
    Mat g = Mat::Zero(8, 8);
    g(0, 0) = 2.0;
    for (int i = 1; i < 7; ++i) {
        g(i, i - 1) = -1.0;
        g(i, i) = 1.0;
    }
    g.row(7).setConstant(0.5);
    return make_spec("E8", LatticeFamily::E8, g, Mat::Identity(8, 8), 1.0);
}

LatticeSpec build_catalog_entry(std::string_view name) {
    if (name == "Z1") return integer_lattice(1);
    if (name == "Z2") return integer_lattice(2);
    if (name == "Z3") return integer_lattice(3);
    if (name == "Z4") return integer_lattice(4);
    if (name == "Z8") return integer_lattice(8);
    if (name == "A2") return root_a(2, std::sqrt(2.0));
    if (name == "A3") return root_a(3, 1.0);
    if (name == "A4") return root_a(4, 1.0);
    if (name == "A8") return root_a(8, 1.0);
    if (name == "D4") return root_d4();
    if (name == "E8") return lattice_e8();
    if (name.ends_with("_dual")) {
        const auto base = name.substr(0, name.size() - 5);
        if (base == "A2" || base == "A3" || base == "A4" || base == "A8" || base == "D4")
            return dual_lattice(build_catalog_entry(base));
    }
    throw UnknownLatticeError(std::string(name));
}

}  // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "Z1", "Z2", "A2", "A2_dual", "Z3", "A3", "A3_dual", "Z4",
        "D4", "D4_dual", "A4", "A4_dual", "Z8", "E8", "A8", "A8_dual"};
    return names;
}

const std::vector<std::string>& table_lattice_names() {
    static const std::vector<std::string> names = {
        "Z1", "Z2", "A2", "Z3", "A3_dual", "A3", "Z4", "D4", "A4", "Z8", "E8", "A8"};
    return names;
}

LatticeSpec get_lattice(std::string_view name) {
    // Construction enumerates short vectors, so finished specs are memoized.
    static const std::map<std::string, LatticeSpec, std::less<>> catalog = [] {
        std::map<std::string, LatticeSpec, std::less<>> m;
        for (const auto& n : catalog_names()) m.emplace(n, build_catalog_entry(n));
        return m;
    }();
    const auto it = catalog.find(name);
    if (it == catalog.end()) throw UnknownLatticeError(std::string(name));
    return it->second;
}

std::string dual_name(std::string_view name) {
    if (name.ends_with("_dual")) return std::string(name.substr(0, name.size() - 5));
    if (name.starts_with("Z") || name == "E8") return std::string(name);
    return std::string(name) + "_dual";
}

LatticeSpec dual_lattice(const LatticeSpec& spec) {
    Eigen::FullPivLU<Mat> lu(spec.generator);
    if (!lu.isInvertible()) throw SingularGeneratorError("generator of " + spec.name + " is singular");
    Mat dual_generator = lu.inverse().transpose();
    return make_spec(dual_name(spec.name), dual_family(spec.family), std::move(dual_generator),
                     spec.embedding, 1.0 / spec.native_scale);
}

LatticeSpec scaled(const LatticeSpec& spec, double factor) {
    LatticeSpec out = spec;
    out.generator *= factor;
    out.cell_volume *= std::pow(factor, spec.dim);
    out.packing_radius *= factor;
    out.covering_radius *= factor;
    out.native_scale /= factor;
    for (auto& v : out.relevant_vectors) v *= factor;
    return out;
}

LatticeSpec with_unit_volume(const LatticeSpec& spec) {
    LatticeSpec out = scaled(spec, std::pow(spec.cell_volume, -1.0 / spec.dim));
    out.cell_volume = 1.0;
    return out;
}

LatticeSpec rotated(const LatticeSpec& spec, const Mat& orthogonal) {
    LatticeSpec out = spec;
    out.generator = spec.generator * orthogonal.transpose();
    out.embedding = spec.embedding * orthogonal.transpose();
    out.identity_embedding = false;
    for (auto& v : out.relevant_vectors) v = orthogonal * v;
    return out;
}

LatticeSpec frequency_lattice(const LatticeSpec& sampling) {
    return with_unit_volume(dual_lattice(sampling));
}

ThresholdPair normalized_thresholds(const LatticeSpec& spec) {
    const LatticeSpec dual = dual_lattice(spec);
    const double edge = std::pow(dual.cell_volume, 1.0 / dual.dim);
    return {edge / dual.covering_radius, edge / dual.packing_radius};
}

std::vector<IVec> enumerate_short_vectors(const Mat& generator, double radius) {
    const int d = static_cast<int>(generator.rows());
    const Mat gram = generator * generator.transpose();
    Eigen::LLT<Mat> llt(gram);
    if (llt.info() != Eigen::Success) throw SingularGeneratorError("Gram matrix is not positive definite");
    const Mat upper = llt.matrixU();

    // ||c G||^2 = sum_i q_i (c_i + sum_{j>i} mu_ij c_j)^2
    Vec q(d);
    Mat mu = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        q(i) = upper(i, i) * upper(i, i);
        for (int j = i + 1; j < d; ++j) mu(i, j) = upper(i, j) / upper(i, i);
    }

    const double bound = radius * radius * (1.0 + 1e-12) + 1e-15;
    std::vector<IVec> out;
    IVec c = IVec::Zero(d);
    Vec remaining(d + 1);
    remaining(d) = bound;

    // Depth-first over levels d-1 .. 0.
    auto recurse = [&](auto&& self, int level) -> void {
        double center = 0.0;
        for (int j = level + 1; j < d; ++j) center -= mu(level, j) * static_cast<double>(c(j));
        const double budget = remaining(level + 1);
        const double half = std::sqrt(std::max(0.0, budget / q(level)));
        const long lo = static_cast<long>(std::ceil(center - half));
        const long hi = static_cast<long>(std::floor(center + half));
        for (long v = lo; v <= hi; ++v) {
            const double off = static_cast<double>(v) - center;
            const double used = q(level) * off * off;
            if (used > budget) continue;
            c(level) = v;
            remaining(level) = budget - used;
            if (level == 0)
                out.push_back(c);
            else
                self(self, level - 1);
        }
        c(level) = 0;
    };
    recurse(recurse, d - 1);
    return out;
}

std::string_view family_name(LatticeFamily family) {
    switch (family) {
        case LatticeFamily::Integer: return "integer";
        case LatticeFamily::RootA: return "A_n";
        case LatticeFamily::RootAStar: return "A_n*";
        case LatticeFamily::RootD: return "D_n";
        case LatticeFamily::RootDStar: return "D_n*";
        case LatticeFamily::E8: return "E8";
    }
    return "?";
}

}  // namespace latsamp
