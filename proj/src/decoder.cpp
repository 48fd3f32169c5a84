#include "latsamp/decoder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "latsamp/errors.hpp"

namespace latsamp {
namespace {

Vec round_integer(const Vec& y) {
    Vec f(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) f(i) = std::round(y(i));
    return f;
}

long coordinate_sum(const Vec& f) {
    long s = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i) s += static_cast<long>(f(i));
    return s;
}

// Round, then if the coordinate sum is odd re-round the worst coordinate the
// other way.
Vec decode_dn(const Vec& y) {
    Vec f = round_integer(y);
    if (coordinate_sum(f) % 2 == 0) return f;
    Eigen::Index worst = 0;
    double worst_err = -1.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double err = std::abs(y(i) - f(i));
        if (err > worst_err) {
            worst_err = err;
            worst = i;
        }
    }
    f(worst) += (y(worst) >= f(worst)) ? 1.0 : -1.0;
    return f;
}

// y must lie in the zero-sum hyperplane. Rounding leaves a deficiency
// delta = sum(f); it is removed by moving the |delta| coordinates whose
// rounding error points the right way the farthest.
Vec decode_an(const Vec& y) {
    Vec f = round_integer(y);
    const long delta = coordinate_sum(f);
    if (delta == 0) return f;

    const int m = static_cast<int>(y.size());
    std::array<int, kMaxNativeDim> order{};
    std::iota(order.begin(), order.begin() + m, 0);
    auto residual = [&](int i) { return y(i) - f(i); };
    std::sort(order.begin(), order.begin() + m, [&](int a, int b) {
        const double ra = residual(a), rb = residual(b);
        return ra != rb ? ra < rb : a < b;
    });

    if (delta > 0) {
        for (long k = 0; k < delta; ++k) f(order[k]) -= 1.0;
    } else {
        for (long k = 0; k < -delta; ++k) f(order[m - 1 - k]) += 1.0;
    }
    return f;
}

// A_n* is the union of n+1 cosets of A_n with glue vectors
// [i] = (i/(n+1))^{n+1-i} (-(n+1-i)/(n+1))^{i}.
Vec decode_an_star(const Vec& y) {
    const int m = static_cast<int>(y.size());
    Vec best;
    double best_d2 = std::numeric_limits<double>::infinity();
    Vec glue(m);
    for (int i = 0; i < m; ++i) {
        const int j = m - i;
        for (int k = 0; k < m; ++k)
            glue(k) = (k < j) ? static_cast<double>(i) / m : -static_cast<double>(j) / m;
        Vec p = decode_an(y - glue) + glue;
        const double d2 = (y - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = p;
        }
    }
    return best;
}

Vec half_vector(Eigen::Index n) { return Vec::Constant(n, 0.5); }

Vec closer(const Vec& y, const Vec& a, const Vec& b) {
    return (y - a).squaredNorm() <= (y - b).squaredNorm() ? a : b;
}

Vec decode_dn_star(const Vec& y) {
    const Vec h = half_vector(y.size());
    return closer(y, round_integer(y), round_integer(y - h) + h);
}

Vec decode_e8(const Vec& y) {
    const Vec h = half_vector(y.size());
    return closer(y, decode_dn(y), decode_dn(y - h) + h);
}

}  // namespace

namespace detail {

Vec to_native(const LatticeSpec& spec, const Vec& x) {
    if (spec.identity_embedding) return spec.native_scale == 1.0 ? x : Vec(spec.native_scale * x);
    return spec.native_scale * (spec.embedding * x);
}

Vec decode_native(LatticeFamily family, const Vec& y) {
    switch (family) {
        case LatticeFamily::Integer: return round_integer(y);
        case LatticeFamily::RootA: return decode_an(y);
        case LatticeFamily::RootAStar: return decode_an_star(y);
        case LatticeFamily::RootD: return decode_dn(y);
        case LatticeFamily::RootDStar: return decode_dn_star(y);
        case LatticeFamily::E8: return decode_e8(y);
    }
    throw LatticeError("unhandled lattice family");
}

bool inside_native(LatticeFamily family, const Vec& y) {
    const Vec p = decode_native(family, y);
    const double own = y.squaredNorm();
    // Slack of a few rounding errors so exact facet points stay inside.
    return own <= (y - p).squaredNorm() + kMembershipSlack * std::max(1.0, own);
}

}  // namespace detail

IVec babai_shift(const LatticeSpec& spec, const Vec& x) {
    // Nearest-plane variant: peel off one Gram-Schmidt direction at a time.
    const int d = spec.dim;
    const Mat& b = spec.generator;
    Mat ortho(d, d);
    for (int i = 0; i < d; ++i) {
        Vec v = b.row(i).transpose();
        for (int j = 0; j < i; ++j)
            v -= (b.row(i).dot(ortho.row(j)) / ortho.row(j).squaredNorm()) * ortho.row(j).transpose();
        ortho.row(i) = v.transpose();
    }
    IVec c(d);
    Vec residual = x;
    for (int i = d - 1; i >= 0; --i) {
        c(i) = std::lround(residual.dot(ortho.row(i).transpose()) / ortho.row(i).squaredNorm());
        residual -= static_cast<double>(c(i)) * b.row(i).transpose();
    }
    return c;
}

DecodeResult nearest_point(const LatticeSpec& spec, const Vec& x) {
    const Vec native = detail::decode_native(spec.family, detail::to_native(spec, x));
    Vec ambient = spec.identity_embedding ? native : Vec(spec.embedding.transpose() * native);
    ambient /= spec.native_scale;

    DecodeResult r;
    const Vec real = spec.generator.transpose().partialPivLu().solve(ambient);
    r.coeffs.resize(spec.dim);
    for (int i = 0; i < spec.dim; ++i) r.coeffs(i) = std::lround(real(i));
    r.point = spec.generator.transpose() * r.coeffs.cast<double>();
    r.dist2 = (x - r.point).squaredNorm();

    const Vec offset = x - r.point;
    const double slack = kTieTolerance * std::max(1.0, r.dist2);
    for (const auto& v : spec.relevant_vectors) {
        // |x - p - v|^2 - |x - p|^2
        if (v.squaredNorm() - 2.0 * v.dot(offset) <= slack) {
            r.tie = true;
            break;
        }
    }
    return r;
}

DecodeResult brute_force_nearest(const LatticeSpec& spec, const Vec& x, int radius_bound) {
    if (radius_bound < 2) throw std::invalid_argument("radius_bound must be at least 2");
    const int d = spec.dim;
    const long b = radius_bound;
    const Mat& g = spec.generator;

    // Gram-Schmidt: |x - c G|^2 = sum_j q_j (y_j - c_j - sum_{i>j} mu_ij c_i)^2.
    // Every partial sum over j >= level bounds all completions from below, so
    // subtrees that cannot beat the current second-best are skipped without
    // losing exactness over the box.
    Mat ortho(d, d);
    Mat mu = Mat::Zero(d, d);
    Vec q(d), y(d);
    for (int i = 0; i < d; ++i) {
        Vec v = g.row(i).transpose();
        for (int j = 0; j < i; ++j) {
            mu(i, j) = g.row(i).dot(ortho.row(j)) / q(j);
            v -= mu(i, j) * ortho.row(j).transpose();
        }
        ortho.row(i) = v.transpose();
        q(i) = v.squaredNorm();
    }
    for (int j = 0; j < d; ++j) y(j) = x.dot(ortho.row(j).transpose()) / q(j);

    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::array<long, kMaxNativeDim> c{};
    std::array<long, kMaxNativeDim> best_c{};
    const long width = 2 * b + 1;

    auto search = [&](auto&& self, int level, double partial) -> void {
        double center = y(level);
        for (int i = level + 1; i < d; ++i) center -= mu(i, level) * static_cast<double>(c[i]);

        // Box values ordered by distance from the center, so the scan can stop
        // at the first value that exceeds the bound.
        std::array<long, 2 * 16 + 1> order{};
        for (long k = 0; k < width; ++k) order[k] = k - b;
        std::sort(order.begin(), order.begin() + width, [&](long u, long v) {
            const double du = std::abs(static_cast<double>(u) - center);
            const double dv = std::abs(static_cast<double>(v) - center);
            return du != dv ? du < dv : u < v;
        });

        for (long k = 0; k < width; ++k) {
            const double off = center - static_cast<double>(order[k]);
            const double total = partial + q(level) * off * off;
            if (total > second) break;
            c[level] = order[k];
            if (level > 0) {
                self(self, level - 1, total);
            } else if (total < best) {
                second = best;
                best = total;
                best_c = c;
            } else {
                second = std::min(second, total);
            }
        }
        c[level] = 0;
    };
    if (b > 16) throw std::invalid_argument("radius_bound above 16 is not supported");
    search(search, d - 1, 0.0);

    for (int i = 0; i < d; ++i)
        if (std::abs(best_c[i]) == b)
            throw BoxTooSmallError("minimizer on coefficient box edge (bound " +
                                   std::to_string(radius_bound) + ") for " + spec.name);

    // An interior box minimum is only global if every lattice point at least
    // as close has coefficients inside the box. Coefficient i of such a point
    // is within |x - p| * ||row i of G^{-T}|| of (x G^{-1})_i.
    const Mat dual_rows = g.inverse().transpose();
    const Vec w = g.transpose().partialPivLu().solve(x);
    const double reach = std::sqrt(best * (1.0 + 1e-6)) + 1e-12;
    for (int i = 0; i < d; ++i) {
        const double spread = reach * dual_rows.row(i).norm();
        if (w(i) - spread < -static_cast<double>(b) || w(i) + spread > static_cast<double>(b))
            throw BoxTooSmallError("box of bound " + std::to_string(radius_bound) +
                                   " does not certify the minimum for " + spec.name);
    }

    DecodeResult r;
    r.coeffs.resize(d);
    for (int i = 0; i < d; ++i) r.coeffs(i) = best_c[i];
    r.point = g.transpose() * r.coeffs.cast<double>();
    r.dist2 = (x - r.point).squaredNorm();
    r.tie = second - best <= kTieTolerance * std::max(1.0, best);
    return r;
}

DecodeResult oracle_nearest(const LatticeSpec& spec, const Vec& x) {
    const IVec shift = babai_shift(spec, x);
    const Vec base = spec.generator.transpose() * shift.cast<double>();
    for (int bound = 3;; bound *= 2) {
        try {
            DecodeResult r = brute_force_nearest(spec, x - base, bound);
            r.coeffs += shift;
            r.point += base;
            r.dist2 = (x - r.point).squaredNorm();
            return r;
        } catch (const BoxTooSmallError&) {
            if (bound >= 12) throw;
        }
    }
}

bool in_voronoi(const LatticeSpec& spec, const Vec& x) {
    return detail::inside_native(spec.family, detail::to_native(spec, x));
}

}  // namespace latsamp
