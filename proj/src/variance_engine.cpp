#include "latsamp/variance_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "latsamp/errors.hpp"
#include "latsamp/parallel.hpp"

namespace latsamp {
namespace {

double ipow(double x, int d) {
    double r = 1.0;
    for (int i = 0; i < d; ++i) r *= x;
    return r;
}

// sorted_t ascending. Directions with t >= w0 contribute exactly zero error,
// so only the prefix t < w0 is visited.
VarianceEstimate estimate_sorted(std::span<const double> sorted_t, int d, double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("rate must be positive");
    const std::size_t n = sorted_t.size();
    const auto first_outside = std::partition_point(sorted_t.begin(), sorted_t.end(),
                                                    [&](double t) { return t * rate < 1.0; });
    const auto k = static_cast<std::size_t>(first_outside - sorted_t.begin());
    if (k == 0) return {0.0, 0.0};

    // Constant profile (d = 1, or a degenerate sample): no Monte-Carlo noise.
    if (sorted_t.front() == sorted_t.back()) return {1.0 - ipow(sorted_t.front() * rate, d), 0.0};

    long double sum = 0.0L;
    for (std::size_t i = 0; i < k; ++i) sum += 1.0L - ipow(sorted_t[i] * rate, d);
    const double mean = static_cast<double>(sum / static_cast<long double>(n));

    long double ss = static_cast<long double>(n - k) * mean * mean;
    for (std::size_t i = 0; i < k; ++i) {
        const double dev = (1.0 - ipow(sorted_t[i] * rate, d)) - mean;
        ss += static_cast<long double>(dev) * dev;
    }
    const double var = n > 1 ? static_cast<double>(ss / static_cast<long double>(n - 1)) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::vector<double> sorted_copy(const RadialProfile& profile) {
    std::vector<double> t = profile.t_values;
    std::sort(t.begin(), t.end());
    return t;
}

double interpolate_root(double r0, double d0, double r1, double d1) {
    return r0 + (r1 - r0) * d0 / (d0 - d1);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

VarianceEstimate error_variance(const RadialProfile& profile, double rate_over_bandwidth) {
    if (profile.t_values.empty()) throw std::invalid_argument("empty profile");
    const auto t = sorted_copy(profile);
    return estimate_sorted(t, profile.dim(), rate_over_bandwidth);
}

double lower_bound(int d, double rate_over_bandwidth) {
    if (!(rate_over_bandwidth > 0.0)) throw std::invalid_argument("rate must be positive");
    return std::max(0.0, 1.0 - std::pow(rate_over_bandwidth, d) / ball_volume(d, 1.0));
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
    if (steps < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("malformed rate grid");
    std::vector<double> g(steps);
    const double h = (hi - lo) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) g[i] = lo + h * static_cast<double>(i);
    g.back() = hi;
    return g;
}

std::vector<double> default_rate_grid() { return uniform_grid(0.5, 2.05, 601); }

VarianceCurve sweep(const RadialProfile& profile, std::span<const double> rate_grid,
                    const std::string& label, unsigned workers) {
    if (profile.t_values.empty()) throw std::invalid_argument("empty profile");
    for (std::size_t i = 0; i < rate_grid.size(); ++i) {
        if (!(rate_grid[i] > 0.0)) throw std::invalid_argument("rates must be positive");
        if (i > 0 && !(rate_grid[i] > rate_grid[i - 1]))
            throw std::invalid_argument("rate grid must be strictly increasing");
    }

    const int d = profile.dim();
    const auto t = sorted_copy(profile);
    const std::size_t m = rate_grid.size();

    VarianceCurve c;
    c.lattice_name = label.empty() ? profile.lattice.name : label;
    c.dim = d;
    c.rates.assign(rate_grid.begin(), rate_grid.end());
    c.sigma_e2.resize(m);
    c.sigma_lb2.resize(m);
    c.gap.resize(m);
    c.std_error.resize(m);
    parallel_for(m, workers, [&](std::size_t i) {
        const auto e = estimate_sorted(t, d, rate_grid[i]);
        c.sigma_e2[i] = e.value;
        c.std_error[i] = e.std_error;
        c.sigma_lb2[i] = lower_bound(d, rate_grid[i]);
        c.gap[i] = e.value - c.sigma_lb2[i];
    });
    return c;
}

Crossover crossover(const VarianceCurve& a, const VarianceCurve& b) {
    if (a.rates.size() != b.rates.size())
        throw std::invalid_argument("crossover needs curves on the same rate grid");
    for (std::size_t i = 0; i < a.rates.size(); ++i)
        if (std::abs(a.rates[i] - b.rates[i]) > 1e-12)
            throw std::invalid_argument("crossover needs curves on the same rate grid");

    const std::size_t m = a.rates.size();
    std::vector<double> diff(m);
    std::vector<int> sig(m);
    for (std::size_t i = 0; i < m; ++i) {
        diff[i] = a.sigma_e2[i] - b.sigma_e2[i];
        const double se = std::hypot(a.std_error[i], b.std_error[i]);
        sig[i] = std::abs(diff[i]) > 3.0 * se + 1e-15 ? sign_of(diff[i]) : 0;
    }

    std::vector<Crossover> found;
    std::size_t last = m;  // index of the previous significant point
    for (std::size_t j = 0; j < m; ++j) {
        if (sig[j] == 0) continue;
        if (last != m && sig[j] != sig[last]) {
            // Prefer the unique raw sign change inside the bracket; fall back
            // to a chord across the whole indeterminate band.
            std::size_t raw_count = 0, raw_at = last;
            for (std::size_t k = last; k < j; ++k)
                if (sign_of(diff[k]) * sign_of(diff[k + 1]) < 0) {
                    ++raw_count;
                    raw_at = k;
                }
            Crossover x;
            if (raw_count == 1) {
                x = {interpolate_root(a.rates[raw_at], diff[raw_at], a.rates[raw_at + 1], diff[raw_at + 1]),
                     raw_at, raw_at + 1};
            } else {
                x = {interpolate_root(a.rates[last], diff[last], a.rates[j], diff[j]), last, j};
            }
            found.push_back(x);
        }
        last = j;
    }

    if (found.empty())
        throw NoCrossoverError("no sign change between " + a.lattice_name + " and " + b.lattice_name);
    if (found.size() > 1) {
        std::vector<double> rates;
        std::ostringstream msg;
        msg << found.size() << " sign changes between " << a.lattice_name << " and " << b.lattice_name << " at";
        for (const auto& x : found) {
            rates.push_back(x.rate);
            msg << ' ' << x.rate;
        }
        throw MultipleCrossoverError(msg.str(), std::move(rates));
    }
    return found.front();
}

ThresholdPair thresholds(const LatticeSpec& spec) { return normalized_thresholds(spec); }

}  // namespace latsamp
