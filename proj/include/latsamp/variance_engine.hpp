#pragma once

#include <span>
#include <string>
#include <vector>

#include "latsamp/ball_geometry.hpp"
#include "latsamp/lattice_catalog.hpp"

namespace latsamp {

struct VarianceEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Normalized error variance sigma_e^2 / sigma^2 at rate r/w0 from a
/// unit-volume frequency-domain profile:
///   1 - mean_i [ min(t_i, w0)^d / w0^d ],  w0 = 1 / rate.
/// Rates at or above 1/min(t) give exactly 0.
VarianceEstimate error_variance(const RadialProfile& profile, double rate_over_bandwidth);

/// max{0, 1 - Gamma(d/2+1) / pi^{d/2} * rate^d}
double lower_bound(int d, double rate_over_bandwidth);

struct VarianceCurve {
    std::string lattice_name;
    int dim = 0;
    std::vector<double> rates;
    std::vector<double> sigma_e2;
    std::vector<double> sigma_lb2;
    std::vector<double> gap;
    std::vector<double> std_error;

    std::size_t size() const { return rates.size(); }
};

/// Evaluates one profile over a strictly increasing positive rate grid.
/// The curve is labelled with `label`, or the profile's lattice name if empty.
VarianceCurve sweep(const RadialProfile& profile, std::span<const double> rate_grid,
                    const std::string& label = {}, unsigned workers = 1);

/// `steps` points spaced uniformly on [lo, hi], both ends included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

/// The default sweep grid: 601 points on [0.5, 2.05].
std::vector<double> default_rate_grid();

struct Crossover {
    double rate = 0.0;
    std::size_t below = 0;  // grid index on the low side of the sign change
    std::size_t above = 0;  // grid index on the high side
};

/// Rate where sigma_e2 of `a` minus that of `b` changes sign.
///
/// Differences within 3 combined standard errors of zero carry no sign and
/// are skipped. The root is linearly interpolated between the bracketing
/// grid points. Throws NoCrossoverError or MultipleCrossoverError.
Crossover crossover(const VarianceCurve& a, const VarianceCurve& b);

/// Same thresholds as normalized_thresholds, exposed next to the curves.
ThresholdPair thresholds(const LatticeSpec& spec);

}  // namespace latsamp
