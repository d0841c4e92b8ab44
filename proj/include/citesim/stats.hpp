#ifndef CITESIM_STATS_HPP
#define CITESIM_STATS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace citesim::stats {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);

// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, int dof);

// Pearson chi-square p-value of observed category counts against expected
// probabilities. Categories with zero expected probability must have zero
// observed count (otherwise the p-value is 0).
double chi_square_gof_pvalue(std::span<const std::uint64_t> observed,
                             std::span<const double> expected_probs);

// Two-sample Kolmogorov-Smirnov test (asymptotic p-value). Works on integer
// samples; ties make the asymptotic p-value conservative.
struct KsResult {
    double statistic;
    double pvalue;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LinearFit {
    double slope;
    double intercept;
};
// Ordinary least squares y = slope*x + intercept. Undefined for < 2 points or
// zero x-variance (throws std::invalid_argument).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Slope sign shortcut for yearly trend counts.
inline bool increasing_trend(std::span<const double> yearly) {
    std::vector<double> xs(yearly.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
    return linear_fit(xs, yearly).slope > 0.0;
}

}  // namespace citesim::stats

#endif
