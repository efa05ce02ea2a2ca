#ifndef BEHAVEMARK_STATS_HPP
#define BEHAVEMARK_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace behavemark {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a Bernoulli proportion (default 95%).
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963985);

// Plain normal-approximation interval (estimate +/- z*SEM), clamped to [0,1].
Interval normal_interval(std::size_t successes, std::size_t trials, double z = 1.959963985);

// Upper-tail p-value of the Pearson chi-square statistic for observed counts
// versus expected counts (zero-expectation cells must have zero observed).
double chi_square_p_value(std::span<const std::size_t> observed,
                          std::span<const double> expected);

double tv_distance(std::span<const double> a, std::span<const double> b);

// KL(p || q) in nats; p_i = 0 terms contribute nothing. Infinite when some
// p_i > 0 has q_i = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct SpearmanResult {
  double rho;
  double p_decreasing;  // one-sided p-value for rho < 0
};

// Spearman rank correlation with average ranks for ties; p-value from the
// t approximation (exact 1/n! when the ranking is perfectly monotone).
SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace behavemark

#endif
