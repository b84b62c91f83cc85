#pragma once

#include <vector>

namespace fleetplan::stats {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);  // n-1 denominator

// Two-sided Student-t quantile, P(T <= t) = p, via the regularized
// incomplete beta function inverted by bisection.
double t_quantile(double p, int dof);

// Half-width of the two-sided 95% confidence interval of the mean.
// Zero for fewer than two samples.
double ci95_halfwidth(const std::vector<double>& xs);

struct AffineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;  // residual / max |y|
};
AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares exponent of y ~ c * x^e (log-log affine fit slope).
double fit_power_exponent(const std::vector<double>& x,
                          const std::vector<double>& y);

}  // namespace fleetplan::stats
