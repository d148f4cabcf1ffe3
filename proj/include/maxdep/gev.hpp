#pragma once

// Generalized extreme value family H_{xi,mu,sigma} and its max-stability
// algebra:
//
//   H(x) = exp(-(1 + xi (x - mu) / sigma)^{-1/xi})   on 1 + xi (x-mu)/sigma > 0
//   H(x) = exp(-exp(-(x - mu) / sigma))              when xi == 0
//
// Outside the support H is clamped to 0 (below) or 1 (above), never NaN.

namespace maxdep {

struct GevParams {
  double xi = 0.0;
  double mu = 0.0;
  double sigma = 1.0;

  friend bool operator==(const GevParams&, const GevParams&) = default;
};

// |xi| below this is treated as the Gumbel branch.
inline constexpr double kGumbelShapeTolerance = 1e-12;

// Throws ConstructionError unless sigma > 0 and all fields are finite.
void validate(const GevParams& p);

struct Interval {
  double lo;
  double hi;
};

double gev_cdf(const GevParams& p, double x);
// log H(x); -inf below the support, 0 above.
double gev_log_cdf(const GevParams& p, double x);
double gev_density(const GevParams& p, double x);
double gev_quantile(const GevParams& p, double q);
// H^{-1}(exp(log_q)) for log_q < 0, usable when q itself underflows.
double gev_quantile_log(const GevParams& p, double log_q);

// Parameters q with H_q(x) = H_p(x)^theta for every x.
GevParams gev_power(const GevParams& p, double theta);

Interval gev_support(const GevParams& p);

}  // namespace maxdep
