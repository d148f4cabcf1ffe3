#include "maxdep/ratebounds.hpp"

#include <cmath>
#include <string>

#include "maxdep/errors.hpp"
#include "maxdep/numerics.hpp"

namespace maxdep {

using numerics::kThreeOverE;

PowerDiffSup sup_power_diff(double a, double b) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("sup_power_diff needs 0 < a < b, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
  // log(b/a) through log1p keeps precision when b - a is tiny.
  const double log_ratio = std::log1p((b - a) / a);
  const double value = std::exp(std::log1p(-a / b) + a / (a - b) * log_ratio);
  const double argmax = std::exp(log_ratio / (a - b));
  return {value, argmax};
}

Bound small_gap_bound(double a, double b_n) {
  if (!(a > 0.0)) throw DomainError("small_gap_bound needs a > 0");
  const double ln2 = std::log(2.0);
  const bool valid = b_n > -a * ln2 && b_n < a * ln2 / (1.0 - ln2);
  return {kThreeOverE * std::abs(b_n) / a, valid};
}

Bound large_n_bound(double b, double a_n) {
  if (!(b > 0.0) || !(a_n > 0.0)) throw DomainError("large_n_bound needs b > 0 and a_n > 0");
  const double ln2 = std::log(2.0);
  return {kThreeOverE * b / a_n, a_n >= b * (1.0 - ln2) / ln2};
}

double ceil_rate_bound(double r_n) {
  if (!(r_n > 0.0)) throw DomainError("ceil_rate_bound needs r_n > 0");
  return kThreeOverE / std::ceil(r_n);
}

double ceil_power_cdf_bound(double r_n) {
  if (!(r_n > 0.0)) throw DomainError("ceil_power_cdf_bound needs r_n > 0");
  return kThreeOverE / r_n;
}

double RateBoundReport::recompute() const {
  return K * std::pow(beta_star + ceiling, kappa) + distortion;
}

RateBoundReport composite_rate_bound(double beta_star_n, double s_n, double K, double kappa,
                                     double r_n) {
  if (!(K > 0.0)) throw DomainError("rate bound needs K > 0");
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("rate bound needs kappa in (0,1]");
  if (!(beta_star_n >= 0.0) || !(s_n >= 0.0)) {
    throw DomainError("rate bound terms must be nonnegative");
  }
  if (!(r_n > 0.0)) throw DomainError("rate bound needs r_n > 0");
  RateBoundReport rep;
  rep.beta_star = beta_star_n;
  rep.ceiling = r_n == std::floor(r_n) ? 0.0 : kThreeOverE / r_n;
  rep.distortion = s_n;
  rep.K = K;
  rep.kappa = kappa;
  rep.bound = rep.recompute();
  return rep;
}

RateBoundReport reverse_bound(double beta_star_n, double gamma_n, double K, double kappa,
                              double r_n) {
  return composite_rate_bound(beta_star_n, gamma_n, K, kappa, r_n);
}

double movingmax_s(std::uint64_t n, int k) {
  if (n == 0) throw DomainError("movingmax_s needs n >= 1");
  if (k < 0) throw DomainError("movingmax_s needs k >= 0");
  if (k == 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double kk = k;
  return kk / (nn + kk) * std::exp(-(nn / kk) * std::log1p(kk / nn));
}

CuadrasAugeSup cuadras_auge_sup(std::uint64_t n, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("cuadras_auge_sup needs theta in (0,1)");
  if (n == 0) throw DomainError("cuadras_auge_sup needs n >= 1");
  const double q = std::exp(static_cast<double>(n) * std::log1p(-theta));
  // (1-q)^{1/q - 1} in log space: 1/q overflows long before q underflows.
  const double exact = q == 0.0 ? 0.0 : q * std::exp((1.0 - q) * std::log1p(-q) / q);
  return {exact, kThreeOverE * q};
}

}  // namespace maxdep
