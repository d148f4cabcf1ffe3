#include "maxdep/gev.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "maxdep/errors.hpp"

namespace maxdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_gumbel(const GevParams& p) { return std::abs(p.xi) < kGumbelShapeTolerance; }

}  // namespace

void validate(const GevParams& p) {
  if (!std::isfinite(p.xi) || !std::isfinite(p.mu) || !std::isfinite(p.sigma)) {
    throw ConstructionError("GEV parameters must be finite");
  }
  if (!(p.sigma > 0.0)) {
    throw ConstructionError("GEV scale must be positive, got " + std::to_string(p.sigma));
  }
}

double gev_log_cdf(const GevParams& p, double x) {
  const double z = (x - p.mu) / p.sigma;
  if (is_gumbel(p)) return -std::exp(-z);
  const double t = p.xi * z;
  if (!(1.0 + t > 0.0)) return p.xi > 0.0 ? -kInf : 0.0;
  return -std::exp(-std::log1p(t) / p.xi);
}

double gev_cdf(const GevParams& p, double x) { return std::exp(gev_log_cdf(p, x)); }

double gev_density(const GevParams& p, double x) {
  const double z = (x - p.mu) / p.sigma;
  if (is_gumbel(p)) {
    return std::exp(-z - std::exp(-z)) / p.sigma;
  }
  const double t = p.xi * z;
  if (!(1.0 + t > 0.0)) return 0.0;
  const double log1pt = std::log1p(t);
  const double tail = std::exp(-log1pt / p.xi);
  // (1/sigma) (1+t)^{-1/xi-1} exp(-(1+t)^{-1/xi})
  return std::exp(-(1.0 / p.xi + 1.0) * log1pt - tail) / p.sigma;
}

double gev_quantile(const GevParams& p, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("gev_quantile: q must lie in (0,1), got " + std::to_string(q));
  }
  return gev_quantile_log(p, std::log(q));
}

double gev_quantile_log(const GevParams& p, double log_q) {
  if (!(log_q < 0.0) || std::isinf(log_q)) {
    throw DomainError("gev_quantile_log: log q must be finite and negative");
  }
  const double y = -log_q;
  if (is_gumbel(p)) return p.mu - p.sigma * std::log(y);
  return p.mu + p.sigma * std::expm1(-p.xi * std::log(y)) / p.xi;
}

GevParams gev_power(const GevParams& p, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw DomainError("gev_power: theta must be positive, got " + std::to_string(theta));
  }
  const double log_theta = std::log(theta);
  if (is_gumbel(p)) return {p.xi, p.mu + p.sigma * log_theta, p.sigma};
  // theta (1 + xi z)^{-1/xi} = (theta^{-xi} (1 + xi z))^{-1/xi}
  const double scale = std::exp(p.xi * log_theta);
  return {p.xi, p.mu + p.sigma * std::expm1(p.xi * log_theta) / p.xi, p.sigma * scale};
}

Interval gev_support(const GevParams& p) {
  if (is_gumbel(p)) return {-kInf, kInf};
  const double edge = p.mu - p.sigma / p.xi;
  if (p.xi > 0.0) return {edge, kInf};
  return {-kInf, edge};
}

}  // namespace maxdep
