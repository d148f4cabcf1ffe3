#include "maxdep/margins.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>

#include "maxdep/errors.hpp"

namespace maxdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConstructionError(std::string(what) + " must be positive and finite");
  }
}

void require_probability(double q, const char* op) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError(std::string(op) + ": probability must lie in (0,1), got " + std::to_string(q));
  }
}

// Frechet(alpha) in GEV form: exp(-x^{-alpha}) = H_{1/alpha, 1, 1/alpha}.
GevParams frechet_limit(double alpha) { return {1.0 / alpha, 1.0, 1.0 / alpha}; }

}  // namespace

MarginFamily MarginFamily::unit_frechet() { return {Kind::UnitFrechet, 1.0, "unit-frechet"}; }

MarginFamily MarginFamily::frechet(double alpha) {
  require_positive(alpha, "Frechet alpha");
  return {Kind::Frechet, alpha, "frechet"};
}

MarginFamily MarginFamily::exponential(double lambda) {
  require_positive(lambda, "Exponential rate");
  return {Kind::Exponential, lambda, "exponential"};
}

MarginFamily MarginFamily::standard_normal() { return {Kind::StandardNormal, 0.0, "normal"}; }

MarginFamily MarginFamily::uniform01() { return {Kind::Uniform01, 0.0, "uniform"}; }

MarginFamily MarginFamily::pareto(double alpha) {
  require_positive(alpha, "Pareto alpha");
  return {Kind::Pareto, alpha, "pareto"};
}

MarginFamily MarginFamily::generic(std::string name, Fn cdf, Fn quantile,
                                   NormalizerFn normalizers) {
  if (!cdf || !quantile) throw ConstructionError("generic margin needs cdf and quantile");
  MarginFamily m(Kind::Generic, 0.0, std::move(name));
  m.cdf_ = std::move(cdf);
  m.quantile_ = std::move(quantile);
  m.normalizers_ = std::move(normalizers);
  return m;
}

double MarginFamily::survival(double x) const {
  switch (kind_) {
    case Kind::UnitFrechet:
      return x > 0.0 ? -std::expm1(-1.0 / x) : 1.0;
    case Kind::Frechet:
      return x > 0.0 ? -std::expm1(-std::pow(x, -param_)) : 1.0;
    case Kind::Exponential:
      return x > 0.0 ? std::exp(-param_ * x) : 1.0;
    case Kind::StandardNormal:
      return 0.5 * std::erfc(x / std::numbers::sqrt2);
    case Kind::Uniform01:
      return x <= 0.0 ? 1.0 : (x >= 1.0 ? 0.0 : 1.0 - x);
    case Kind::Pareto:
      return x > 1.0 ? std::pow(x, -param_) : 1.0;
    case Kind::Generic:
      return 1.0 - cdf_(x);
  }
  return 0.0;
}

double MarginFamily::cdf(double x) const {
  switch (kind_) {
    case Kind::UnitFrechet:
      return x > 0.0 ? std::exp(-1.0 / x) : 0.0;
    case Kind::Frechet:
      return x > 0.0 ? std::exp(-std::pow(x, -param_)) : 0.0;
    case Kind::Exponential:
      return x > 0.0 ? -std::expm1(-param_ * x) : 0.0;
    case Kind::StandardNormal:
      return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    case Kind::Uniform01:
      return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x);
    case Kind::Pareto:
      return x > 1.0 ? -std::expm1(-param_ * std::log(x)) : 0.0;
    case Kind::Generic:
      return cdf_(x);
  }
  return 0.0;
}

double MarginFamily::log_cdf(double x) const {
  switch (kind_) {
    case Kind::UnitFrechet:
      return x > 0.0 ? -1.0 / x : -kInf;
    case Kind::Frechet:
      return x > 0.0 ? -std::pow(x, -param_) : -kInf;
    default:
      break;
  }
  const double s = survival(x);
  if (s < 0.5) return std::log1p(-s);
  return std::log(cdf(x));
}

double MarginFamily::quantile(double q) const {
  require_probability(q, "margin quantile");
  switch (kind_) {
    case Kind::UnitFrechet:
      return -1.0 / std::log(q);
    case Kind::Frechet:
      return std::pow(-std::log(q), -1.0 / param_);
    case Kind::Exponential:
      return -std::log1p(-q) / param_;
    case Kind::StandardNormal:
      return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
    case Kind::Uniform01:
      return q;
    case Kind::Pareto:
      return std::exp(-std::log1p(-q) / param_);
    case Kind::Generic:
      return quantile_(q);
  }
  return 0.0;
}

double MarginFamily::quantile_upper(double s) const {
  require_probability(s, "margin upper quantile");
  switch (kind_) {
    case Kind::UnitFrechet:
      return -1.0 / std::log1p(-s);
    case Kind::Frechet:
      return std::pow(-std::log1p(-s), -1.0 / param_);
    case Kind::Exponential:
      return -std::log(s) / param_;
    case Kind::StandardNormal:
      return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * s);
    case Kind::Uniform01:
      return 1.0 - s;
    case Kind::Pareto:
      return std::exp(-std::log(s) / param_);
    case Kind::Generic:
      return quantile_(1.0 - s);
  }
  return 0.0;
}

double MarginFamily::from_uniform(double u, double one_minus_u) const {
  if (u < 0.5) return quantile(u);
  return quantile_upper(one_minus_u);
}

double hall_normal_constant(std::uint64_t n) {
  if (n < 2) throw DomainError("hall_normal_constant: n must be >= 2");
  const double log_n = std::log(static_cast<double>(n));
  // log form of 2 pi b^2 e^{b^2} = n^2; increasing in b.
  auto g = [&](double b) { return std::log(2.0 * std::numbers::pi) + 2.0 * std::log(b) + b * b - 2.0 * log_n; };
  double lo = 1.0;
  const double hi = std::sqrt(2.0 * log_n) + 2.0;
  while (g(lo) > 0.0) lo *= 0.5;  // n <= 4 puts the root below 1
  std::uintmax_t max_iter = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); };
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, tol, max_iter);
  return 0.5 * (a + b);
}

IidNormalizers iid_normalizers(const MarginFamily& m, std::uint64_t n) {
  if (n < 2) throw DomainError("iid_normalizers: n must be >= 2");
  const auto nd = static_cast<double>(n);
  switch (m.kind()) {
    case MarginFamily::Kind::Exponential:
      return {1.0 / m.param(), std::log(nd) / m.param(), {0.0, 0.0, 1.0}};
    case MarginFamily::Kind::UnitFrechet:
      return {nd, 0.0, frechet_limit(1.0)};
    case MarginFamily::Kind::Frechet:
      return {std::pow(nd, 1.0 / m.param()), 0.0, frechet_limit(m.param())};
    case MarginFamily::Kind::Pareto:
      return {m.quantile_upper(1.0 / nd), 0.0, frechet_limit(m.param())};
    case MarginFamily::Kind::Uniform01:
      // (1 + x/n)^n -> e^x on x <= 0, i.e. H_{-1,-1,1}.
      return {1.0 / nd, 1.0, {-1.0, -1.0, 1.0}};
    case MarginFamily::Kind::StandardNormal: {
      const double b = hall_normal_constant(n);
      return {1.0 / b, b, {0.0, 0.0, 1.0}};
    }
    case MarginFamily::Kind::Generic:
      if (m.generic_normalizers()) return m.generic_normalizers()(n);
      throw NotAvailable("no normalizer registered for margin '" + m.name() + "'");
  }
  throw NotAvailable("no normalizer");
}

double iid_uniform_rate(const MarginFamily& m, std::uint64_t n) {
  if (n < 2) throw DomainError("iid_uniform_rate: n must be >= 2");
  switch (m.kind()) {
    case MarginFamily::Kind::StandardNormal:
      return 3.0 / std::log(static_cast<double>(n));
    case MarginFamily::Kind::UnitFrechet:
    case MarginFamily::Kind::Frechet:
      return 0.0;
    default:
      throw NotAvailable("unknown iid uniform rate for margin '" + m.name() + "'");
  }
}

}  // namespace maxdep
