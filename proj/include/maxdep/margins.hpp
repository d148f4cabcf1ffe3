#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "maxdep/gev.hpp"

namespace maxdep {

// iid normalizing constants: F^n(c_star x + d_star) -> H_limit(x).
struct IidNormalizers {
  double c_star;
  double d_star;
  GevParams limit;
};

// Continuous univariate margin F. Built-in families carry closed-form cdf,
// survival and quantiles that stay accurate in the upper tail, where F^n
// amplifies absolute error by n.
class MarginFamily {
 public:
  enum class Kind { UnitFrechet, Frechet, Exponential, StandardNormal, Uniform01, Pareto, Generic };

  using Fn = std::function<double(double)>;
  using NormalizerFn = std::function<IidNormalizers(std::uint64_t)>;

  static MarginFamily unit_frechet();
  static MarginFamily frechet(double alpha);
  static MarginFamily exponential(double lambda);
  static MarginFamily standard_normal();
  static MarginFamily uniform01();
  static MarginFamily pareto(double alpha);
  // `cdf` and `quantile` must be side-effect free. Normalizers are optional;
  // without them iid_normalizers throws NotAvailable.
  static MarginFamily generic(std::string name, Fn cdf, Fn quantile,
                              NormalizerFn normalizers = {});

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  const std::string& name() const { return name_; }

  double cdf(double x) const;
  // 1 - F(x), computed without cancellation for the built-ins.
  double survival(double x) const;
  // log F(x), accurate when F(x) is close to 1.
  double log_cdf(double x) const;
  double quantile(double q) const;
  // Inverse survival: x with 1 - F(x) = s.
  double quantile_upper(double s) const;
  // Maps a uniform given as the pair (u, 1-u) to F^{-1}(u), picking the
  // representation with more relative precision.
  double from_uniform(double u, double one_minus_u) const;

  const NormalizerFn& generic_normalizers() const { return normalizers_; }

 private:
  MarginFamily(Kind kind, double param, std::string name)
      : kind_(kind), param_(param), name_(std::move(name)) {}

  Kind kind_;
  double param_ = 0.0;
  std::string name_;
  Fn cdf_;
  Fn quantile_;
  NormalizerFn normalizers_;
};

// Root b of 2 pi b^2 exp(b^2) = n^2 (Hall's normal constants: d = b, c = 1/b).
double hall_normal_constant(std::uint64_t n);

IidNormalizers iid_normalizers(const MarginFamily& m, std::uint64_t n);

// Known uniform rate sup_x |F^n(c x + d) - H(x)| <= beta*(n).
double iid_uniform_rate(const MarginFamily& m, std::uint64_t n);

}  // namespace maxdep
