#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "maxdep/generators.hpp"
#include "maxdep/gev.hpp"

namespace maxdep {

// Distortion function D: a continuous distribution function on [0,1] with
// D(0) = 0 and D(1) = 1. The limit law of dependent normalized maxima is
// D(H(x)) for a GEV H.
class Distortion {
 public:
  enum class Kind { Power, ArchimedeanLimit, EfgmLimit, Mixture, AmhUniformMixture, Custom };

  class Impl {
   public:
    virtual ~Impl() = default;
    virtual double cdf(double u) const = 0;
    // D(exp(log_u)); override when the log form is the natural one.
    virtual double cdf_log(double log_u) const;
    // Central differences unless overridden.
    virtual double density(double u) const;
    // Bisection on cdf unless overridden.
    virtual double quantile(double q) const;
    // log D^{-1}(q); finite where the quantile itself underflows.
    virtual double quantile_log(double q) const;
    // u d(u) at u = exp(log_u): the density of -log U for U ~ D.
    virtual double log_scale_density(double log_u) const;
  };

  // D(u) = u^theta.
  static Distortion power(double theta);
  // D(u) = psi((-log u)^{1/rho}) with rho = g.rho().
  static Distortion archimedean_limit(const ArchGenerator& g);
  // D(u) = (u^{1+theta} - u^{1-theta}) / (2 theta log u), theta in [-1,1] \ {0}.
  static Distortion efgm_limit(double theta);
  // D(u) = int member_theta(u) w(theta) dtheta over [lo, hi], by a `nodes`-point
  // Gauss-Legendre rule; the weights are renormalized to sum to one.
  static Distortion mixture(const std::function<Distortion(double)>& member, double lo,
                            double hi, const std::function<double(double)>& weight,
                            std::size_t nodes = 64, std::string name = "mixture");
  // AMH generator with theta ~ U(0,1): D(u) = 1 - ((u-1)/u) log(1-u).
  static Distortion amh_uniform_mixture();
  // Density and quantile fall back to numerics when not supplied.
  static Distortion custom(std::string name, std::function<double(double)> cdf,
                           std::function<double(double)> density = {},
                           std::function<double(double)> quantile = {});

  Distortion(std::shared_ptr<const Impl> impl, Kind kind, std::string name)
      : impl_(std::move(impl)), kind_(kind), name_(std::move(name)) {}

  double cdf(double u) const;
  double cdf_log(double log_u) const;
  // May be +inf at u = 0 or u = 1.
  double density(double u) const;
  double quantile(double q) const;
  double quantile_log(double q) const;
  // u d(u) at u = exp(log_u), finite where d(u) is not. Some distortions
  // (Clayton limits) keep visible mass below the smallest double, so total
  // mass checks must integrate this over s = -log u in [0, inf).
  double log_scale_density(double log_u) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  std::shared_ptr<const Impl> impl_;
  Kind kind_;
  std::string name_;
};

// G(x) = D(H(x)), evaluated through log H so the upper tail keeps precision.
double limit_law_cdf(const Distortion& d, const GevParams& h, double x);
// G^{-1}(q) = H^{-1}(D^{-1}(q)), routed through log D^{-1}(q).
double limit_law_quantile(const Distortion& d, const GevParams& h, double q);

// How far G is from max-stable: fit G^k(x) ~ G(a x + b) by matching the
// 0.25/0.75 quantiles, then return the sup over `grid` of |G^k(x) - G(ax+b)|.
// Throws ContractError when G does not cross both levels on the grid.
double max_stability_defect(const std::function<double(double)>& g_cdf, int k,
                            std::span<const double> grid);

}  // namespace maxdep
