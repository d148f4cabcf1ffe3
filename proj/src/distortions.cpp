#include "maxdep/distortions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "maxdep/errors.hpp"
#include "maxdep/numerics.hpp"

namespace maxdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class PowerImpl final : public Distortion::Impl {
 public:
  explicit PowerImpl(double theta) : th_(theta) {}
  double cdf(double u) const override { return std::pow(u, th_); }
  double cdf_log(double l) const override { return std::exp(th_ * l); }
  double density(double u) const override {
    if (u <= 0.0) return th_ < 1.0 ? kInf : (th_ == 1.0 ? 1.0 : 0.0);
    return th_ * std::pow(u, th_ - 1.0);
  }
  double quantile(double q) const override { return std::pow(q, 1.0 / th_); }
  double log_scale_density(double l) const override { return th_ * std::exp(th_ * l); }

 private:
  double th_;
};

class ArchimedeanLimitImpl final : public Distortion::Impl {
 public:
  explicit ArchimedeanLimitImpl(ArchGenerator g)
      : g_(std::move(g)), rho_(g_.rho()), d0_(boundary_at_zero()), d1_(boundary_at_one()) {}

  double cdf(double u) const override { return cdf_log(std::log(u)); }
  double cdf_log(double l) const override { return g_.psi(std::pow(-l, 1.0 / rho_)); }

  double density(double u) const override {
    if (u <= 0.0) return d0_;
    if (u >= 1.0) return d1_;
    const double mlog = -std::log(u);
    const double y = std::pow(mlog, 1.0 / rho_);
    if (y == 0.0) return d1_;
    return std::exp(g_.log_neg_psi_prime(y) + (1.0 - rho_) / rho_ * std::log(mlog) -
                    std::log(rho_) - std::log(u));
  }

  double quantile(double q) const override {
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    return std::exp(quantile_log(q));
  }

  double quantile_log(double q) const override { return -std::pow(g_.psi_inv(q), rho_); }

  double log_scale_density(double l) const override {
    if (l >= 0.0) return 0.0;
    const double y = std::pow(-l, 1.0 / rho_);
    if (y == 0.0) return d1_;
    if (y == kInf) return 0.0;
    const double tilt = rho_ == 1.0 ? 0.0 : (1.0 - rho_) / rho_ * std::log(-l);
    const double v = std::exp(g_.log_neg_psi_prime(y) + tilt - std::log(rho_));
    return std::isnan(v) ? 0.0 : v;
  }

 private:
  // lim_{y->0} -psi'(y) y^{1-rho} / rho; equals -psi'(0) when rho = 1.
  double boundary_at_one() const {
    if (rho_ == 1.0) return g_.neg_psi_prime_0();
    const double y = 1e-200;
    return std::exp(g_.log_neg_psi_prime(y) + (1.0 - rho_) * std::log(y) - std::log(rho_));
  }

  // lim_{y->inf} -psi'(y) y^{1-rho} e^{y^rho} / rho, probed where y^rho = 600.
  double boundary_at_zero() const {
    const double y = std::pow(600.0, 1.0 / rho_);
    const double log_value =
        g_.log_neg_psi_prime(y) + (1.0 - rho_) * std::log(y) + 600.0 - std::log(rho_);
    const double value = std::exp(log_value);
    return value > 1e12 ? kInf : value;
  }

  ArchGenerator g_;
  double rho_;
  double d0_;
  double d1_;
};

// u sinh(x)/x with x = |theta| log u, which makes D_theta = D_{-theta} exact.
class EfgmLimitImpl final : public Distortion::Impl {
 public:
  explicit EfgmLimitImpl(double theta) : a_(std::abs(theta)) {}

  double cdf(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double l = std::log(u);
    const double x = a_ * l;
    if (std::abs(x) < 1e-3) {
      const double x2 = x * x;
      return u * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0));
    }
    return (std::exp((1.0 + a_) * l) - std::exp((1.0 - a_) * l)) / (2.0 * x);
  }

  double density(double u) const override {
    if (u <= 0.0) return kInf;
    if (u >= 1.0) return 1.0;
    const double l = std::log(u);
    const double x = a_ * l;
    if (std::abs(x) < 1e-3) {
      const double x2 = x * x;
      const double sinhc = 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
      const double sinhc_prime = x / 3.0 + x * x2 / 30.0 + x * x2 * x2 / 840.0;
      return sinhc + a_ * sinhc_prime;
    }
    const double up = std::exp(a_ * l);
    const double um = std::exp(-a_ * l);
    return ((1.0 + a_) * up - (1.0 - a_) * um) / (2.0 * x) - (up - um) / (2.0 * x * l);
  }

  double log_scale_density(double l) const override {
    const double x = a_ * l;
    if (std::abs(x) < 1e-3) return std::exp(l) * density(std::exp(l));
    const double hi = std::exp((1.0 + a_) * l);
    const double lo = std::exp((1.0 - a_) * l);
    return ((1.0 + a_) * hi - (1.0 - a_) * lo) / (2.0 * x) - (hi - lo) / (2.0 * x * l);
  }

 private:
  double a_;
};

class MixtureImpl final : public Distortion::Impl {
 public:
  MixtureImpl(std::vector<Distortion> members, std::vector<double> weights)
      : members_(std::move(members)), weights_(std::move(weights)) {}

  double cdf(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double s = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) s += weights_[i] * members_[i].cdf(u);
    return s;
  }
  double cdf_log(double l) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) s += weights_[i] * members_[i].cdf_log(l);
    return s;
  }
  double density(double u) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) s += weights_[i] * members_[i].density(u);
    return s;
  }

 private:
  std::vector<Distortion> members_;
  std::vector<double> weights_;
};

class AmhUniformMixtureImpl final : public Distortion::Impl {
 public:
  double cdf(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (u < 1e-3) {
      // sum_j u^j / (j (j+1))
      double s = 0.0;
      double p = u;
      for (int j = 1; j <= 8; ++j, p *= u) s += p / (j * (j + 1.0));
      return s;
    }
    return 1.0 + (1.0 - u) / u * std::log1p(-u);
  }
  double density(double u) const override {
    if (u <= 0.0) return 0.5;
    if (u >= 1.0) return kInf;
    if (u < 1e-3) {
      double s = 0.0;
      double p = 1.0;
      for (int j = 1; j <= 8; ++j, p *= u) s += p / (j + 1.0);
      return s;
    }
    return (-std::log1p(-u) - u) / (u * u);
  }
  double log_scale_density(double log_u) const override {
    const double u = std::exp(log_u);
    if (u < 1e-3) return u * density(u);
    return (-std::log(-std::expm1(log_u)) - u) / u;  // 1 - u from log u keeps the tail
  }
};

class CustomImpl final : public Distortion::Impl {
 public:
  CustomImpl(std::function<double(double)> cdf, std::function<double(double)> density,
             std::function<double(double)> quantile)
      : cdf_(std::move(cdf)), density_(std::move(density)), quantile_(std::move(quantile)) {}
  double cdf(double u) const override { return cdf_(u); }
  double density(double u) const override {
    return density_ ? density_(u) : Distortion::Impl::density(u);
  }
  double quantile(double q) const override {
    return quantile_ ? quantile_(q) : Distortion::Impl::quantile(q);
  }

 private:
  std::function<double(double)> cdf_;
  std::function<double(double)> density_;
  std::function<double(double)> quantile_;
};

std::string with_param(const char* name, double theta) {
  return std::string(name) + "(" + std::to_string(theta) + ")";
}

}  // namespace

double Distortion::Impl::cdf_log(double log_u) const { return cdf(std::exp(log_u)); }

double Distortion::Impl::density(double u) const {
  const double h = 1e-6 * std::max(u, 1.0 - u);
  const double lo = std::max(0.0, u - h);
  const double hi = std::min(1.0, u + h);
  return (cdf(hi) - cdf(lo)) / (hi - lo);
}

double Distortion::Impl::log_scale_density(double log_u) const {
  const double u = std::exp(log_u);
  return u == 0.0 ? 0.0 : u * density(u);
}

double Distortion::Impl::quantile(double q) const {
  return numerics::bisect_increasing([this](double u) { return cdf(u); }, q, 0.0, 1.0);
}

double Distortion::Impl::quantile_log(double q) const { return std::log(quantile(q)); }

Distortion Distortion::power(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw ConstructionError("power distortion needs theta > 0");
  }
  return {std::make_shared<PowerImpl>(theta), Kind::Power, with_param("power", theta)};
}

Distortion Distortion::archimedean_limit(const ArchGenerator& g) {
  return {std::make_shared<ArchimedeanLimitImpl>(g), Kind::ArchimedeanLimit,
          "archimedean-limit[" + g.name() + "]"};
}

Distortion Distortion::efgm_limit(double theta) {
  if (!(std::abs(theta) <= 1.0) || theta == 0.0) {
    throw ConstructionError("EFGM limit distortion needs theta in [-1,1] \\ {0}");
  }
  return {std::make_shared<EfgmLimitImpl>(theta), Kind::EfgmLimit, with_param("efgm", theta)};
}

Distortion Distortion::mixture(const std::function<Distortion(double)>& member, double lo,
                               double hi, const std::function<double(double)>& weight,
                               std::size_t nodes, std::string name) {
  if (!(lo < hi) || nodes == 0) throw ConstructionError("mixture needs lo < hi and nodes > 0");
  const auto rule = numerics::gauss_legendre(nodes);
  std::vector<Distortion> members;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double theta = 0.5 * (hi - lo) * rule->nodes[i] + 0.5 * (hi + lo);
    const double w = rule->weights[i] * weight(theta);
    if (!(w >= 0.0)) throw ConstructionError("mixture weight must be nonnegative");
    members.push_back(member(theta));
    weights.push_back(w);
    total += w;
  }
  if (!(total > 0.0)) throw ConstructionError("mixture weights integrate to zero");
  for (double& w : weights) w /= total;
  return {std::make_shared<MixtureImpl>(std::move(members), std::move(weights)), Kind::Mixture,
          std::move(name)};
}

Distortion Distortion::amh_uniform_mixture() {
  return {std::make_shared<AmhUniformMixtureImpl>(), Kind::AmhUniformMixture, "amh-uniform-mixture"};
}

Distortion Distortion::custom(std::string name, std::function<double(double)> cdf,
                              std::function<double(double)> density,
                              std::function<double(double)> quantile) {
  if (!cdf) throw ConstructionError("custom distortion needs a cdf");
  return {std::make_shared<CustomImpl>(std::move(cdf), std::move(density), std::move(quantile)),
          Kind::Custom, std::move(name)};
}

double Distortion::cdf(double u) const {
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return 1.0;
  return impl_->cdf(u);
}

double Distortion::cdf_log(double log_u) const {
  if (log_u == -kInf) return 0.0;
  if (log_u >= 0.0) return 1.0;
  return impl_->cdf_log(log_u);
}

double Distortion::density(double u) const { return impl_->density(std::clamp(u, 0.0, 1.0)); }

double Distortion::quantile(double q) const {
  if (!(q > 0.0)) return 0.0;
  if (q >= 1.0) return 1.0;
  return impl_->quantile(q);
}

double Distortion::quantile_log(double q) const {
  if (!(q > 0.0)) return -kInf;
  if (q >= 1.0) return 0.0;
  return impl_->quantile_log(q);
}

double Distortion::log_scale_density(double log_u) const {
  if (log_u == -kInf || log_u >= 0.0) return 0.0;
  return impl_->log_scale_density(log_u);
}

double limit_law_cdf(const Distortion& d, const GevParams& h, double x) {
  return d.cdf_log(gev_log_cdf(h, x));
}

double limit_law_quantile(const Distortion& d, const GevParams& h, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("limit_law_quantile: q must lie in (0,1), got " + std::to_string(q));
  }
  return gev_quantile_log(h, d.quantile_log(q));
}

namespace {

// x in [grid.front(), grid.back()] with g(x) = target, g nondecreasing.
double solve_on_grid(const std::function<double(double)>& g, double target,
                     std::span<const double> grid) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (g(grid[i]) <= target && g(grid[i + 1]) >= target) {
      return numerics::bisect_increasing(g, target, grid[i], grid[i + 1]);
    }
  }
  throw ContractError("max_stability_defect: G does not cross level " + std::to_string(target) +
                      " on the grid");
}

}  // namespace

double max_stability_defect(const std::function<double(double)>& g_cdf, int k,
                            std::span<const double> grid) {
  if (k < 2) throw ContractError("max_stability_defect: k must be >= 2");
  if (grid.size() < 2) throw ContractError("max_stability_defect: grid too small");
  const double x25 = solve_on_grid(g_cdf, std::pow(0.25, 1.0 / k), grid);
  const double x75 = solve_on_grid(g_cdf, std::pow(0.75, 1.0 / k), grid);
  const double y25 = solve_on_grid(g_cdf, 0.25, grid);
  const double y75 = solve_on_grid(g_cdf, 0.75, grid);
  if (!(x75 > x25)) throw ContractError("max_stability_defect: degenerate G on the grid");
  const double a = (y75 - y25) / (x75 - x25);
  const double b = y25 - a * x25;
  double defect = 0.0;
  for (double x : grid) {
    defect = std::max(defect, std::abs(std::pow(g_cdf(x), k) - g_cdf(a * x + b)));
  }
  return defect;
}

}  // namespace maxdep
