#include "maxdep/generators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "maxdep/errors.hpp"

namespace maxdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves f(t) = y for increasing f by bisection in log t. Starts on
// [1e-12, 1e12] and widens the bracket if y falls outside it.
double invert_increasing_log(const std::function<double(double)>& f, double y) {
  if (y <= 0.0) return 0.0;
  if (y == kInf) return kInf;
  double lo = std::log(1e-12);
  double hi = std::log(1e12);
  while (f(std::exp(lo)) > y && lo > -700.0) lo -= 20.0;
  while (f(std::exp(hi)) < y && hi < 700.0) hi += 20.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(std::exp(mid)) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

class IndependenceImpl final : public ArchGenerator::Impl {
 public:
  double psi(double t) const override { return std::exp(-t); }
  double one_minus_psi(double t) const override { return -std::expm1(-t); }
  double psi_inv(double u) const override { return -std::log(u); }
  double psi_inv_log(double l) const override { return -l; }
  double psi_prime(double t) const override { return -std::exp(-t); }
  double log_neg_psi_prime(double t) const override { return -t; }
};

class AmhImpl final : public ArchGenerator::Impl {
 public:
  explicit AmhImpl(double theta) : th_(theta) {}
  double psi(double t) const override {
    const double e = std::exp(-t);
    return (1.0 - th_) * e / (1.0 - th_ * e);
  }
  double one_minus_psi(double t) const override {
    const double em1 = std::expm1(t);
    return em1 / (em1 + 1.0 - th_);
  }
  double psi_inv(double u) const override { return std::log1p(-th_ * (1.0 - u)) - std::log(u); }
  double psi_inv_log(double l) const override { return std::log1p(th_ * std::expm1(l)) - l; }
  double psi_prime(double t) const override {
    const double e = std::exp(-t);
    const double den = 1.0 - th_ * e;
    return -(1.0 - th_) * e / (den * den);
  }
  double log_neg_psi_prime(double t) const override {
    return std::log1p(-th_) - t - 2.0 * std::log1p(-th_ * std::exp(-t));
  }

 private:
  double th_;
};

class ClaytonImpl final : public ArchGenerator::Impl {
 public:
  explicit ClaytonImpl(double theta) : th_(theta) {}
  double psi(double t) const override { return std::exp(-std::log1p(t) / th_); }
  double one_minus_psi(double t) const override { return -std::expm1(-std::log1p(t) / th_); }
  double psi_inv(double u) const override { return std::expm1(-th_ * std::log(u)); }
  double psi_inv_log(double l) const override { return std::expm1(-th_ * l); }
  double psi_prime(double t) const override {
    return -std::exp(-(1.0 / th_ + 1.0) * std::log1p(t)) / th_;
  }
  double log_neg_psi_prime(double t) const override {
    return -std::log(th_) - (1.0 / th_ + 1.0) * std::log1p(t);
  }

 private:
  double th_;
};

class FrankImpl final : public ArchGenerator::Impl {
 public:
  explicit FrankImpl(double theta) : th_(theta), c_(-std::expm1(-theta)) {}
  double psi(double t) const override {
    const double a = c_ * std::exp(-t);
    if (a < 0.5) return -std::log1p(-a) / th_;
    // 1 - (1 - e^{-theta}) e^{-t} = (1 - e^{-t}) + e^{-theta-t}, both terms positive.
    return -std::log(-std::expm1(-t) + std::exp(-th_ - t)) / th_;
  }
  double one_minus_psi(double t) const override {
    return std::log1p(std::expm1(th_) * -std::expm1(-t)) / th_;
  }
  double psi_inv(double u) const override {
    if (u > 0.5) return psi_inv_log(std::log(u));
    return -std::log(std::expm1(-th_ * u) / std::expm1(-th_));
  }
  double psi_inv_log(double l) const override {
    const double w = -std::expm1(l);  // 1 - u
    if (w > 0.5) return psi_inv(std::exp(l));
    return -std::log1p(std::exp(-th_) * std::expm1(th_ * w) / std::expm1(-th_));
  }
  double psi_prime(double t) const override {
    const double a = c_ * std::exp(-t);
    return -a / ((1.0 - a) * th_);
  }
  double log_neg_psi_prime(double t) const override {
    return std::log(c_) - t - std::log1p(-c_ * std::exp(-t)) - std::log(th_);
  }

 private:
  double th_;
  double c_;  // 1 - e^{-theta}
};

class GumbelImpl final : public ArchGenerator::Impl {
 public:
  explicit GumbelImpl(double theta) : th_(theta) {}
  double psi(double t) const override { return std::exp(-std::pow(t, 1.0 / th_)); }
  double one_minus_psi(double t) const override { return -std::expm1(-std::pow(t, 1.0 / th_)); }
  double psi_inv(double u) const override { return std::pow(-std::log(u), th_); }
  double psi_inv_log(double l) const override { return std::pow(-l, th_); }
  double psi_prime(double t) const override {
    const double s = std::pow(t, 1.0 / th_);
    return -s / (th_ * t) * std::exp(-s);
  }
  double log_neg_psi_prime(double t) const override {
    return -std::log(th_) + (1.0 / th_ - 1.0) * std::log(t) - std::pow(t, 1.0 / th_);
  }

 private:
  double th_;
};

class JoeImpl final : public ArchGenerator::Impl {
 public:
  explicit JoeImpl(double theta) : th_(theta) {}
  double psi(double t) const override { return -std::expm1(log_one_minus_exp(t) / th_); }
  double one_minus_psi(double t) const override {
    return std::exp(std::log(-std::expm1(-t)) / th_);
  }
  double psi_inv(double u) const override {
    return -std::log1p(-std::pow(1.0 - u, th_));
  }
  double psi_inv_log(double l) const override {
    return -std::log1p(-std::pow(-std::expm1(l), th_));
  }
  double psi_prime(double t) const override {
    return -std::exp(log_neg_psi_prime(t));
  }
  double log_neg_psi_prime(double t) const override {
    return -std::log(th_) + (1.0 / th_ - 1.0) * log_one_minus_exp(t) - t;
  }

 private:
  // log(1 - e^{-t}) without rounding e^{-t} to 1 (small t) or losing it (large t).
  static double log_one_minus_exp(double t) {
    return t > 1.0 ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
  }

  double th_;
};

// f(t) = (1+t) log(1+1/t) + log t, evaluated without cancellation on both
// sides of t = 1.
double ballerini_f(double t) {
  if (t <= 0.0) return 0.0;
  if (t < 1.0) return (1.0 + t) * std::log1p(t) - t * std::log(t);
  return (1.0 + t) * std::log1p(1.0 / t) + std::log(t);
}

class BalleriniImpl final : public ArchGenerator::Impl {
 public:
  double psi(double t) const override { return std::exp(-ballerini_f(t)); }
  double one_minus_psi(double t) const override { return -std::expm1(-ballerini_f(t)); }
  double psi_inv(double u) const override { return psi_inv_log(std::log(u)); }
  double psi_inv_log(double l) const override { return invert_increasing_log(ballerini_f, -l); }
  double psi_prime(double t) const override { return -std::log1p(1.0 / t) * psi(t); }
  double log_neg_psi_prime(double t) const override {
    return std::log(std::log1p(1.0 / t)) - ballerini_f(t);
  }
};

class FromFImpl final : public ArchGenerator::Impl {
 public:
  FromFImpl(std::function<double(double)> f, std::function<double(double)> fp)
      : f_(std::move(f)), fp_(std::move(fp)) {}
  double psi(double t) const override { return t <= 0.0 ? 1.0 : std::exp(-f_(t)); }
  double one_minus_psi(double t) const override { return t <= 0.0 ? 0.0 : -std::expm1(-f_(t)); }
  double psi_inv(double u) const override { return psi_inv_log(std::log(u)); }
  double psi_inv_log(double l) const override { return invert_increasing_log(f_, -l); }
  double psi_prime(double t) const override { return -fp_(t) * psi(t); }
  double log_neg_psi_prime(double t) const override { return std::log(fp_(t)) - f_(t); }

 private:
  std::function<double(double)> f_;
  std::function<double(double)> fp_;
};

class ScaledImpl final : public ArchGenerator::Impl {
 public:
  ScaledImpl(ArchGenerator base, double c) : base_(std::move(base)), c_(c) {}
  double psi(double t) const override { return base_.psi(c_ * t); }
  double one_minus_psi(double t) const override { return base_.one_minus_psi(c_ * t); }
  double psi_inv(double u) const override { return base_.psi_inv(u) / c_; }
  double psi_inv_log(double l) const override { return base_.psi_inv_log(l) / c_; }
  double psi_prime(double t) const override { return c_ * base_.psi_prime(c_ * t); }
  double log_neg_psi_prime(double t) const override {
    return std::log(c_) + base_.log_neg_psi_prime(c_ * t);
  }

 private:
  ArchGenerator base_;
  double c_;
};

std::string param_name(const std::string& family, double theta) {
  return family + "(" + std::to_string(theta) + ")";
}

}  // namespace

double ArchGenerator::Impl::psi_inv_log(double log_u) const { return psi_inv(std::exp(log_u)); }

double ArchGenerator::Impl::log_neg_psi_prime(double t) const { return std::log(-psi_prime(t)); }

ArchGenerator::ArchGenerator(std::shared_ptr<const Impl> impl, GeneratorFamily family,
                             double theta, double rho, double neg_psi_prime_0, std::string name)
    : impl_(std::move(impl)),
      family_(family),
      theta_(theta),
      rho_(rho),
      neg_psi_prime_0_(neg_psi_prime_0),
      name_(std::move(name)) {}

double ArchGenerator::psi(double t) const {
  if (t <= 0.0) return 1.0;
  if (t == kInf) return 0.0;
  return impl_->psi(t);
}

double ArchGenerator::one_minus_psi(double t) const {
  if (t <= 0.0) return 0.0;
  if (t == kInf) return 1.0;
  return impl_->one_minus_psi(t);
}

double ArchGenerator::psi_inv(double u) const {
  if (u >= 1.0) return 0.0;
  if (u <= 0.0) return kInf;
  return impl_->psi_inv(u);
}

double ArchGenerator::psi_inv_log(double log_u) const {
  if (log_u >= 0.0) return 0.0;
  if (log_u == -kInf) return kInf;
  return impl_->psi_inv_log(log_u);
}

double ArchGenerator::psi_prime(double t) const { return impl_->psi_prime(t); }

double ArchGenerator::log_neg_psi_prime(double t) const { return impl_->log_neg_psi_prime(t); }

std::string to_string(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::Independence: return "independence";
    case GeneratorFamily::AliMikhailHaq: return "amh";
    case GeneratorFamily::Clayton: return "clayton";
    case GeneratorFamily::Frank: return "frank";
    case GeneratorFamily::GumbelHougaard: return "gumbel";
    case GeneratorFamily::Joe: return "joe";
    case GeneratorFamily::Ballerini: return "ballerini";
    case GeneratorFamily::FromF: return "from-f";
    case GeneratorFamily::Scaled: return "scaled";
  }
  return "unknown";
}

GeneratorFamily generator_family_from_string(const std::string& name) {
  for (auto f : {GeneratorFamily::Independence, GeneratorFamily::AliMikhailHaq,
                 GeneratorFamily::Clayton, GeneratorFamily::Frank, GeneratorFamily::GumbelHougaard,
                 GeneratorFamily::Joe, GeneratorFamily::Ballerini}) {
    if (to_string(f) == name) return f;
  }
  if (name == "ali-mikhail-haq") return GeneratorFamily::AliMikhailHaq;
  if (name == "gumbel-hougaard" || name == "logistic") return GeneratorFamily::GumbelHougaard;
  throw ConstructionError("unknown generator family '" + name + "'");
}

ArchGenerator builtin_generator(GeneratorFamily family, double theta) {
  auto bad = [&](const char* range) {
    return ConstructionError(to_string(family) + " parameter must be " + range + ", got " +
                             std::to_string(theta));
  };
  switch (family) {
    case GeneratorFamily::Independence:
      return {std::make_shared<IndependenceImpl>(), family, 0.0, 1.0, 1.0, "independence"};
    case GeneratorFamily::AliMikhailHaq:
      if (!(theta > 0.0 && theta < 1.0)) throw bad("in (0,1)");
      return {std::make_shared<AmhImpl>(theta), family, theta, 1.0, 1.0 / (1.0 - theta),
              param_name("amh", theta)};
    case GeneratorFamily::Clayton:
      if (!(theta > 0.0) || !std::isfinite(theta)) throw bad("> 0");
      return {std::make_shared<ClaytonImpl>(theta), family, theta, 1.0, 1.0 / theta,
              param_name("clayton", theta)};
    case GeneratorFamily::Frank:
      if (!(theta > 0.0) || !(theta < 700.0)) throw bad("in (0, 700)");
      return {std::make_shared<FrankImpl>(theta), family, theta, 1.0, std::expm1(theta) / theta,
              param_name("frank", theta)};
    case GeneratorFamily::GumbelHougaard:
      if (!(theta >= 1.0) || !std::isfinite(theta)) throw bad(">= 1");
      return {std::make_shared<GumbelImpl>(theta), family, theta, 1.0 / theta,
              theta == 1.0 ? 1.0 : kInf, param_name("gumbel", theta)};
    case GeneratorFamily::Joe:
      if (!(theta > 1.0) || !std::isfinite(theta)) throw bad("> 1");
      return {std::make_shared<JoeImpl>(theta), family, theta, 1.0 / theta, kInf,
              param_name("joe", theta)};
    case GeneratorFamily::Ballerini:
      return {std::make_shared<BalleriniImpl>(), family, 0.0, 1.0, kInf, "ballerini"};
    case GeneratorFamily::FromF:
    case GeneratorFamily::Scaled:
      break;
  }
  throw ConstructionError("not a built-in generator family: " + to_string(family));
}

ArchGenerator generator_from_f(std::function<double(double)> f,
                               std::function<double(double)> f_prime,
                               std::optional<double> rho, std::string name) {
  if (!f || !f_prime) throw ConstructionError("generator_from_f: f and f' are required");
  const double f0 = f(0.0);
  if (std::isfinite(f0)) {
    if (std::abs(f0) > 1e-12) throw ConstructionError("generator_from_f: f(0) must be 0");
  } else if (!(std::abs(f(1e-100)) < 1e-6)) {
    throw ConstructionError("generator_from_f: f(t) must tend to 0 as t -> 0");
  }
  constexpr int kGrid = 1000;
  double prev_f = -kInf;
  double prev_fp = kInf;
  for (int k = 0; k < kGrid; ++k) {
    const double t = std::pow(10.0, -6.0 + 12.0 * k / (kGrid - 1));
    const double ft = f(t);
    const double fpt = f_prime(t);
    if (!(ft > prev_f)) throw ConstructionError("generator_from_f: f is not increasing on the grid");
    if (!(fpt > 0.0)) throw ConstructionError("generator_from_f: f' is not positive on the grid");
    if (fpt > prev_fp * (1.0 + 1e-12)) {
      throw ConstructionError("generator_from_f: f' is not nonincreasing on the grid");
    }
    prev_f = ft;
    prev_fp = fpt;
  }
  // -psi'(0) = lim f'(t); the limit is declared infinite when the probe is
  // huge or still growing between t = 1e-10 and t = 1e-14.
  const double d10 = f_prime(1e-10);
  const double d14 = f_prime(1e-14);
  const double neg_psi_prime_0 = (d10 > 1e12 || d14 > d10 * (1.0 + 1e-6)) ? kInf : d10;

  auto impl = std::make_shared<FromFImpl>(std::move(f), std::move(f_prime));
  ArchGenerator g(impl, GeneratorFamily::FromF, 0.0, rho.value_or(1.0), neg_psi_prime_0, name);
  if (rho) return g;
  const double estimate = rv_index_estimate(g, 2.0, 1e8);
  return {impl, GeneratorFamily::FromF, 0.0, estimate, neg_psi_prime_0, std::move(name)};
}

ArchGenerator scale_generator(const ArchGenerator& g, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("scale_generator: c must be positive, got " + std::to_string(c));
  }
  if (c == 1.0) return g;
  return {std::make_shared<ScaledImpl>(g, c), GeneratorFamily::Scaled, c, g.rho(),
          c * g.neg_psi_prime_0(), g.name() + "*" + std::to_string(c)};
}

double rv_index_estimate(const ArchGenerator& g, double lambda, double t) {
  if (!(lambda > 0.0) || lambda == 1.0) throw DomainError("rv_index_estimate: lambda must be > 0 and != 1");
  if (!(t >= 1e4)) throw DomainError("rv_index_estimate: t must be >= 1e4");
  const double num = g.one_minus_psi(1.0 / (lambda * t));
  const double den = g.one_minus_psi(1.0 / t);
  constexpr double kTiny = std::numeric_limits<double>::min();
  if (!(num > kTiny) || !(den > kTiny)) {
    throw PrecisionError("rv_index_estimate: 1 - psi underflows at t = " + std::to_string(t) +
                         "; use a larger lambda or extended-precision evaluation");
  }
  return -std::log(num / den) / std::log(lambda);
}

std::vector<double> polynomial_growth_trajectory(const ArchGenerator& g, double rho,
                                                 std::span<const double> t_values) {
  std::vector<double> out;
  out.reserve(t_values.size());
  for (double t : t_values) out.push_back(std::pow(t, rho) * g.one_minus_psi(1.0 / t));
  return out;
}

}  // namespace maxdep
