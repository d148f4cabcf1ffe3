#include "maxdep/diagonals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxdep/errors.hpp"
#include "maxdep/numerics.hpp"

namespace maxdep {

namespace {

constexpr std::uint64_t kEfgmExactMaxN = 2000;

void check_n(std::uint64_t n) {
  if (n == 0) throw DomainError("diagonal index n must be >= 1");
}

std::string with_param(const std::string& name, double p) {
  return name + "(" + std::to_string(p) + ")";
}

}  // namespace

RateFn rate_linear() {
  return {[](std::uint64_t n) { return static_cast<double>(n); }, "n"};
}

RateFn rate_power(double exponent) {
  if (!(exponent > 0.0)) throw ConstructionError("rate exponent must be positive");
  return {[exponent](std::uint64_t n) { return std::pow(static_cast<double>(n), exponent); },
          "n^" + std::to_string(exponent)};
}

RateFn rate_logistic(double theta) {
  if (!(theta >= 1.0)) throw ConstructionError("logistic schedule needs theta >= 1");
  RateFn r = rate_power(1.0 / theta);
  r.name = "n^(1/" + std::to_string(theta) + ")";
  return r;
}

DiagonalFamily DiagonalFamily::independence() {
  DiagonalFamily f(Kind::Independence, "independence",
                   [](std::uint64_t n, double l) { return std::exp(static_cast<double>(n) * l); },
                   true);
  f.rate_ = rate_linear();
  f.limit_ = Distortion::power(1.0);
  return f;
}

DiagonalFamily DiagonalFamily::comonotone() {
  return {Kind::Comonotone, "comonotone", [](std::uint64_t, double l) { return std::exp(l); },
          true};
}

DiagonalFamily DiagonalFamily::power_diagonal(RateFn eta) {
  DiagonalFamily f(Kind::PowerDiagonal, "power-diagonal[" + eta.name + "]",
                   [eta](std::uint64_t n, double l) { return std::exp(eta(n) * l); }, true);
  f.rate_ = std::move(eta);
  f.limit_ = Distortion::power(1.0);
  return f;
}

DiagonalFamily DiagonalFamily::moving_max(int k) {
  if (k < 0) throw ConstructionError("moving maximum needs k >= 0");
  const double kk = k;
  DiagonalFamily f(Kind::MovingMax, "moving-max(" + std::to_string(k) + ")",
                   [kk](std::uint64_t n, double l) {
                     return std::exp((static_cast<double>(n) + kk) / (kk + 1.0) * l);
                   },
                   k == 0);
  f.rate_ = rate_linear();
  f.limit_ = Distortion::power(1.0 / (kk + 1.0));
  return f;
}

DiagonalFamily DiagonalFamily::cuadras_auge(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConstructionError("Cuadras-Auge needs theta in (0,1)");
  const double log1m = std::log1p(-theta);
  auto eta = [theta, log1m](std::uint64_t n) {
    return -std::expm1(static_cast<double>(n) * log1m) / theta;
  };
  DiagonalFamily f(Kind::CuadrasAuge, with_param("cuadras-auge", theta),
                   [eta](std::uint64_t n, double l) { return std::exp(eta(n) * l); }, false);
  f.finite_rate_ = true;
  f.rate_ = RateFn{eta, "eta_n"};
  f.limit_ = Distortion::power(1.0);
  return f;
}

DiagonalFamily DiagonalFamily::archimedean(const ArchGenerator& g) {
  DiagonalFamily f(Kind::Archimedean, "archimedean[" + g.name() + "]",
                   [g](std::uint64_t n, double l) {
                     return g.psi(static_cast<double>(n) * g.psi_inv_log(l));
                   },
                   true);
  f.rate_ = RateFn{[g](std::uint64_t n) {
                     return 1.0 / g.one_minus_psi(1.0 / static_cast<double>(n));
                   },
                   "1/(1-psi(1/n))"};
  f.limit_ = Distortion::archimedean_limit(g);
  return f;
}

DiagonalFamily DiagonalFamily::archimax(const ArchGenerator& g, RateFn eta) {
  DiagonalFamily f(Kind::Archimax, "archimax[" + g.name() + "," + eta.name + "]",
                   [g, eta](std::uint64_t n, double l) { return g.psi(eta(n) * g.psi_inv_log(l)); },
                   false);
  f.rate_ = RateFn{[g, eta](std::uint64_t n) { return 1.0 / g.one_minus_psi(1.0 / eta(n)); },
                   "1/(1-psi(1/eta_n))"};
  f.limit_ = Distortion::archimedean_limit(g);
  return f;
}

DiagonalFamily DiagonalFamily::efgm_mixture(double theta) {
  if (!(std::abs(theta) <= 1.0)) throw ConstructionError("EFGM needs theta in [-1,1]");
  // The integrand is a degree-n polynomial in t: Gauss-Legendre with
  // ceil((n+1)/2) nodes is exact. Beyond kEfgmExactMaxN use adaptive quadrature.
  auto eval = [theta](std::uint64_t n, double l) {
    const double nn = static_cast<double>(n);
    const double um1 = std::expm1(l);
    auto integrand = [&](double t) {
      return std::exp(nn * (l + std::log1p(theta * um1 * (2.0 * t - 1.0))));
    };
    if (theta == 0.0) return std::exp(nn * l);
    if (n <= kEfgmExactMaxN) {
      return numerics::integrate_gauss_legendre(integrand, 0.0, 1.0, (n + 2) / 2);
    }
    return numerics::integrate_adaptive(integrand, 0.0, 1.0, 1e-10);
  };
  DiagonalFamily f(Kind::EfgmMixture, with_param("efgm", theta), eval, true);
  f.rate_ = rate_linear();
  f.limit_ = theta == 0.0 ? Distortion::power(1.0) : Distortion::efgm_limit(theta);
  return f;
}

double DiagonalFamily::value(std::uint64_t n, double u) const {
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return 1.0;
  return value_log(n, std::log(u));
}

double DiagonalFamily::value_log(std::uint64_t n, double log_u) const {
  check_n(n);
  if (log_u == -std::numeric_limits<double>::infinity()) return 0.0;
  if (log_u >= 0.0) return 1.0;
  return std::clamp(eval_(n, log_u), 0.0, 1.0);
}

double power_distortion(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n, double u) {
  if (!(u > 0.0)) return 0.0;
  if (u >= 1.0) return 1.0;
  return fam.value_log(n, std::log(u) / r(n));
}

double distortion_sup_distance(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n,
                               const Distortion& d, std::size_t grid_size) {
  if (grid_size < 100) throw ContractError("distortion_sup_distance: grid_size must be >= 100");
  const double rn = r(n);
  auto gap = [&](double u) {
    if (!(u > 0.0) || u >= 1.0) return 0.0;
    const double l = std::log(u);
    return std::abs(fam.value_log(n, l / rn) - d.cdf_log(l));
  };
  return numerics::grid_refined_max(gap, 0.0, 1.0, grid_size).value;
}

std::vector<double> rate_scaling_limit(const RateFn& r, double t,
                                       std::span<const std::uint64_t> n_values) {
  if (!(t > 0.0)) throw DomainError("rate_scaling_limit: t must be positive");
  std::vector<double> out;
  out.reserve(n_values.size());
  for (std::uint64_t n : n_values) {
    const auto m = static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * t));
    out.push_back(r(std::max<std::uint64_t>(m, 1)) / r(n));
  }
  return out;
}

double mixing_discrepancy(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n, double t1,
                          double t2, double u) {
  if (!fam.exchangeable()) {
    throw ContractError("mixing_discrepancy needs an exchangeable family, got " + fam.name());
  }
  if (!(t1 > 0.0 && t2 > 0.0 && t1 + t2 < 1.0)) {
    throw DomainError("mixing_discrepancy: need t1, t2 > 0 with t1 + t2 < 1");
  }
  if (!(u > 0.0 && u < 1.0)) throw DomainError("mixing_discrepancy: u must lie in (0,1)");
  const double nn = static_cast<double>(n);
  const auto a = static_cast<std::uint64_t>(std::ceil(nn * t1));
  const auto b = static_cast<std::uint64_t>(std::ceil(nn * t2));
  const double lv = std::log(u) / r(n);
  return std::abs(fam.value_log(a + b, lv) - fam.value_log(a, lv) * fam.value_log(b, lv));
}

double empirical_diagonal_distance(const DiagonalFamily& fam,
                                   std::span<const DiagonalSample> samples) {
  double z = 0.0;
  for (const auto& s : samples) {
    if (!(s.std_error > 0.0)) {
      throw ContractError("empirical_diagonal_distance: standard error must be positive");
    }
    z = std::max(z, std::abs(s.p_hat - fam.value(s.n, s.u)) / s.std_error);
  }
  return z;
}

}  // namespace maxdep
