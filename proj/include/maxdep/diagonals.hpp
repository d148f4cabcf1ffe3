#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxdep/distortions.hpp"
#include "maxdep/generators.hpp"

namespace maxdep {

// Rate r: N -> (0, inf) used in D_n^r(u) = delta_n(u^{1/r_n}).
struct RateFn {
  std::function<double(std::uint64_t)> fn;
  std::string name;

  double operator()(std::uint64_t n) const { return fn(n); }
};

RateFn rate_linear();                 // r_n = n
RateFn rate_power(double exponent);   // r_n = n^exponent
RateFn rate_logistic(double theta);   // eta_n = n^{1/theta}, theta >= 1

// Copula diagonal delta_n(u) = C_n(u, ..., u) = P(max(U_1..U_n) <= u).
// Evaluation happens in log u so that u^{1/r_n} with huge r_n keeps its
// distance from 1.
class DiagonalFamily {
 public:
  enum class Kind {
    Independence,
    Comonotone,
    PowerDiagonal,
    MovingMax,
    CuadrasAuge,
    Archimedean,
    Archimax,
    EfgmMixture,
  };

  static DiagonalFamily independence();
  static DiagonalFamily comonotone();
  // delta_n(u) = u^{eta_n}.
  static DiagonalFamily power_diagonal(RateFn eta);
  // delta_n(u) = u^{(n+k)/(k+1)}.
  static DiagonalFamily moving_max(int k);
  // delta_n(u) = u^{(1-(1-theta)^n)/theta}, theta in (0,1).
  static DiagonalFamily cuadras_auge(double theta);
  // delta_n(u) = psi(n psi^{-1}(u)).
  static DiagonalFamily archimedean(const ArchGenerator& g);
  // delta_n(u) = psi(eta_n psi^{-1}(u)).
  static DiagonalFamily archimax(const ArchGenerator& g, RateFn eta);
  // delta_n(u) = int_0^1 (u + theta u (u-1)(2t-1))^n dt, theta in [-1,1].
  static DiagonalFamily efgm_mixture(double theta);

  double value(std::uint64_t n, double u) const;
  double value_log(std::uint64_t n, double log_u) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool exchangeable() const { return exchangeable_; }
  // Cuadras-Auge: the canonical rate converges to a finite limit and the
  // maxima limit is F^{1/theta} without any stabilization.
  bool finite_rate_regime() const { return finite_rate_; }
  const std::optional<RateFn>& canonical_rate() const { return rate_; }
  const std::optional<Distortion>& limit_distortion() const { return limit_; }

 private:
  using EvalLog = std::function<double(std::uint64_t, double)>;
  DiagonalFamily(Kind kind, std::string name, EvalLog eval, bool exchangeable)
      : kind_(kind), name_(std::move(name)), eval_(std::move(eval)), exchangeable_(exchangeable) {}

  Kind kind_;
  std::string name_;
  EvalLog eval_;
  bool exchangeable_;
  bool finite_rate_ = false;
  std::optional<RateFn> rate_;
  std::optional<Distortion> limit_;
};

// D_n^r(u) = delta_n(u^{1/r_n}).
double power_distortion(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n, double u);

// sup_u |D_n^r(u) - D(u)| over a uniform grid, refined by golden-section
// search around the grid maximizer. grid_size >= 100.
double distortion_sup_distance(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n,
                               const Distortion& d, std::size_t grid_size = 2001);

// r_{ceil(n t)} / r_n for each n.
std::vector<double> rate_scaling_limit(const RateFn& r, double t,
                                       std::span<const std::uint64_t> n_values);

// |delta_{a+b}(v) - delta_a(v) delta_b(v)| with a = ceil(n t1), b = ceil(n t2)
// and v = u^{1/r_n}. Nonzero limits mean the mixing condition D(u_n) fails.
// Throws ContractError for non-exchangeable families.
double mixing_discrepancy(const DiagonalFamily& fam, const RateFn& r, std::uint64_t n, double t1,
                          double t2, double u);

struct DiagonalSample {
  std::uint64_t n;
  double u;
  double p_hat;
  double std_error;
};

// max |p_hat - delta_n(u)| / se over the samples.
double empirical_diagonal_distance(const DiagonalFamily& fam,
                                   std::span<const DiagonalSample> samples);

}  // namespace maxdep
