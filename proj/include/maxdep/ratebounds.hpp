#pragma once

#include <cstdint>

// Exact suprema of |u^a - u^b| on [0,1] and the uniform convergence-rate
// bounds built from them. Bounds outside a proof's validity window are still
// returned (they remain bounds, possibly vacuous) with valid = false.

namespace maxdep {

struct PowerDiffSup {
  double value;
  double argmax;
};

// sup_u |u^a - u^b| = (1 - a/b)(b/a)^{a/(a-b)} at u* = (b/a)^{1/(a-b)}; 0 < a < b.
PowerDiffSup sup_power_diff(double a, double b);

struct Bound {
  double bound;
  bool valid;
};

// 3 e^{-1} |b_n| / a, valid for b_n in (-a log 2, a log 2 / (1 - log 2)).
Bound small_gap_bound(double a, double b_n);

// 3 e^{-1} b / a_n, valid for a_n >= b (1 - log 2) / log 2.
Bound large_n_bound(double b, double a_n);

// |u - u^{r/ceil(r)}| <= 3 e^{-1} / ceil(r).
double ceil_rate_bound(double r_n);

// |F^{ceil(r)} - F^r| <= 3 e^{-1} / r.
double ceil_power_cdf_bound(double r_n);

struct RateBoundReport {
  double bound = 0.0;
  double beta_star = 0.0;
  double ceiling = 0.0;     // 3 e^{-1} 1{r_n not integer} / r_n
  double distortion = 0.0;  // s(n), or gamma(n) for the reverse bound
  double K = 1.0;
  double kappa = 1.0;
  bool valid = true;

  // K (beta* + ceiling)^kappa + distortion.
  double recompute() const;
};

// K (beta*(ceil r_n) + 3 e^{-1} 1{r_n not in N} / r_n)^kappa + s(n).
RateBoundReport composite_rate_bound(double beta_star_n, double s_n, double K, double kappa,
                                     double r_n);

// Same form with gamma(n) in place of s(n): bounds sup |D_n^r - D| from the
// maxima side.
RateBoundReport reverse_bound(double beta_star_n, double gamma_n, double K, double kappa,
                              double r_n);

// Moving maximum: k/(n+k) (1 + k/n)^{-n/k}; 0 for k = 0.
double movingmax_s(std::uint64_t n, int k);

struct CuadrasAugeSup {
  double exact;
  double bound;
};

// With q = (1-theta)^n: exact q (1-q)^{1/q - 1}, bound 3 e^{-1} q.
CuadrasAugeSup cuadras_auge_sup(std::uint64_t n, double theta);

}  // namespace maxdep
