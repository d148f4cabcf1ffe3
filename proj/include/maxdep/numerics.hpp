#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace maxdep::numerics {

inline constexpr double kThreeOverE = 1.1036383235143269;  // 3 e^{-1}

struct Extremum {
  double x;
  double value;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol = 1e-14,
                            int max_iter = 200);

// Maximum of f over a uniform grid of `points` points on [lo, hi] (endpoints
// included), refined by golden-section search around the best grid point.
Extremum grid_refined_max(const std::function<double(double)>& f, double lo,
                          double hi, std::size_t points);

// Bisection for an increasing function: returns x in [lo, hi] with
// f(x) ~ target. Assumes f(lo) <= target <= f(hi).
double bisect_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double x_tol = 1e-15,
                         int max_iter = 200);

// Gauss-Legendre rule on [-1, 1]. Nodes are computed once per order and
// cached; the returned rule is immutable and safe to share across threads.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
std::shared_ptr<const GaussLegendreRule> gauss_legendre(std::size_t order);

// Integral of f over [a, b] with an `order`-point Gauss-Legendre rule.
double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, std::size_t order);

// Adaptive integration over [a, b]; tolerant of integrable endpoint
// singularities (tanh-sinh).
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12);

// Integral of f over [a, inf) (exp-sinh).
double integrate_half_line(const std::function<double(double)>& f, double a,
                           double tol = 1e-12);

// Uniform grid of `count` points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace maxdep::numerics
