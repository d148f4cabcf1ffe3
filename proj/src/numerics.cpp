#include "maxdep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace maxdep::numerics {

Extremum golden_section_max(const std::function<double(double)>& f, double lo,
                            double hi, double x_tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > x_tol * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Extremum best{c, fc};
  if (fd > best.value) best = {d, fd};
  for (double x : {lo, hi, 0.5 * (a + b)}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

Extremum grid_refined_max(const std::function<double(double)>& f, double lo,
                          double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grid_refined_max: need >= 2 points");
  const double h = (hi - lo) / static_cast<double>(points - 1);
  std::size_t best_i = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? hi : lo + h * static_cast<double>(i);
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = best_i == 0 ? lo : lo + h * static_cast<double>(best_i - 1);
  const double b = best_i + 1 >= points ? hi : lo + h * static_cast<double>(best_i + 1);
  Extremum refined = golden_section_max(f, a, b);
  if (refined.value < best_v) {
    refined = {lo + h * static_cast<double>(best_i), best_v};
  }
  return refined;
}

double bisect_increasing(const std::function<double(double)>& f, double target,
                         double lo, double hi, double x_tol, int max_iter) {
  for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

GaussLegendreRule compute_rule(std::size_t order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const auto n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // One more derivative evaluation at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= order; ++k) {
      const auto kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GaussLegendreRule>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussLegendreRule>(compute_rule(order));
  std::lock_guard lock(mutex);
  return cache.emplace(order, std::move(rule)).first->second;
}

double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, std::size_t order) {
  const auto rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    sum += rule->weights[i] * f(mid + half * rule->nodes[i]);
  }
  return half * sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, tol);
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           double tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double s) { return f(a + s); }, tol);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace maxdep::numerics
