#pragma once

// Small helpers shared by the unit tests: a seeded parameter generator for
// property tests and a few independent numerical oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testing_support {

// Hand-rolled property generator: deterministic per seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1.0);
  return g;
}

// Brute-force maximum: dense grid plus ternary refinement around the best
// point. Deliberately independent of the library's golden-section search.
inline double brute_max(const std::function<double(double)>& f, double lo, double hi,
                        int points = 100001) {
  int best = 0;
  double best_v = -1e300;
  for (int i = 0; i < points; ++i) {
    const double v = f(lo + (hi - lo) * i / (points - 1.0));
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / (points - 1.0);
  double b = lo + (hi - lo) * std::min(points - 1, best + 1) / (points - 1.0);
  for (int it = 0; it < 300; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  return std::max(best_v, f(0.5 * (a + b)));
}

// Composite Simpson rule, independent of the library's quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace testing_support
