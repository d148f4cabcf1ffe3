#include <algorithm>
#include <cmath>

#include "maxdep/errors.hpp"
#include "maxdep/samplers.hpp"

namespace maxdep {

namespace {

void check_reps(std::uint64_t reps) {
  if (reps < 1000) throw ContractError("Monte Carlo estimators need reps >= 1000");
}

}  // namespace

McEstimate binomial_estimate(std::uint64_t hits, std::uint64_t reps) {
  const double p = static_cast<double>(hits) / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps)), reps};
}

std::vector<double> native_maxima(const SequenceModel& model, std::size_t n, std::uint64_t reps,
                                  std::uint64_t seed, const ExecPolicy& policy) {
  if (n == 0) throw DomainError("native_maxima needs n >= 1");
  std::vector<double> maxima(reps);
  run_blocks(reps, policy, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> path(n);
    for (std::uint64_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      model.sample_native(rng, path);
      maxima[i] = *std::max_element(path.begin(), path.end());
    }
  });
  return maxima;
}

McEstimate empirical_diagonal(const SequenceModel& model, std::size_t n, double u,
                              std::uint64_t reps, std::uint64_t seed, const ExecPolicy& policy) {
  check_reps(reps);
  const auto maxima = native_maxima(model, n, reps, seed, policy);
  std::uint64_t hits = 0;
  for (double m : maxima) hits += model.native_cdf(m) <= u ? 1 : 0;
  return binomial_estimate(hits, reps);
}

std::vector<double> normalized_maxima(const SequenceModel& model,
                                      const std::optional<MarginFamily>& margin, std::size_t n,
                                      std::uint64_t reps, double c_n, double d_n,
                                      std::uint64_t seed, const ExecPolicy& policy) {
  if (!(c_n > 0.0)) throw ContractError("normalized_maxima needs c_n > 0");
  auto maxima = native_maxima(model, n, reps, seed, policy);
  for (double& m : maxima) {
    // The margin map is increasing, so transforming the native maximum is
    // the same as taking the maximum of the transformed path.
    const double x = margin ? margin->from_uniform(model.native_cdf(m), model.native_survival(m)) : m;
    m = (x - d_n) / c_n;
  }
  return maxima;
}

std::vector<McEstimate> ecdf(std::span<const double> sample, std::span<const double> x_grid) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<McEstimate> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    const auto hits = static_cast<std::uint64_t>(
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    out.push_back(binomial_estimate(hits, sorted.size()));
  }
  return out;
}

std::vector<McEstimate> normalized_max_ecdf(const SequenceModel& model,
                                            const std::optional<MarginFamily>& margin,
                                            std::size_t n, std::uint64_t reps, double c_n,
                                            double d_n, std::span<const double> x_grid,
                                            std::uint64_t seed, const ExecPolicy& policy) {
  check_reps(reps);
  const auto sample = normalized_maxima(model, margin, n, reps, c_n, d_n, seed, policy);
  return ecdf(sample, x_grid);
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double g = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / m - g, g - static_cast<double>(i) / m});
  }
  return d;
}

}  // namespace maxdep
