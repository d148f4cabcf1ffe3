#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxdep/diagonals.hpp"
#include "maxdep/generators.hpp"
#include "maxdep/margins.hpp"
#include "maxdep/rng.hpp"

namespace maxdep {

// Samplable dependent sequence. Each model draws its path on a "native"
// scale whose marginal law is known in closed form (including an accurate
// survival function), so maxima are taken natively and mapped to the target
// margin once: X = F^{-1}(F_native(Y)).
class SequenceModel {
 public:
  enum class Kind {
    Iid,
    MovingMax,
    ArchimedeanFrailty,
    ArchimaxLogistic,
    GaussianAR1,
    EfgmExchangeable,
    BermanEquicorrelated,
  };

  static SequenceModel iid();
  // Y_i = max(Z_{i-k}, ..., Z_i) / (k+1), Z iid unit Frechet.
  static SequenceModel moving_max(int k);
  // U_i = psi(E_i / V) with frailty V; see frailty_sample for the laws.
  static SequenceModel archimedean_frailty(GeneratorFamily family, double theta);
  // U_i = psi(1 / (V Z_i)) with (Z_i) logistic (Gumbel-Hougaard, theta_stdf)
  // dependent unit Frechet.
  static SequenceModel archimax_logistic(GeneratorFamily family, double theta_gen,
                                         double theta_stdf);
  // Stationary Y_i = phi Y_{i-1} + sigma Z_i.
  static SequenceModel gaussian_ar1(double phi, double sigma = 1.0);
  // Exchangeable EFGM mixture: U_i | W iid with cdf u (1 + theta (2W-1)(u-1)).
  static SequenceModel efgm(double theta);
  // Y_i = sqrt(rho) Z_0 + sqrt(1-rho) Z_i; native margin N(0,1).
  static SequenceModel berman(double rho);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // k, theta, phi or rho depending on the kind.
  double param() const { return param_; }
  const std::optional<ArchGenerator>& generator() const { return generator_; }

  // n native values into out (out.size() == n).
  void sample_native(RngStream& rng, std::span<double> out) const;
  double native_cdf(double y) const;
  double native_survival(double y) const;

  // Analytic diagonal of the model's copula when one exists.
  std::optional<DiagonalFamily> diagonal() const;

 private:
  SequenceModel(Kind kind, std::string name, double param)
      : kind_(kind), name_(std::move(name)), param_(param) {}

  double frailty_sample(RngStream& rng) const;

  Kind kind_;
  std::string name_;
  double param_;
  double param2_ = 0.0;  // sigma (AR1) or theta_stdf (archimax)
  std::optional<ArchGenerator> generator_;
};

// Frailty V with E exp(-t V) = psi(t): Clayton Gamma(1/theta), Gumbel positive
// stable(1/theta), Frank log-series(1 - e^{-theta}), Joe Sibuya(1/theta), AMH
// geometric, Independence V = 1. Other generators throw ConstructionError.
double sample_frailty(const ArchGenerator& g, RngStream& rng);

// Path on the requested margin; nullopt keeps the native scale (the "raw"
// margin, e.g. the N(0,1) Berman sequence).
std::vector<double> sample_path(const SequenceModel& model,
                                const std::optional<MarginFamily>& margin, std::size_t n,
                                RngStream& rng);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t reps = 0;
};

McEstimate binomial_estimate(std::uint64_t hits, std::uint64_t reps);

// Parallel execution of rep loops. Rep i always draws from RngStream(seed, i)
// and writes slot i; reps are handed out in fixed blocks of kRepBlock, so the
// output never depends on the worker count.
struct ExecPolicy {
  enum class Mode { Serial, OpenMP };
  Mode mode = Mode::OpenMP;
  int workers = 0;  // 0: OpenMP default
};

inline constexpr std::uint64_t kRepBlock = 4096;

// body(begin, end) processes reps [begin, end).
using BlockBody = std::function<void(std::uint64_t, std::uint64_t)>;
void run_blocks_serial(std::uint64_t reps, const BlockBody& body);
void run_blocks_omp(std::uint64_t reps, int workers, const BlockBody& body);
void run_blocks(std::uint64_t reps, const ExecPolicy& policy, const BlockBody& body);

// Native-scale maxima M_i = max(Y_1..Y_n) for reps i = 0..reps-1.
std::vector<double> native_maxima(const SequenceModel& model, std::size_t n, std::uint64_t reps,
                                  std::uint64_t seed, const ExecPolicy& policy = {});

// P(max(U_1..U_n) <= u) on uniform margins.
McEstimate empirical_diagonal(const SequenceModel& model, std::size_t n, double u,
                              std::uint64_t reps, std::uint64_t seed,
                              const ExecPolicy& policy = {});

// (M_n - d_n) / c_n per rep, M_n on the requested margin (nullopt: native).
std::vector<double> normalized_maxima(const SequenceModel& model,
                                      const std::optional<MarginFamily>& margin, std::size_t n,
                                      std::uint64_t reps, double c_n, double d_n,
                                      std::uint64_t seed, const ExecPolicy& policy = {});

// Empirical cdf of `sample` at each grid point, with binomial errors.
std::vector<McEstimate> ecdf(std::span<const double> sample, std::span<const double> x_grid);

std::vector<McEstimate> normalized_max_ecdf(const SequenceModel& model,
                                            const std::optional<MarginFamily>& margin,
                                            std::size_t n, std::uint64_t reps, double c_n,
                                            double d_n, std::span<const double> x_grid,
                                            std::uint64_t seed, const ExecPolicy& policy = {});

// sup_x |F_n(x) - G(x)| for the empirical cdf of `sample` (exact KS statistic).
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

}  // namespace maxdep
