#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace maxdep {

enum class GeneratorFamily {
  Independence,
  AliMikhailHaq,
  Clayton,
  Frank,
  GumbelHougaard,
  Joe,
  Ballerini,  // psi(t) = 1 / (t (1 + 1/t)^{1+t}); rho = 1 yet -psi'(0) = inf
  FromF,      // psi = exp(-f)
  Scaled,     // psi(c t)
};

std::string to_string(GeneratorFamily family);
GeneratorFamily generator_family_from_string(const std::string& name);

// Archimedean generator psi: [0, inf) -> [0, 1], psi(0) = 1, strictly
// decreasing to 0. Besides psi itself the generator exposes the pieces the
// limit theory needs in a numerically careful form: 1 - psi(t) for small t,
// psi^{-1}(e^l) for l near 0, and log(-psi'(t)) for large t.
//
// Values are immutable and cheap to copy (shared implementation).
class ArchGenerator {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual double psi(double t) const = 0;
    virtual double one_minus_psi(double t) const { return 1.0 - psi(t); }
    virtual double psi_inv(double u) const = 0;
    // psi^{-1}(exp(log_u)); override when exp() would lose the distance to 1.
    virtual double psi_inv_log(double log_u) const;
    virtual double psi_prime(double t) const = 0;
    virtual double log_neg_psi_prime(double t) const;
  };

  ArchGenerator(std::shared_ptr<const Impl> impl, GeneratorFamily family, double theta,
                double rho, double neg_psi_prime_0, std::string name);

  double psi(double t) const;
  double one_minus_psi(double t) const;
  // psi_inv(0) = +inf (no built-in generator reaches 0 at a finite point).
  double psi_inv(double u) const;
  double psi_inv_log(double log_u) const;
  double psi_prime(double t) const;
  double log_neg_psi_prime(double t) const;

  GeneratorFamily family() const { return family_; }
  double theta() const { return theta_; }
  // Index of regular variation of 1 - psi(1/.) (RV_{-rho}), in (0, 1].
  double rho() const { return rho_; }
  // -psi'(0); +inf when the derivative blows up at zero.
  double neg_psi_prime_0() const { return neg_psi_prime_0_; }
  const std::string& name() const { return name_; }

 private:
  std::shared_ptr<const Impl> impl_;
  GeneratorFamily family_;
  double theta_;
  double rho_;
  double neg_psi_prime_0_;
  std::string name_;
};

// Table 1 generators. Parameter ranges: AMH (0,1), Clayton > 0, Frank > 0,
// Gumbel-Hougaard >= 1, Joe > 1; Independence and Ballerini ignore theta.
ArchGenerator builtin_generator(GeneratorFamily family, double theta = 0.0);

// psi(t) = exp(-f(t)) for f(0) = 0, f increasing to infinity with f' positive
// and nonincreasing. The checks run on a 1000-point log grid only; complete
// monotonicity of f' is the caller's responsibility. When `rho` is omitted it
// is estimated with rv_index_estimate(lambda = 2, t = 1e8).
ArchGenerator generator_from_f(std::function<double(double)> f,
                               std::function<double(double)> f_prime,
                               std::optional<double> rho = std::nullopt,
                               std::string name = "from-f");

// psi_c(t) = psi(c t): same copula, different limit distortion scale.
ArchGenerator scale_generator(const ArchGenerator& g, double c);

// -log[(1 - psi(1/(lambda t))) / (1 - psi(1/t))] / log(lambda) -> rho.
double rv_index_estimate(const ArchGenerator& g, double lambda, double t);

// t^rho (1 - psi(1/t)) for each t; bounded away from 0 and inf iff the
// polynomial growth condition holds with this rho.
std::vector<double> polynomial_growth_trajectory(const ArchGenerator& g, double rho,
                                                 std::span<const double> t_values);

}  // namespace maxdep
