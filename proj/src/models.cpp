#include <cmath>
#include <string>

#include "maxdep/errors.hpp"
#include "maxdep/samplers.hpp"

namespace maxdep {

namespace {

bool has_frailty(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::Independence:
    case GeneratorFamily::AliMikhailHaq:
    case GeneratorFamily::Clayton:
    case GeneratorFamily::Frank:
    case GeneratorFamily::GumbelHougaard:
    case GeneratorFamily::Joe:
      return true;
    default:
      return false;
  }
}

ArchGenerator sampleable_generator(GeneratorFamily family, double theta) {
  if (!has_frailty(family)) {
    throw ConstructionError("no frailty sampler for generator family " + to_string(family));
  }
  return builtin_generator(family, theta);
}

double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double sample_frailty(const ArchGenerator& g, RngStream& rng) {
  const double th = g.theta();
  switch (g.family()) {
    case GeneratorFamily::Independence: return 1.0;
    case GeneratorFamily::AliMikhailHaq: return variates::geometric(rng, th);
    case GeneratorFamily::Clayton: return variates::gamma(rng, 1.0 / th);
    case GeneratorFamily::Frank: return variates::log_series(rng, -std::expm1(-th));
    case GeneratorFamily::GumbelHougaard: return variates::positive_stable(rng, 1.0 / th);
    case GeneratorFamily::Joe: return variates::sibuya(rng, 1.0 / th);
    default: break;
  }
  throw ConstructionError("no frailty sampler for generator " + g.name());
}

SequenceModel SequenceModel::iid() { return {Kind::Iid, "iid", 0.0}; }

SequenceModel SequenceModel::moving_max(int k) {
  if (k < 0) throw ConstructionError("moving maximum needs k >= 0");
  return {Kind::MovingMax, "moving-max(" + std::to_string(k) + ")", static_cast<double>(k)};
}

SequenceModel SequenceModel::archimedean_frailty(GeneratorFamily family, double theta) {
  auto g = sampleable_generator(family, theta);
  SequenceModel m(Kind::ArchimedeanFrailty, "frailty[" + g.name() + "]", theta);
  m.generator_ = std::move(g);
  return m;
}

SequenceModel SequenceModel::archimax_logistic(GeneratorFamily family, double theta_gen,
                                               double theta_stdf) {
  if (!(theta_stdf >= 1.0) || !std::isfinite(theta_stdf)) {
    throw ConstructionError("logistic stdf needs theta >= 1");
  }
  auto g = sampleable_generator(family, theta_gen);
  SequenceModel m(Kind::ArchimaxLogistic,
                  "archimax[" + g.name() + ",logistic(" + std::to_string(theta_stdf) + ")]",
                  theta_gen);
  m.param2_ = theta_stdf;
  m.generator_ = std::move(g);
  return m;
}

SequenceModel SequenceModel::gaussian_ar1(double phi, double sigma) {
  if (!(std::abs(phi) < 1.0)) throw ConstructionError("AR(1) needs |phi| < 1");
  if (!(sigma > 0.0)) throw ConstructionError("AR(1) needs sigma > 0");
  SequenceModel m(Kind::GaussianAR1, "ar1(" + std::to_string(phi) + ")", phi);
  m.param2_ = sigma;
  return m;
}

SequenceModel SequenceModel::efgm(double theta) {
  if (!(std::abs(theta) <= 1.0)) throw ConstructionError("EFGM needs theta in [-1,1]");
  return {Kind::EfgmExchangeable, "efgm(" + std::to_string(theta) + ")", theta};
}

SequenceModel SequenceModel::berman(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ConstructionError("Berman sequence needs rho in (0,1)");
  return {Kind::BermanEquicorrelated, "berman(" + std::to_string(rho) + ")", rho};
}

void SequenceModel::sample_native(RngStream& rng, std::span<double> out) const {
  const std::size_t n = out.size();
  switch (kind_) {
    case Kind::Iid:
      for (auto& y : out) y = variates::exponential(rng);
      return;
    case Kind::MovingMax: {
      const auto k = static_cast<std::size_t>(param_);
      const double scale = 1.0 / (param_ + 1.0);
      // Sliding window over Z_{1-k}, ..., Z_n; k is small in practice.
      std::vector<double> z(n + k);
      for (auto& v : z) v = 1.0 / variates::exponential(rng);
      for (std::size_t i = 0; i < n; ++i) {
        double m = z[i];
        for (std::size_t j = 1; j <= k; ++j) m = std::max(m, z[i + j]);
        out[i] = m * scale;
      }
      return;
    }
    case Kind::ArchimedeanFrailty: {
      const double v = sample_frailty(*generator_, rng);
      for (auto& y : out) y = v / variates::exponential(rng);
      return;
    }
    case Kind::ArchimaxLogistic: {
      const double v = sample_frailty(*generator_, rng);
      const double s = variates::positive_stable(rng, 1.0 / param2_);
      for (auto& y : out) y = v * std::pow(s / variates::exponential(rng), 1.0 / param2_);
      return;
    }
    case Kind::GaussianAR1: {
      const double phi = param_;
      const double sigma = param2_;
      if (n == 0) return;
      variates::fill_normal(rng, out);
      out[0] *= sigma / std::sqrt(1.0 - phi * phi);
      for (std::size_t i = 1; i < n; ++i) out[i] = phi * out[i - 1] + sigma * out[i];
      return;
    }
    case Kind::EfgmExchangeable: {
      const double a = param_ * (2.0 * rng.uniform() - 1.0);
      for (auto& y : out) {
        const double v = rng.uniform();
        // Root in (0,1) of a u^2 + (1-a) u - v = 0, rationalized so a -> 0 is safe.
        y = 2.0 * v / ((1.0 - a) + std::sqrt((1.0 - a) * (1.0 - a) + 4.0 * a * v));
      }
      return;
    }
    case Kind::BermanEquicorrelated: {
      const double z0 = variates::normal(rng) * std::sqrt(param_);
      const double w = std::sqrt(1.0 - param_);
      variates::fill_normal(rng, out);
      for (auto& y : out) y = z0 + w * y;
      return;
    }
  }
}

double SequenceModel::native_cdf(double y) const {
  switch (kind_) {
    case Kind::Iid: return y <= 0.0 ? 0.0 : -std::expm1(-y);
    case Kind::MovingMax: return y <= 0.0 ? 0.0 : std::exp(-1.0 / y);
    case Kind::ArchimedeanFrailty:
    case Kind::ArchimaxLogistic: return y <= 0.0 ? 0.0 : generator_->psi(1.0 / y);
    case Kind::GaussianAR1: return phi_cdf(y * std::sqrt(1.0 - param_ * param_) / param2_);
    case Kind::EfgmExchangeable: return std::clamp(y, 0.0, 1.0);
    case Kind::BermanEquicorrelated: return phi_cdf(y);
  }
  return 0.0;
}

double SequenceModel::native_survival(double y) const {
  switch (kind_) {
    case Kind::Iid: return y <= 0.0 ? 1.0 : std::exp(-y);
    case Kind::MovingMax: return y <= 0.0 ? 1.0 : -std::expm1(-1.0 / y);
    case Kind::ArchimedeanFrailty:
    case Kind::ArchimaxLogistic: return y <= 0.0 ? 1.0 : generator_->one_minus_psi(1.0 / y);
    case Kind::GaussianAR1: return phi_cdf(-y * std::sqrt(1.0 - param_ * param_) / param2_);
    case Kind::EfgmExchangeable: return 1.0 - std::clamp(y, 0.0, 1.0);
    case Kind::BermanEquicorrelated: return phi_cdf(-y);
  }
  return 1.0;
}

std::optional<DiagonalFamily> SequenceModel::diagonal() const {
  switch (kind_) {
    case Kind::Iid: return DiagonalFamily::independence();
    case Kind::MovingMax: return DiagonalFamily::moving_max(static_cast<int>(param_));
    case Kind::ArchimedeanFrailty: return DiagonalFamily::archimedean(*generator_);
    case Kind::ArchimaxLogistic:
      return DiagonalFamily::archimax(*generator_, rate_logistic(param2_));
    case Kind::GaussianAR1:
      if (param_ == 0.0) return DiagonalFamily::independence();
      return std::nullopt;
    case Kind::EfgmExchangeable: return DiagonalFamily::efgm_mixture(param_);
    case Kind::BermanEquicorrelated: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<double> sample_path(const SequenceModel& model,
                                const std::optional<MarginFamily>& margin, std::size_t n,
                                RngStream& rng) {
  if (n == 0) throw DomainError("sample_path needs n >= 1");
  std::vector<double> path(n);
  model.sample_native(rng, path);
  if (margin) {
    for (auto& y : path) y = margin->from_uniform(model.native_cdf(y), model.native_survival(y));
  }
  return path;
}

}  // namespace maxdep
