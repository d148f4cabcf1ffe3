#include "maxdep/rng.hpp"

#include <cmath>
#include <numbers>

namespace maxdep {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  buf_ = philox4x32_10(ctr, key);
  ++block_;
  pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (pos_ == 4) refill();
  return buf_[pos_++];
}

double RngStream::uniform() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  const std::uint64_t bits = ((hi << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

namespace variates {

double exponential(RngStream& rng) { return -std::log(rng.uniform()); }

double normal(RngStream& rng) {
  const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
  return r * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

void fill_normal(RngStream& rng, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 1 < out.size(); i += 2) {
    const double r = std::sqrt(-2.0 * std::log(rng.uniform()));
    const double a = 2.0 * std::numbers::pi * rng.uniform();
    out[i] = r * std::cos(a);
    out[i + 1] = r * std::sin(a);
  }
  if (i < out.size()) out[i] = normal(rng);
}

double gamma(RngStream& rng, double shape) {
  if (shape < 1.0) {
    const double g = gamma(rng, shape + 1.0);
    return g * std::exp(std::log(rng.uniform()) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double positive_stable(RngStream& rng, double alpha) {
  if (alpha >= 1.0) return 1.0;
  const double u = std::numbers::pi * rng.uniform();
  const double e = exponential(rng);
  const double a = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
  const double b = std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  return a * b;
}

double log_series(RngStream& rng, double p) {
  const double v = rng.uniform();
  if (v >= p) return 1.0;
  const double q = -std::expm1(std::log1p(-p) * rng.uniform());
  if (v >= q) return 1.0;
  return std::floor(1.0 + std::log(v) / std::log(q));
}

double sibuya(RngStream& rng, double alpha) {
  // V = min{k >= 1 : P(V > k) <= w} with P(V > k) = Gamma(k+1-alpha) /
  // (Gamma(k+1) Gamma(1-alpha)), decreasing in k.
  const double w = rng.uniform();
  if (w >= 1.0 - alpha) return 1.0;  // P(V > 1) = 1 - alpha
  const double lg1 = std::lgamma(1.0 - alpha);
  const double log_w = std::log(w);
  auto log_surv = [&](double k) { return std::lgamma(k + 1.0 - alpha) - std::lgamma(k + 1.0) - lg1; };
  // P(V > k) ~ k^{-alpha} / Gamma(1-alpha) gives the starting guess.
  const double guess = std::exp(-(log_w + lg1) / alpha);
  if (guess > 1e15) return std::floor(guess);
  double lo = 1.0;  // log_surv(lo) > log_w
  double hi = std::max(2.0, std::ceil(guess));
  while (log_surv(hi) > log_w) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (log_surv(mid) > log_w) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double geometric(RngStream& rng, double theta) {
  if (theta <= 0.0) return 1.0;
  return std::max(1.0, std::ceil(std::log(rng.uniform()) / std::log(theta)));
}

}  // namespace variates

}  // namespace maxdep
