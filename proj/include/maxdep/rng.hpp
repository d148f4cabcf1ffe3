#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace maxdep {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Counter-based stream: the key is the 64-bit master seed, counter words 2-3
// hold the stream index and words 0-1 count blocks. (seed, index) therefore
// fixes the sequence, and distinct indices never share a counter.
//
// One stream must be consumed by one thread at a time.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  std::uint32_t next_u32();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

namespace variates {

double exponential(RngStream& rng);
double normal(RngStream& rng);
// Standard normals, generated in Box-Muller pairs.
void fill_normal(RngStream& rng, std::span<double> out);
// Gamma(shape, 1): Marsaglia-Tsang, boosted by U^{1/shape} for shape < 1.
double gamma(RngStream& rng, double shape);
// Positive stable with E exp(-t S) = exp(-t^alpha), alpha in (0, 1]
// (Kanter's representation of the Chambers-Mallows-Stuck sampler).
double positive_stable(RngStream& rng, double alpha);
// P(V = k) = -p^k / (k log(1-p)), k >= 1 (Kemp's LS algorithm).
double log_series(RngStream& rng, double p);
// Sibuya(alpha): E exp(-t V) = 1 - (1 - e^{-t})^alpha, alpha in (0, 1).
double sibuya(RngStream& rng, double alpha);
// P(V = k) = (1 - theta) theta^{k-1}, k >= 1.
double geometric(RngStream& rng, double theta);

}  // namespace variates

}  // namespace maxdep
