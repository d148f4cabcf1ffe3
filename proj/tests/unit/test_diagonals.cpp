#include <doctest.h>

#include <cmath>

#include "maxdep/diagonals.hpp"
#include "maxdep/errors.hpp"
#include "support.hpp"

using namespace maxdep;

namespace {

std::vector<DiagonalFamily> all_families() {
  return {
      DiagonalFamily::independence(),
      DiagonalFamily::comonotone(),
      DiagonalFamily::power_diagonal(rate_logistic(2.0)),
      DiagonalFamily::power_diagonal(rate_power(0.5)),
      DiagonalFamily::moving_max(0),
      DiagonalFamily::moving_max(1),
      DiagonalFamily::moving_max(3),
      DiagonalFamily::cuadras_auge(0.5),
      DiagonalFamily::cuadras_auge(0.1),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 2)),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::AliMikhailHaq, 0.5)),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Frank, 2)),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::GumbelHougaard, 2)),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Joe, 2)),
      DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Ballerini)),
      DiagonalFamily::archimax(builtin_generator(GeneratorFamily::Clayton, 1), rate_logistic(2.0)),
      DiagonalFamily::efgm_mixture(0.8),
      DiagonalFamily::efgm_mixture(-0.5),
      DiagonalFamily::efgm_mixture(0.0),
  };
}

// Exact integral of (A + B s)^n over s in [-1, 1], halved.
double efgm_closed_form(double theta, std::uint64_t n, double u) {
  const double a = u;
  const double b = theta * u * (u - 1);
  if (b == 0) return std::pow(a, static_cast<double>(n));
  const double m = static_cast<double>(n) + 1;
  return (std::pow(a + b, m) - std::pow(a - b, m)) / (2 * b * m);
}

}  // namespace

TEST_SUITE("diagonals") {
  TEST_CASE("diagonal examples") {
    CHECK(DiagonalFamily::moving_max(1).value(3, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(DiagonalFamily::cuadras_auge(0.5).value(2, 0.81) == doctest::Approx(0.729).epsilon(1e-14));
    const auto c = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 1));
    CHECK(c.value(2, 0.5) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(DiagonalFamily::independence().value(7, 0.5) == doctest::Approx(std::pow(0.5, 7)).epsilon(1e-15));
    CHECK(DiagonalFamily::comonotone().value(1000, 0.3) == 0.3);
    CHECK_THROWS_AS(DiagonalFamily::moving_max(-1), ConstructionError);
    CHECK_THROWS_AS(DiagonalFamily::cuadras_auge(1.0), ConstructionError);
    CHECK_THROWS_AS(DiagonalFamily::efgm_mixture(1.1), ConstructionError);
    CHECK_THROWS_AS(DiagonalFamily::independence().value(0, 0.5), DomainError);
    CHECK_THROWS_AS(rate_logistic(0.5), ConstructionError);
  }

  TEST_CASE("canonical rates and metadata") {
    CHECK((*DiagonalFamily::independence().canonical_rate())(17) == 17.0);
    CHECK((*DiagonalFamily::moving_max(2).canonical_rate())(17) == 17.0);
    CHECK((*DiagonalFamily::efgm_mixture(0.3).canonical_rate())(17) == 17.0);
    CHECK((*DiagonalFamily::power_diagonal(rate_logistic(2)).canonical_rate())(100) == doctest::Approx(10.0));
    const auto ca = DiagonalFamily::cuadras_auge(0.5);
    CHECK(ca.finite_rate_regime());
    CHECK((*ca.canonical_rate())(2) == doctest::Approx(1.5));
    const auto c1 = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 1));
    const auto r = *c1.canonical_rate();
    for (std::uint64_t n : {1ull, 2ull, 10ull, 999ull, 123456ull, 1000000ull}) {
      CHECK(r(n) == doctest::Approx(static_cast<double>(n) + 1).epsilon(1e-14));
    }
    CHECK(DiagonalFamily::moving_max(0).exchangeable());
    CHECK_FALSE(DiagonalFamily::moving_max(1).exchangeable());
    CHECK(c1.exchangeable());
  }

  TEST_CASE("power distortion examples") {
    for (std::uint64_t n : {1ull, 3ull, 100ull, 1000000ull}) {
      for (double u : {0.0, 0.1, 0.5, 0.99, 1.0}) {
        CHECK(power_distortion(DiagonalFamily::independence(), rate_linear(), n, u) == doctest::Approx(u).epsilon(1e-12));
      }
    }
    CHECK(power_distortion(DiagonalFamily::moving_max(1), rate_linear(), 3, 0.5) ==
          doctest::Approx(std::pow(0.5, 4.0 / 6.0)).epsilon(1e-15));
    const auto ca = DiagonalFamily::cuadras_auge(0.5);
    for (std::uint64_t n : {1ull, 2ull, 10ull, 60ull}) {
      for (double u : testing_support::grid(0, 1, 21)) {
        CHECK(power_distortion(ca, *ca.canonical_rate(), n, u) == doctest::Approx(u).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("sup distance examples") {
    const double s10 = distortion_sup_distance(DiagonalFamily::moving_max(1), rate_linear(), 10, Distortion::power(0.5));
    CHECK(s10 == doctest::Approx(std::pow(1.1, -10) / 11).epsilon(1e-10));
    CHECK(distortion_sup_distance(DiagonalFamily::independence(), rate_linear(), 50, Distortion::power(1)) < 1e-15);
    const auto c = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 2));
    const auto r = *c.canonical_rate();
    CHECK(distortion_sup_distance(c, r, 1000, *c.limit_distortion()) <
          distortion_sup_distance(c, r, 100, *c.limit_distortion()));
  }

  TEST_CASE("rate scaling examples") {
    const std::vector<std::uint64_t> n1{1000};
    CHECK(rate_scaling_limit(rate_linear(), 0.5, n1)[0] == 0.5);
    const std::vector<std::uint64_t> n2{10000};
    CHECK(rate_scaling_limit(rate_power(0.5), 0.25, n2)[0] == doctest::Approx(0.5).epsilon(1e-14));
    const auto c1 = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 1));
    CHECK(rate_scaling_limit(*c1.canonical_rate(), 2, n1)[0] == doctest::Approx(2001.0 / 1001.0).epsilon(1e-13));
  }

  TEST_CASE("mixing discrepancy examples") {
    for (std::uint64_t n : {10ull, 1000ull}) {
      CHECK(mixing_discrepancy(DiagonalFamily::independence(), rate_linear(), n, 0.25, 0.25, 0.5) < 1e-15);
    }
    const auto p = DiagonalFamily::power_diagonal(rate_power(0.5));
    const double want = std::pow(0.5, 1 / std::sqrt(2.0)) - 0.5;
    CHECK(std::abs(mixing_discrepancy(p, rate_power(0.5), 1000000, 0.25, 0.25, 0.5) - want) < 5e-3);
    const auto c1 = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 1));
    const auto r = *c1.canonical_rate();
    const double d3 = mixing_discrepancy(c1, r, 1000, 0.25, 0.25, 0.5);
    const double d4 = mixing_discrepancy(c1, r, 10000, 0.25, 0.25, 0.5);
    const double d5 = mixing_discrepancy(c1, r, 100000, 0.25, 0.25, 0.5);
    CHECK(d4 > 0.01);
    CHECK(std::abs(d5 - d4) < std::abs(d4 - d3) + 1e-12);
    // Limit: D(u)^{1/2}-type exponents give (1 - 0.5 log u)^{-1} - (1 - 0.25 log u)^{-2}.
    const double l = std::log(0.5);
    CHECK(d5 == doctest::Approx(std::abs(1 / (1 - 0.5 * l) - std::pow(1 - 0.25 * l, -2))).epsilon(1e-3));
    CHECK_THROWS_AS(mixing_discrepancy(DiagonalFamily::moving_max(1), rate_linear(), 10, 0.25, 0.25, 0.5), ContractError);
  }

  TEST_CASE("empirical diagonal distance") {
    const auto c1 = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 1));
    const std::vector<DiagonalSample> own{{5, 0.5, c1.value(5, 0.5) + 0.002, 0.001}};
    CHECK(empirical_diagonal_distance(c1, own) == doctest::Approx(2.0));
    // Clayton theta=1: delta_5(0.5) = psi(5) = 1/6, far from independence's 1/32.
    const std::vector<DiagonalSample> clayton{{5, 0.5, 1.0 / 6, 0.003}};
    CHECK(empirical_diagonal_distance(c1, clayton) < 1e-9);
    CHECK(empirical_diagonal_distance(DiagonalFamily::independence(), clayton) > 20);
    const std::vector<DiagonalSample> bad{{5, 0.5, 0.1, 0.0}};
    CHECK_THROWS_AS(empirical_diagonal_distance(c1, bad), ContractError);
  }

  TEST_CASE("EFGM quadrature against the exact polynomial integral") {
    for (double th : {-1.0, -0.4, 0.3, 0.8, 1.0}) {
      const auto f = DiagonalFamily::efgm_mixture(th);
      for (std::uint64_t n : {1ull, 2ull, 4ull, 17ull, 500ull, 5000ull}) {
        for (double u : {0.05, 0.3, 0.6, 0.9, 0.999}) {
          CHECK(f.value(n, u) == doctest::Approx(efgm_closed_form(th, n, u)).epsilon(1e-10));
        }
      }
    }
    CHECK(DiagonalFamily::efgm_mixture(0.8).value(4, 0.6) == doctest::Approx(0.156413870899).epsilon(1e-11));
  }

  TEST_CASE("property: Frechet-Hoeffding sandwich, endpoints and monotonicity") {
    for (const auto& f : all_families()) {
      CAPTURE(f.name());
      for (std::uint64_t n : {1ull, 2ull, 5ull, 50ull, 1000ull}) {
        CHECK(f.value(n, 0.0) == 0.0);
        CHECK(f.value(n, 1.0) == 1.0);
        double prev = 0.0;
        for (double u : testing_support::grid(0, 1, 1000)) {
          const double v = f.value(n, u);
          const double lower = std::max(static_cast<double>(n) * u - (static_cast<double>(n) - 1), 0.0);
          CHECK(v >= lower - 1e-12);
          CHECK(v <= u + 1e-12);
          CHECK(v >= prev - 1e-15);
          prev = v;
        }
      }
    }
  }

  TEST_CASE("property: delta_1 is the identity") {
    for (const auto& f : all_families()) {
      CAPTURE(f.name());
      for (double u : testing_support::grid(0, 1, 101)) CHECK(f.value(1, u) == doctest::Approx(u).epsilon(1e-12));
    }
  }

  TEST_CASE("property: Lipschitz with constant n") {
    testing_support::Gen g(21);
    for (const auto& f : all_families()) {
      for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = static_cast<std::uint64_t>(g.integer(1, 200));
        const double u = g.uniform(0, 1);
        const double v = std::clamp(u + g.uniform(-0.01, 0.01), 0.0, 1.0);
        CHECK(std::abs(f.value(n, u) - f.value(n, v)) <= static_cast<double>(n) * std::abs(u - v) + 1e-12);
      }
    }
  }

  TEST_CASE("property: power distortion is a distribution function") {
    for (const auto& f : all_families()) {
      if (!f.canonical_rate()) continue;
      CAPTURE(f.name());
      const auto& r = *f.canonical_rate();
      for (std::uint64_t n : {1ull, 10ull, 1000ull}) {
        CHECK(power_distortion(f, r, n, 0.0) == 0.0);
        CHECK(power_distortion(f, r, n, 1.0) == 1.0);
        double prev = 0.0;
        for (double u : testing_support::grid(0, 1, 500)) {
          const double v = power_distortion(f, r, n, u);
          CHECK(v >= prev - 1e-15);
          prev = v;
        }
      }
    }
  }

  TEST_CASE("property: Gumbel Archimedean diagonal is a power diagonal") {
    for (double th : {1.0, 1.5, 2.0, 4.0}) {
      const auto a = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::GumbelHougaard, th));
      const auto p = DiagonalFamily::power_diagonal(rate_logistic(th));
      for (std::uint64_t n : {1ull, 2ull, 7ull, 100ull, 10000ull}) {
        for (double u : testing_support::grid(0, 1, 101)) CHECK(std::abs(a.value(n, u) - p.value(n, u)) <= 1e-12);
      }
    }
  }

  TEST_CASE("property: EFGM at theta=0 is independence") {
    const auto e = DiagonalFamily::efgm_mixture(0.0);
    for (std::uint64_t n : {1ull, 3ull, 40ull, 3000ull}) {
      for (double u : testing_support::grid(0, 1, 101)) {
        CHECK(std::abs(e.value(n, u) - std::pow(u, static_cast<double>(n))) <= 1e-9);
      }
    }
  }

  TEST_CASE("property: sup distance to the limit is nonincreasing in n") {
    for (const auto& f : all_families()) {
      if (!f.limit_distortion() || !f.canonical_rate() || f.finite_rate_regime()) continue;
      CAPTURE(f.name());
      double prev = 1.0;
      for (std::uint64_t n : {16ull, 64ull, 256ull, 1024ull, 4096ull}) {
        const double d = distortion_sup_distance(f, *f.canonical_rate(), n, *f.limit_distortion());
        CHECK(d <= prev + 1e-12);
        prev = d;
      }
    }
  }

  TEST_CASE("log-space evaluation keeps u^{1/r_n} away from 1") {
    const auto c = DiagonalFamily::archimedean(builtin_generator(GeneratorFamily::Clayton, 2));
    const auto r = *c.canonical_rate();
    const auto& d = *c.limit_distortion();
    const double u = 1e-3;
    CHECK(power_distortion(c, r, 1000000000ull, u) == doctest::Approx(d.cdf(u)).epsilon(1e-6));
  }
}
