#include <doctest.h>

#include <cmath>

#include "maxdep/errors.hpp"
#include "maxdep/ratebounds.hpp"
#include "support.hpp"

using namespace maxdep;

namespace {

const double k3e = 3 * std::exp(-1.0);

double brute_power_diff(double a, double b) {
  return testing_support::brute_max([&](double u) { return std::abs(std::pow(u, a) - std::pow(u, b)); }, 0, 1);
}

}  // namespace

TEST_SUITE("ratebounds") {
  TEST_CASE("sup_power_diff examples") {
    const auto s12 = sup_power_diff(1, 2);
    CHECK(s12.value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s12.argmax == doctest::Approx(0.5).epsilon(1e-15));
    const auto s24 = sup_power_diff(2, 4);
    CHECK(s24.value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s24.argmax == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    const double tiny = sup_power_diff(1, 1 + 1e-9).value;
    CHECK(tiny == doctest::Approx(std::exp(-1.0) * 1e-9).epsilon(1e-6));
    CHECK(tiny == doctest::Approx(brute_power_diff(1, 1 + 1e-9)).epsilon(1e-6));
    CHECK_THROWS_AS(sup_power_diff(2, 2), DomainError);
    CHECK_THROWS_AS(sup_power_diff(3, 2), DomainError);
    CHECK_THROWS_AS(sup_power_diff(0, 2), DomainError);
  }

  TEST_CASE("small gap and large n bounds") {
    const auto z = small_gap_bound(1, 0);
    CHECK(z.bound == 0.0);
    CHECK(z.valid);
    const auto s = small_gap_bound(1, 0.1);
    CHECK(s.bound == doctest::Approx(0.110364).epsilon(1e-5));
    CHECK(s.valid);
    CHECK(s.bound > sup_power_diff(1, 1.1).value);
    const auto neg = small_gap_bound(1, -0.8);
    CHECK(neg.bound == doctest::Approx(0.88291).epsilon(1e-5));
    CHECK_FALSE(neg.valid);
    CHECK_FALSE(small_gap_bound(1, 2.3).valid);

    const auto l = large_n_bound(1, 100);
    CHECK(l.bound == doctest::Approx(0.011036).epsilon(1e-4));
    CHECK(l.valid);
    CHECK_FALSE(large_n_bound(1, 0.1).valid);
    CHECK(large_n_bound(1, 10).bound >= sup_power_diff(10, 11).value);
  }

  TEST_CASE("ceiling bounds") {
    CHECK(ceil_rate_bound(10.5) == doctest::Approx(k3e / 11).epsilon(1e-15));
    CHECK(ceil_rate_bound(10.5) == doctest::Approx(0.10033).epsilon(1e-4));
    CHECK(ceil_rate_bound(0.5) == doctest::Approx(k3e).epsilon(1e-15));
    CHECK(ceil_power_cdf_bound(100) == doctest::Approx(0.011036).epsilon(1e-4));
    CHECK(ceil_power_cdf_bound(0.3) == doctest::Approx(3.679).epsilon(1e-3));
    CHECK(ceil_power_cdf_bound(1e12) < 1e-11);
    // The ceiling bounds hold against the exact suprema.
    for (double r : {0.5, 1.3, 10.5, 99.01, 1234.5}) {
      const double c = std::ceil(r);
      CHECK(sup_power_diff(r / c, 1).value <= ceil_rate_bound(r));
      CHECK(sup_power_diff(r, c).value <= ceil_power_cdf_bound(r));
    }
  }

  TEST_CASE("composite bound examples") {
    CHECK(composite_rate_bound(0, 0, 1, 1, 10).bound == 0.0);
    const auto mm = composite_rate_bound(3 / std::log(1e4), movingmax_s(10000, 1), 1, 0.5, 10000);
    CHECK(mm.bound == doctest::Approx(std::sqrt(3 / std::log(1e4)) + movingmax_s(10000, 1)).epsilon(1e-15));
    CHECK(mm.bound == doctest::Approx(0.5707).epsilon(1e-4));
    CHECK(mm.ceiling == 0.0);
    // Logistic: r_n = 1000 is an integer, so the indicator removes the ceiling.
    const auto lg = composite_rate_bound(3 / std::log(1000.0), 0, 1, 1, std::pow(1e6, 0.5));
    CHECK(lg.bound == doctest::Approx(0.4343).epsilon(1e-4));
    CHECK(3 / std::log(1000.0) + k3e * 1e-3 >= lg.bound);
    const auto frac = composite_rate_bound(0.1, 0.01, 2, 0.5, 10.5);
    CHECK(frac.ceiling == doctest::Approx(k3e / 10.5).epsilon(1e-15));
    CHECK(frac.bound == doctest::Approx(2 * std::sqrt(0.1 + k3e / 10.5) + 0.01).epsilon(1e-15));
    CHECK_THROWS_AS(composite_rate_bound(0, 0, 1, 0, 10), DomainError);
    CHECK_THROWS_AS(composite_rate_bound(0, 0, 1, 1.5, 10), DomainError);
    CHECK_THROWS_AS(composite_rate_bound(0, 0, 0, 1, 10), DomainError);
    CHECK_THROWS_AS(composite_rate_bound(0, 0, 1, 1, 0), DomainError);
  }

  TEST_CASE("reverse bound examples") {
    CHECK(reverse_bound(0, 0, 1, 1, 7).bound == 0.0);
    const auto r = reverse_bound(0, 0.0123, 1, 0.5, 1000);
    CHECK(r.bound == 0.0123);
    CHECK(r.distortion == 0.0123);
  }

  TEST_CASE("moving max and Cuadras-Auge suprema") {
    CHECK(movingmax_s(10, 1) == doctest::Approx(0.035049).epsilon(1e-5));
    CHECK(movingmax_s(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(movingmax_s(100, 0) == 0.0);
    double prev = 1.0;
    for (std::uint64_t n = 10; n <= 10000000; n *= 10) {
      const double s = movingmax_s(n, 1);
      CHECK(s < prev);
      prev = s;
    }
    CHECK(movingmax_s(10000000, 1) * 1e7 == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));

    const auto ca = cuadras_auge_sup(10, 0.5);
    const double q = std::pow(0.5, 10);
    CHECK(ca.exact == doctest::Approx(q * std::pow(1 - q, 1 / q - 1)).epsilon(1e-12));
    CHECK(ca.exact == doctest::Approx(3.60e-4).epsilon(2e-3));
    CHECK(ca.bound == doctest::Approx(1.078e-3).epsilon(1e-3));
    CHECK(ca.bound >= ca.exact);
    const double direct = testing_support::brute_max(
        [](double u) { return std::abs(std::pow(u, (1 - std::pow(0.5, 10)) / 0.5) - std::pow(u, 2.0)); }, 0, 1);
    CHECK(std::abs(ca.exact - direct) < 1e-10);
    CHECK(cuadras_auge_sup(1, 0.5).exact == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(cuadras_auge_sup(5, 0.999).exact < 1e-14);
    CHECK(cuadras_auge_sup(2000, 0.5).exact >= 0.0);
    CHECK(cuadras_auge_sup(2000, 0.5).bound < 1e-300);
    CHECK_THROWS_AS(cuadras_auge_sup(10, 1.0), DomainError);
    CHECK_THROWS_AS(cuadras_auge_sup(10, 0.0), DomainError);
  }

  TEST_CASE("property: closed form matches brute-force maximization") {
    testing_support::Gen g(31);
    for (int i = 0; i < 50; ++i) {
      const double a = g.uniform(0.01, 19.9);
      const double b = g.uniform(a + 1e-3, 20.0);
      CHECK(std::abs(sup_power_diff(a, b).value - brute_power_diff(a, b)) < 1e-9);
    }
  }

  TEST_CASE("property: valid bounds dominate the exact supremum") {
    testing_support::Gen g(32);
    for (int i = 0; i < 300; ++i) {
      const double a = g.log_uniform(0.05, 20);
      const double bn = g.uniform(-0.9 * a, 3 * a);
      if (bn == 0) continue;
      const auto sg = small_gap_bound(a, bn);
      if (sg.valid) {
        const double exact = bn > 0 ? sup_power_diff(a, a + bn).value : sup_power_diff(a + bn, a).value;
        CHECK(sg.bound >= exact);
      }
      const double b = g.log_uniform(0.05, 20);
      const double an = g.log_uniform(0.01, 100);
      const auto ln = large_n_bound(b, an);
      if (ln.valid) CHECK(ln.bound >= sup_power_diff(an, an + b).value);
    }
  }

  TEST_CASE("property: movingmax_s is the power-difference supremum") {
    for (int k = 1; k <= 6; ++k) {
      for (std::uint64_t n : {1ull, 2ull, 10ull, 333ull, 100000ull}) {
        const double a = 1.0 / (k + 1);
        const double b = (static_cast<double>(n) + k) / (static_cast<double>(n) * (k + 1));
        if (a == b) continue;
        CHECK(std::abs(movingmax_s(n, k) - sup_power_diff(std::min(a, b), std::max(a, b)).value) < 1e-12);
      }
    }
  }

  TEST_CASE("property: composite bound monotonicity and recompute") {
    testing_support::Gen g(33);
    for (int i = 0; i < 200; ++i) {
      const double beta = g.uniform(0, 0.3);
      const double s = g.uniform(0, 0.1);
      const double K = g.uniform(0.1, 3);
      const double kappa = g.uniform(0.05, 1);
      const double r = g.integer(0, 1) ? static_cast<double>(g.integer(2, 1000)) : g.uniform(2, 1000);
      const auto base = composite_rate_bound(beta, s, K, kappa, r);
      CHECK(std::abs(base.recompute() - base.bound) <= 1e-15);
      CHECK(composite_rate_bound(beta + 0.01, s, K, kappa, r).bound >= base.bound);
      CHECK(composite_rate_bound(beta, s + 0.01, K, kappa, r).bound >= base.bound);
      CHECK(composite_rate_bound(beta, s, K * 1.1, kappa, r).bound >= base.bound);
      const double b = base.beta_star + base.ceiling;
      if (b > 0 && b < 1 && kappa < 0.95) {
        CHECK(composite_rate_bound(beta, s, K, kappa + 0.05, r).bound <= base.bound);
      }
      const auto rev = reverse_bound(beta, s, K, kappa, r);
      CHECK(rev.bound == base.bound);
    }
  }
}
