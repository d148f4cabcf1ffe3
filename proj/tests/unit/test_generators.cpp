#include <doctest.h>

#include <cmath>
#include <limits>

#include "maxdep/errors.hpp"
#include "maxdep/generators.hpp"
#include "support.hpp"

using namespace maxdep;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Case {
  GeneratorFamily family;
  double theta;
  double rho;
  double neg_psi_prime_0;
};

std::vector<Case> table1() {
  return {
      {GeneratorFamily::Independence, 0.0, 1.0, 1.0},
      {GeneratorFamily::AliMikhailHaq, 0.5, 1.0, 2.0},
      {GeneratorFamily::AliMikhailHaq, 0.9, 1.0, 10.0},
      {GeneratorFamily::Clayton, 1.0, 1.0, 1.0},
      {GeneratorFamily::Clayton, 4.0, 1.0, 0.25},
      {GeneratorFamily::Clayton, 0.3, 1.0, 1 / 0.3},
      {GeneratorFamily::Frank, 2.0, 1.0, std::expm1(2.0) / 2.0},
      {GeneratorFamily::Frank, 0.01, 1.0, std::expm1(0.01) / 0.01},
      {GeneratorFamily::Frank, 8.0, 1.0, std::expm1(8.0) / 8.0},
      {GeneratorFamily::GumbelHougaard, 2.0, 0.5, kInf},
      {GeneratorFamily::GumbelHougaard, 1.3, 1 / 1.3, kInf},
      {GeneratorFamily::Joe, 2.0, 0.5, kInf},
      {GeneratorFamily::Joe, 5.0, 0.2, kInf},
      {GeneratorFamily::Ballerini, 0.0, 1.0, kInf},
  };
}

// Independent evaluation of the Table 1 formulas with plain expressions.
double oracle_psi(GeneratorFamily f, double th, double t) {
  switch (f) {
    case GeneratorFamily::Independence: return std::exp(-t);
    case GeneratorFamily::AliMikhailHaq: return (1 - th) / (std::exp(t) - th);
    case GeneratorFamily::Clayton: return std::pow(1 + t, -1 / th);
    case GeneratorFamily::Frank: return -std::log(1 - (1 - std::exp(-th)) * std::exp(-t)) / th;
    case GeneratorFamily::GumbelHougaard: return std::exp(-std::pow(t, 1 / th));
    case GeneratorFamily::Joe: return 1 - std::pow(1 - std::exp(-t), 1 / th);
    case GeneratorFamily::Ballerini: return 1 / (t * std::pow(1 + 1 / t, 1 + t));
    default: return NAN;
  }
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("examples") {
    const auto c = builtin_generator(GeneratorFamily::Clayton, 2);
    CHECK(c.psi(1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(c.neg_psi_prime_0() == 0.5);
    CHECK(c.rho() == 1.0);
    const auto g = builtin_generator(GeneratorFamily::GumbelHougaard, 1);
    for (double t : {0.0, 0.1, 1.0, 7.0}) CHECK(g.psi(t) == doctest::Approx(std::exp(-t)).epsilon(1e-15));
    CHECK(g.neg_psi_prime_0() == 1.0);
    CHECK(builtin_generator(GeneratorFamily::Ballerini).psi(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  }

  TEST_CASE("formulas agree with direct evaluation") {
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      CHECK(g.psi(0.0) == 1.0);
      for (double t : testing_support::grid(0.01, 30, 60)) {
        const double want = oracle_psi(k.family, k.theta, t);
        CHECK(g.psi(t) == doctest::Approx(want).epsilon(1e-11));
      }
      CHECK(g.rho() == doctest::Approx(k.rho).epsilon(1e-15));
      if (std::isinf(k.neg_psi_prime_0)) {
        CHECK(std::isinf(g.neg_psi_prime_0()));
      } else {
        CHECK(g.neg_psi_prime_0() == doctest::Approx(k.neg_psi_prime_0).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("one_minus_psi is accurate for tiny arguments") {
    // 1 - psi(t) ~ -psi'(0) t when the derivative is finite.
    CHECK(builtin_generator(GeneratorFamily::Clayton, 1).one_minus_psi(1e-12) == doctest::Approx(1e-12).epsilon(1e-11));
    CHECK(builtin_generator(GeneratorFamily::Frank, 2).one_minus_psi(1e-14) ==
          doctest::Approx(std::expm1(2.0) / 2 * 1e-14).epsilon(1e-9));
    CHECK(builtin_generator(GeneratorFamily::AliMikhailHaq, 0.5).one_minus_psi(1e-13) == doctest::Approx(2e-13).epsilon(1e-9));
    CHECK(builtin_generator(GeneratorFamily::GumbelHougaard, 2).one_minus_psi(1e-16) == doctest::Approx(1e-8).epsilon(1e-7));
    CHECK(builtin_generator(GeneratorFamily::Independence).one_minus_psi(1e-300) == doctest::Approx(1e-300));
  }

  TEST_CASE("out-of-range parameters") {
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::AliMikhailHaq, 1.0), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::AliMikhailHaq, 0.0), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::Clayton, 0.0), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::Frank, -1.0), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::GumbelHougaard, 0.9), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::Joe, 1.0), ConstructionError);
    CHECK_THROWS_AS(builtin_generator(GeneratorFamily::Clayton, NAN), ConstructionError);
  }

  TEST_CASE("family names round-trip") {
    for (auto f : {GeneratorFamily::Independence, GeneratorFamily::AliMikhailHaq, GeneratorFamily::Clayton,
                   GeneratorFamily::Frank, GeneratorFamily::GumbelHougaard, GeneratorFamily::Joe,
                   GeneratorFamily::Ballerini}) {
      CHECK(generator_family_from_string(to_string(f)) == f);
    }
    CHECK(generator_family_from_string("logistic") == GeneratorFamily::GumbelHougaard);
    CHECK_THROWS(generator_family_from_string("nope"));
  }

  TEST_CASE("generator_from_f") {
    const auto ind = generator_from_f([](double t) { return t; }, [](double) { return 1.0; });
    for (double t : {0.0, 0.5, 3.0}) CHECK(ind.psi(t) == doctest::Approx(std::exp(-t)).epsilon(1e-15));
    CHECK(ind.neg_psi_prime_0() == doctest::Approx(1.0));
    CHECK(ind.rho() == doctest::Approx(1.0).epsilon(1e-6));

    const auto b = generator_from_f(
        [](double t) { return t == 0 ? 0.0 : (1 + t) * std::log1p(1 / t) + std::log(t); },
        [](double t) { return std::log1p(1 / t); }, 1.0, "ballerini-f");
    CHECK(b.psi(1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::isinf(b.neg_psi_prime_0()));
    for (double u : {0.01, 0.3, 0.9}) CHECK(b.psi(b.psi_inv(u)) == doctest::Approx(u).epsilon(1e-10));

    const auto gum = generator_from_f([](double t) { return std::sqrt(t); },
                                      [](double t) { return 0.5 / std::sqrt(t); });
    CHECK(gum.psi(4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(std::isinf(gum.neg_psi_prime_0()));
    CHECK(gum.rho() == doctest::Approx(0.5).epsilon(5e-3));

    // Violations of the grid checks.
    CHECK_THROWS_AS(generator_from_f([](double t) { return t + 1; }, [](double) { return 1.0; }), ConstructionError);
    CHECK_THROWS_AS(generator_from_f([](double t) { return t * t; }, [](double t) { return 2 * t; }), ConstructionError);
    CHECK_THROWS_AS(generator_from_f([](double t) { return -t; }, [](double) { return -1.0; }), ConstructionError);
  }

  TEST_CASE("scale_generator examples") {
    const auto c1 = builtin_generator(GeneratorFamily::Clayton, 1);
    const auto same = scale_generator(c1, 1.0);
    CHECK(same.psi(0.7) == c1.psi(0.7));
    CHECK(same.name() == c1.name());
    CHECK(scale_generator(c1, 2).psi(1.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    const auto g2 = scale_generator(builtin_generator(GeneratorFamily::GumbelHougaard, 2), 4);
    CHECK(g2.psi(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(g2.rho() == 0.5);
    CHECK(scale_generator(c1, 3).neg_psi_prime_0() == doctest::Approx(3.0));
    CHECK(scale_generator(c1, 3).psi_inv(0.5) == doctest::Approx(c1.psi_inv(0.5) / 3).epsilon(1e-15));
    CHECK_THROWS_AS(scale_generator(c1, 0.0), DomainError);
    CHECK_THROWS_AS(scale_generator(c1, -2.0), DomainError);
  }

  TEST_CASE("rv_index_estimate examples") {
    CHECK(rv_index_estimate(builtin_generator(GeneratorFamily::Clayton, 2), 2, 1e6) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rv_index_estimate(builtin_generator(GeneratorFamily::GumbelHougaard, 2), 2, 1e6) ==
          doctest::Approx(0.5).epsilon(2e-3));
    CHECK(rv_index_estimate(builtin_generator(GeneratorFamily::Independence), 3, 1e6) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(rv_index_estimate(builtin_generator(GeneratorFamily::Clayton, 1), 1e10, 1e300), PrecisionError);
    CHECK_THROWS_AS(rv_index_estimate(builtin_generator(GeneratorFamily::Clayton, 1), 2, 100), DomainError);
    CHECK_THROWS_AS(rv_index_estimate(builtin_generator(GeneratorFamily::Clayton, 1), 1, 1e6), DomainError);
  }

  TEST_CASE("polynomial growth trajectories") {
    const std::vector<double> ts{1e2, 1e3, 1e4, 1e5, 1e6};
    const auto c = polynomial_growth_trajectory(builtin_generator(GeneratorFamily::Clayton, 1), 1.0, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(c[i] == doctest::Approx(ts[i] / (ts[i] + 1)).epsilon(1e-12));
    const auto g = polynomial_growth_trajectory(builtin_generator(GeneratorFamily::GumbelHougaard, 2), 0.5, ts);
    CHECK(std::abs(g.back() - 1.0) < 1e-3);
    const auto b = polynomial_growth_trajectory(builtin_generator(GeneratorFamily::Ballerini), 1.0, ts);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] > b[i - 1]);
    CHECK(b.back() > 10.0);
    // Growth is logarithmic: 1 - psi(1/t) ~ (1 + log t) / t.
    CHECK(b.back() == doctest::Approx(1 + std::log(1e6)).epsilon(0.02));
  }

  TEST_CASE("Ballerini RV estimate converges slowly to one") {
    const auto b = builtin_generator(GeneratorFamily::Ballerini);
    const double at8 = rv_index_estimate(b, 2, 1e8);
    CHECK(at8 == doctest::Approx(0.9494).epsilon(2e-4));
    double prev = 0.0;
    for (double t : {1e4, 1e6, 1e8, 1e10, 1e12}) {
      const double est = rv_index_estimate(b, 2, t);
      CHECK(est > prev);
      CHECK(est < 1.0);
      prev = est;
    }
  }

  TEST_CASE("property: psi(psi_inv(u)) = u") {
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      for (double lu : testing_support::grid(std::log(1e-6), std::log(1 - 1e-6), 400)) {
        const double u = std::exp(lu);
        CHECK(std::abs(g.psi(g.psi_inv(u)) - u) <= 1e-10);
      }
      CHECK(g.psi_inv(1.0) == 0.0);
      CHECK(std::isinf(g.psi_inv(0.0)));
    }
  }

  TEST_CASE("property: psi strictly decreasing and psi' <= 0 on a grid") {
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      double prev = 1.0;
      for (double lt : testing_support::grid(std::log(1e-4), std::log(50.0), 300)) {
        const double t = std::exp(lt);
        CHECK(g.psi(t) < prev);
        CHECK(g.psi_prime(t) <= 0.0);
        prev = g.psi(t);
      }
    }
  }

  TEST_CASE("property: psi_prime matches central differences") {
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      for (double lt : testing_support::grid(std::log(1e-3), std::log(50.0), 80)) {
        const double t = std::exp(lt);
        const double h = 1e-5 * t;
        const double fd = (g.psi(t + h) - g.psi(t - h)) / (2 * h);
        if (std::abs(fd) < 1e-250) continue;
        CHECK(g.psi_prime(t) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(g.log_neg_psi_prime(t) == doctest::Approx(std::log(-g.psi_prime(t))).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("property: rv index estimate at t=1e8 matches the table") {
    for (const auto& k : table1()) {
      if (k.family == GeneratorFamily::Ballerini) continue;  // see the slow-convergence case
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      CHECK(std::abs(rv_index_estimate(g, 2, 1e8) - k.rho) < 5e-3);
    }
  }

  TEST_CASE("property: -psi'(0) near zero") {
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      CAPTURE(g.name());
      if (std::isfinite(k.neg_psi_prime_0)) {
        CHECK(-g.psi_prime(1e-8) == doctest::Approx(k.neg_psi_prime_0).epsilon(1e-4));
      } else {
        double prev = 0.0;
        for (double t : {1e-4, 1e-8, 1e-12, 1e-16}) {
          const double v = -g.psi_prime(t);
          CHECK(v > prev);
          prev = v;
        }
      }
    }
  }

  TEST_CASE("property: scaling preserves the Archimedean diagonal") {
    testing_support::Gen gen(7);
    for (const auto& k : table1()) {
      const auto g = builtin_generator(k.family, k.theta);
      for (int i = 0; i < 10; ++i) {
        const double c = gen.log_uniform(0.1, 10);
        const auto s = scale_generator(g, c);
        const double n = gen.integer(1, 500);
        const double u = gen.uniform(0.01, 0.99);
        CHECK(std::abs(s.psi(n * s.psi_inv(u)) - g.psi(n * g.psi_inv(u))) <= 1e-12);
      }
    }
  }
}
