#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <iostream>
#include <optional>

#include "maxdep/cli.hpp"
#include "maxdep/diagonals.hpp"
#include "maxdep/distortions.hpp"
#include "maxdep/errors.hpp"
#include "maxdep/gev.hpp"
#include "maxdep/margins.hpp"
#include "maxdep/numerics.hpp"
#include "maxdep/ratebounds.hpp"
#include "maxdep/samplers.hpp"
#include "table.hpp"

namespace maxdep::cli {

namespace {

using Row = std::vector<Cell>;

Cell num(double v) { return v; }
Cell count(std::uint64_t v) { return static_cast<std::int64_t>(v); }

double require_theta(const ExperimentConfig& c, const std::string& what) {
  if (!c.theta) throw UsageError(what + " needs --theta");
  return *c.theta;
}

std::pair<std::string, std::optional<double>> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, std::nullopt};
  const std::string value = spec.substr(colon + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return {spec.substr(0, colon), v};
  } catch (const std::logic_error&) {
    throw UsageError("bad parameter in '" + spec + "'");
  }
}

ArchGenerator parse_generator(const std::string& spec) {
  if (spec.empty()) throw UsageError("--generator is required for this model");
  const auto [name, theta] = split_spec(spec);
  GeneratorFamily family;
  try {
    family = generator_family_from_string(name);
  } catch (const ConstructionError& e) {
    throw UsageError(e.what());
  }
  const bool needs_theta =
      family != GeneratorFamily::Independence && family != GeneratorFamily::Ballerini;
  if (needs_theta && !theta) throw UsageError("generator '" + name + "' needs a parameter, e.g. " + name + ":2");
  return builtin_generator(family, theta.value_or(0.0));
}

// nullopt: raw (native) scale.
std::optional<MarginFamily> parse_margin(const std::string& spec) {
  const auto [name, p] = split_spec(spec);
  if (name == "raw" || name == "none") return std::nullopt;
  if (name == "frechet") return p ? MarginFamily::frechet(*p) : MarginFamily::unit_frechet();
  if (name == "exponential") return MarginFamily::exponential(p.value_or(1.0));
  if (name == "normal") return MarginFamily::standard_normal();
  if (name == "uniform") return MarginFamily::uniform01();
  if (name == "pareto") {
    if (!p) throw UsageError("pareto margin needs a parameter, e.g. pareto:2");
    return MarginFamily::pareto(*p);
  }
  throw UsageError("unknown margin '" + spec + "'");
}

struct FamilySpec {
  DiagonalFamily family;
  std::optional<RateFn> eta;
};

FamilySpec make_family(const ExperimentConfig& c) {
  const std::string& m = c.model;
  if (m == "iid" || m == "independence") return {DiagonalFamily::independence(), std::nullopt};
  if (m == "comonotone") return {DiagonalFamily::comonotone(), std::nullopt};
  if (m == "logistic") {
    auto eta = rate_logistic(require_theta(c, m));
    return {DiagonalFamily::power_diagonal(eta), eta};
  }
  if (m == "power") {
    auto eta = rate_power(require_theta(c, m));
    return {DiagonalFamily::power_diagonal(eta), eta};
  }
  if (m == "movingmax") return {DiagonalFamily::moving_max(c.k), std::nullopt};
  if (m == "cuadras-auge") {
    auto fam = DiagonalFamily::cuadras_auge(require_theta(c, m));
    return {fam, fam.canonical_rate()};
  }
  if (m == "archimedean" || m == "frailty") {
    return {DiagonalFamily::archimedean(parse_generator(c.generator)), std::nullopt};
  }
  if (m == "archimax") {
    auto eta = rate_logistic(require_theta(c, m));
    return {DiagonalFamily::archimax(parse_generator(c.generator), eta), eta};
  }
  if (m == "efgm") return {DiagonalFamily::efgm_mixture(require_theta(c, m)), std::nullopt};
  if (m == "ar1") {
    if (c.phi != 0.0) throw NotAvailable("the AR(1) diagonal has no closed form for phi != 0");
    return {DiagonalFamily::independence(), std::nullopt};
  }
  throw UsageError("unknown model '" + m + "'");
}

RateFn make_rate(const ExperimentConfig& c, const FamilySpec& spec) {
  if (c.rate == "canonical") {
    if (!spec.family.canonical_rate()) {
      throw NotAvailable("no canonical rate for " + spec.family.name());
    }
    return *spec.family.canonical_rate();
  }
  if (c.rate == "n") return rate_linear();
  if (c.rate == "eta") {
    if (!spec.eta) throw UsageError("--rate eta needs a model with an eta schedule");
    return *spec.eta;
  }
  if (c.rate.rfind("power:", 0) == 0) {
    const auto [name, a] = split_spec(c.rate);
    return rate_power(*a);
  }
  throw UsageError("unknown rate '" + c.rate + "'");
}

SequenceModel make_model(const ExperimentConfig& c) {
  const std::string& m = c.model;
  if (m == "iid" || m == "independence") return SequenceModel::iid();
  if (m == "movingmax") return SequenceModel::moving_max(c.k);
  if (m == "archimedean" || m == "frailty") {
    const auto g = parse_generator(c.generator);
    return SequenceModel::archimedean_frailty(g.family(), g.theta());
  }
  if (m == "archimax") {
    const auto g = parse_generator(c.generator);
    return SequenceModel::archimax_logistic(g.family(), g.theta(), require_theta(c, m));
  }
  if (m == "ar1") return SequenceModel::gaussian_ar1(c.phi);
  if (m == "efgm") return SequenceModel::efgm(require_theta(c, m));
  if (m == "berman") return SequenceModel::berman(c.rho_corr);
  throw UsageError("model '" + m + "' has no sampler");
}

ExecPolicy policy_of(const ExperimentConfig& c) {
  return {ExecPolicy::Mode::OpenMP, c.workers};
}

Table cmd_diagonal(const ExperimentConfig& c) {
  const auto spec = make_family(c);
  const auto rate = make_rate(c, spec);
  Table t({"n", "u", "r_n", "delta", "distortion"});
  const auto us = parse_grid(c.u_grid);
  for (std::uint64_t n : parse_n_schedule(c.n)) {
    for (double u : us) {
      t.add_row({count(n), num(u), num(rate(n)), num(spec.family.value(n, u)),
                 num(power_distortion(spec.family, rate, n, u))});
    }
  }
  return t;
}

void distortion_rows(Table& t, const Distortion& d, const std::vector<double>& us) {
  for (double u : us) {
    t.add_row({d.name(), num(u), num(d.cdf(u)), num(d.density(u)), num(d.quantile(u))});
  }
}

Table cmd_distortion(const ExperimentConfig& c) {
  Table t({"distortion", "u", "D", "density", "quantile"});
  const auto us = parse_grid(c.u_grid);
  if (c.preset == "figure1") {
    for (const char* spec : {"independence", "amh:0.5", "clayton:1", "clayton:4", "frank:2",
                             "gumbel:2", "joe:2", "ballerini"}) {
      distortion_rows(t, Distortion::archimedean_limit(parse_generator(spec)), us);
    }
    return t;
  }
  if (!c.preset.empty()) throw UsageError("unknown preset '" + c.preset + "'");
  if (!c.generator.empty()) {
    distortion_rows(t, Distortion::archimedean_limit(parse_generator(c.generator)), us);
  } else if (c.model == "efgm") {
    distortion_rows(t, Distortion::efgm_limit(require_theta(c, "efgm")), us);
  } else if (c.model == "amh-mixture") {
    distortion_rows(t, Distortion::amh_uniform_mixture(), us);
  } else if (c.model == "power") {
    distortion_rows(t, Distortion::power(require_theta(c, "power")), us);
  } else {
    throw UsageError("distortion needs --generator, --preset figure1 or --model efgm|amh-mixture|power");
  }
  return t;
}

// Holder constants (K, kappa) of D(u) = u^theta: |u^theta - v^theta| <= |u - v|^theta
// for theta <= 1, Lipschitz with constant theta otherwise.
std::pair<double, double> power_holder(double theta) {
  return theta <= 1.0 ? std::pair{1.0, theta} : std::pair{theta, 1.0};
}

// Exponent theta of the power limit distortion, when the limit is a power.
std::optional<double> power_limit_exponent(const ExperimentConfig& c) {
  const std::string& m = c.model;
  if (m == "iid" || m == "independence" || m == "logistic" || m == "power" || m == "ar1") {
    return 1.0;
  }
  if (m == "movingmax") return 1.0 / (c.k + 1.0);
  return std::nullopt;
}

std::optional<double> beta_star(const std::optional<MarginFamily>& margin, std::uint64_t m) {
  if (!margin) return std::nullopt;
  try {
    return iid_uniform_rate(*margin, std::max<std::uint64_t>(m, 2));
  } catch (const NotAvailable&) {
    return std::nullopt;
  }
}

std::uint64_t ceil_index(double r) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(r)));
}

Table cmd_bound(const ExperimentConfig& c) {
  Table t({"n", "r_n", "beta_star", "ceiling", "s_n", "K", "kappa", "bound", "exact"});
  const auto ns = parse_n_schedule(c.n);
  if (c.model == "cuadras-auge") {
    const double theta = require_theta(c, c.model);
    const auto fam = DiagonalFamily::cuadras_auge(theta);
    for (std::uint64_t n : ns) {
      const auto ca = cuadras_auge_sup(n, theta);
      t.add_row({count(n), num((*fam.canonical_rate())(n)), {}, {}, {}, {}, {}, num(ca.bound),
                 num(ca.exact)});
    }
    return t;
  }
  const auto spec = make_family(c);
  const auto rate = make_rate(c, spec);
  const auto margin = parse_margin(c.margin);
  const auto exponent = power_limit_exponent(c);
  for (std::uint64_t n : ns) {
    const double r = rate(n);
    double s = 0.0;
    if (c.model == "movingmax") {
      s = movingmax_s(n, c.k);
    } else if (!exponent) {
      s = distortion_sup_distance(spec.family, rate, n, *spec.family.limit_distortion());
    }
    const auto beta = beta_star(margin, ceil_index(r));
    if (!exponent || !beta) {
      t.add_row({count(n), num(r), beta ? num(*beta) : Cell{}, {}, num(s), {}, {}, {}, {}});
      continue;
    }
    const auto [K, kappa] = power_holder(*exponent);
    const auto rep = composite_rate_bound(*beta, s, K, kappa, r);
    t.add_row({count(n), num(r), num(rep.beta_star), num(rep.ceiling), num(rep.distortion),
               num(rep.K), num(rep.kappa), num(rep.bound), {}});
  }
  return t;
}

struct Prediction {
  std::function<double(double)> limit_cdf;
  std::function<double(double)> limit_quantile;
  // Per n: normalizers, rate, exact finite-n cdf of the normalized maximum.
  std::function<double(std::uint64_t)> rate;
  std::function<std::pair<double, double>(std::uint64_t)> normalizers;
  std::function<double(std::uint64_t, double, double, double)> finite_n_cdf;
  std::optional<std::function<double(std::uint64_t)>> s_n;
};

Prediction berman_prediction(const SequenceModel& model) {
  const double rho = model.param();
  const auto normal = MarginFamily::standard_normal();
  Prediction p;
  p.limit_cdf = [rho, normal](double x) { return normal.cdf(x / std::sqrt(rho)); };
  p.limit_quantile = [rho, normal](double q) { return std::sqrt(rho) * normal.quantile(q); };
  p.rate = [](std::uint64_t n) { return static_cast<double>(n); };
  p.normalizers = [rho, normal](std::uint64_t n) {
    return std::pair{1.0, std::sqrt(1.0 - rho) * iid_normalizers(normal, n).d_star};
  };
  // P(sqrt(rho) Z0 + sqrt(1-rho) max Z_i <= t) = E Phi^n((t - sqrt(rho) Z0)/sqrt(1-rho)).
  p.finite_n_cdf = [rho, normal](std::uint64_t n, double x, double cn, double dn) {
    const double t = cn * x + dn;
    const double nn = static_cast<double>(n);
    return numerics::integrate_gauss_legendre(
        [&](double z) {
          const double inner = (t - std::sqrt(rho) * z) / std::sqrt(1.0 - rho);
          return std::exp(-0.5 * z * z + nn * normal.log_cdf(inner)) / std::sqrt(2.0 * std::numbers::pi);
        },
        -12.0, 12.0, 400);
  };
  return p;
}

Table cmd_converge(const ExperimentConfig& c) {
  const auto model = make_model(c);
  auto margin = parse_margin(c.margin);
  Prediction p;
  if (model.kind() == SequenceModel::Kind::BermanEquicorrelated) {
    if (margin && margin->kind() != MarginFamily::Kind::StandardNormal) {
      throw UsageError("berman predicts N(0, rho) on its native normal scale: use --margin raw");
    }
    margin.reset();
    p = berman_prediction(model);
  } else {
    if (!margin) throw UsageError("--margin raw is only meaningful for berman");
    // AR(1) has no closed-form diagonal; its maxima behave as iid (D = identity, r_n = n).
    const bool ar1 = model.kind() == SequenceModel::Kind::GaussianAR1;
    std::optional<DiagonalFamily> fam = model.diagonal();
    RateFn rate = rate_linear();
    Distortion d = Distortion::power(1.0);
    if (!ar1) {
      FamilySpec spec{*fam, std::nullopt};
      if (model.kind() == SequenceModel::Kind::ArchimaxLogistic) {
        spec.eta = rate_logistic(require_theta(c, c.model));
      }
      rate = make_rate(c, spec);
      d = *fam->limit_distortion();
    }
    const MarginFamily mg = *margin;
    const GevParams h = iid_normalizers(mg, 2).limit;
    p.limit_cdf = [d, h](double x) { return limit_law_cdf(d, h, x); };
    p.limit_quantile = [d, h](double q) { return limit_law_quantile(d, h, q); };
    p.rate = rate.fn;
    p.normalizers = [mg, rate](std::uint64_t n) {
      const auto nz = iid_normalizers(mg, std::max<std::uint64_t>(2, ceil_index(rate(n))));
      return std::pair{nz.c_star, nz.d_star};
    };
    if (fam && !ar1) {
      p.finite_n_cdf = [fam, mg](std::uint64_t n, double x, double cn, double dn) {
        return fam->value_log(n, mg.log_cdf(cn * x + dn));
      };
      p.s_n = [fam, rate, d](std::uint64_t n) { return distortion_sup_distance(*fam, rate, n, d); };
    }
  }

  std::vector<double> xs;
  if (c.x_grid.empty()) {
    for (double q : numerics::linspace(0.02, 0.98, 41)) xs.push_back(p.limit_quantile(q));
  } else {
    xs = parse_grid(c.x_grid);
  }
  const auto exponent = power_limit_exponent(c);
  const ExecPolicy policy = policy_of(c);

  Table t({"n", "r_n", "c_n", "d_n", "reps", "mc_distance", "mc_se_max", "analytic_distance",
           "s_n", "bound"});
  for (std::uint64_t n : parse_n_schedule(c.n)) {
    const double r = p.rate(n);
    const auto [cn, dn] = p.normalizers(n);
    const auto est = normalized_max_ecdf(model, margin, n, c.reps, cn, dn, xs, c.seed, policy);
    double mc = 0.0, se = 0.0, exact = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double g = p.limit_cdf(xs[i]);
      mc = std::max(mc, std::abs(est[i].value - g));
      se = std::max(se, est[i].std_error);
      if (p.finite_n_cdf) exact = std::max(exact, std::abs(p.finite_n_cdf(n, xs[i], cn, dn) - g));
    }
    Cell s_cell, bound_cell;
    if (p.s_n) {
      const double s = model.kind() == SequenceModel::Kind::MovingMax ? movingmax_s(n, c.k) : (*p.s_n)(n);
      s_cell = s;
      const auto beta = beta_star(margin, ceil_index(r));
      if (exponent && beta) {
        const auto [K, kappa] = power_holder(*exponent);
        bound_cell = composite_rate_bound(*beta, s, K, kappa, r).bound;
      }
    }
    t.add_row({count(n), num(r), num(cn), num(dn), count(c.reps), num(mc), num(se),
               p.finite_n_cdf ? num(exact) : Cell{}, s_cell, bound_cell});
  }
  return t;
}

Table cmd_mixing(const ExperimentConfig& c) {
  const auto spec = make_family(c);
  const auto rate = make_rate(c, spec);
  Table t({"n", "u", "discrepancy"});
  const auto us = parse_grid(c.u_grid);
  for (std::uint64_t n : parse_n_schedule(c.n)) {
    for (double u : us) {
      // Both sides vanish or agree at the endpoints; only interior u is informative.
      if (!(u > 0.0 && u < 1.0)) continue;
      t.add_row({count(n), num(u), num(mixing_discrepancy(spec.family, rate, n, c.t1, c.t2, u))});
    }
  }
  return t;
}

}  // namespace

void run(const ExperimentConfig& c, std::ostream& out) {
  Table table = [&] {
    if (c.command == "diagonal") return cmd_diagonal(c);
    if (c.command == "distortion") return cmd_distortion(c);
    if (c.command == "bound") return cmd_bound(c);
    if (c.command == "converge") return cmd_converge(c);
    if (c.command == "mixing") return cmd_mixing(c);
    throw UsageError("unknown command '" + c.command + "'");
  }();
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + c.out + "'");
  }
  std::ostream& os = c.out.empty() ? out : file;
  if (c.format == "jsonl") {
    table.write_jsonl(os, c.metadata());
  } else {
    table.write_csv(os, c.metadata());
  }
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    run(parse_command_line(args, std::getenv("MAXDEP_SEED")), out);
    return 0;
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const ConstructionError& e) {
    err << "invalid parameter: " << e.what() << '\n';
  } catch (const NotAvailable& e) {
    err << "not available: " << e.what() << '\n';
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
  } catch (const ContractError& e) {
    err << "invalid request: " << e.what() << '\n';
  }
  return 3;
}

}  // namespace maxdep::cli
