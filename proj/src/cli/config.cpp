#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

#include "maxdep/cli.hpp"

namespace maxdep::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw UsageError("bad number '" + s + "' in " + what);
  return v;
}

std::vector<std::pair<std::string, std::string>> fields(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"command", c.command},   {"model", c.model},         {"margin", c.margin},
      {"generator", c.generator}};
  if (c.theta) kv.emplace_back("theta", fmt(*c.theta));
  kv.insert(kv.end(), {{"k", std::to_string(c.k)},
                       {"phi", fmt(c.phi)},
                       {"rho-corr", fmt(c.rho_corr)},
                       {"n", c.n},
                       {"reps", std::to_string(c.reps)},
                       {"u-grid", c.u_grid},
                       {"x-grid", c.x_grid},
                       {"rate", c.rate},
                       {"seed", std::to_string(c.seed)},
                       {"format", c.format},
                       {"preset", c.preset},
                       {"t1", fmt(c.t1)},
                       {"t2", fmt(c.t2)}});
  return kv;
}

}  // namespace

std::string ExperimentConfig::to_text() const {
  // The subcommand is chosen on the command line, so it is kept as a comment.
  std::ostringstream os;
  for (const auto& [key, value] : fields(*this)) {
    if (key == "command") {
      os << "# command=" << value << "\n";
    } else {
      os << key << "=\"" << value << "\"\n";
    }
  }
  if (!out.empty()) os << "out=\"" << out << "\"\n";
  if (workers != 0) os << "workers=\"" << workers << "\"\n";
  return os.str();
}

std::string ExperimentConfig::metadata() const {
  std::string line;
  for (const auto& [key, value] : fields(*this)) {
    if (!line.empty()) line += ' ';
    line += key + "=" + value;
  }
  return line;
}

std::vector<std::uint64_t> parse_n_schedule(const std::string& spec) {
  std::vector<std::uint64_t> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::string a = spec.substr(0, dots);
    const std::string b = spec.substr(dots + 2);
    if (a.rfind("2^", 0) != 0 || b.rfind("2^", 0) != 0) {
      throw UsageError("n schedule range must look like 2^a..2^b, got '" + spec + "'");
    }
    const double lo = parse_double(a.substr(2), "--n");
    const double hi = parse_double(b.substr(2), "--n");
    if (lo != std::floor(lo) || hi != std::floor(hi) || lo < 0 || hi > 62 || lo > hi) {
      throw UsageError("bad n schedule '" + spec + "'");
    }
    for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e) out.push_back(1ull << e);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_double(item, "--n");
    if (!(v >= 1.0) || v != std::floor(v) || v > 9.2e18) {
      throw UsageError("n values must be positive integers, got '" + item + "'");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw UsageError("empty n schedule");
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  if (std::count(spec.begin(), spec.end(), ':') == 2) {
    std::stringstream ss(spec);
    std::string lo, hi, count;
    std::getline(ss, lo, ':');
    std::getline(ss, hi, ':');
    std::getline(ss, count, ':');
    const double a = parse_double(lo, "grid");
    const double b = parse_double(hi, "grid");
    const double m = parse_double(count, "grid");
    if (!(m >= 1.0) || m != std::floor(m) || (m == 1.0 && a != b) || a > b) {
      throw UsageError("bad grid '" + spec + "'");
    }
    std::vector<double> out(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = out.size() == 1 ? a : a + (b - a) * static_cast<double>(i) / (m - 1.0);
    }
    out.back() = b;
    return out;
  }
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, "grid"));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

ExperimentConfig parse_command_line(const std::vector<std::string>& args, const char* env_seed) {
  ExperimentConfig c;
  std::string theta;
  CLI::App app{"Maxima of dependent sequences: diagonals, distortions, rate bounds, Monte Carlo",
               "maxdep"};
  app.set_config("--config", "", "Flat key=value file; flags override it");
  app.add_option("--model", c.model, "Dependence model / diagonal family");
  app.add_option("--margin", c.margin, "Margin: frechet[:alpha], exponential[:lambda], normal, uniform, pareto:alpha, raw");
  app.add_option("--generator", c.generator, "Archimedean generator name[:theta]");
  app.add_option("--theta", theta, "Family parameter");
  app.add_option("--k", c.k, "Moving-maximum window");
  app.add_option("--phi", c.phi, "AR(1) coefficient");
  app.add_option("--rho-corr", c.rho_corr, "Berman equicorrelation");
  app.add_option("--n", c.n, "n schedule: list or 2^a..2^b");
  app.add_option("--reps", c.reps, "Monte Carlo repetitions");
  app.add_option("--u-grid", c.u_grid, "u grid: list or lo:hi:count");
  app.add_option("--x-grid", c.x_grid, "x grid: list or lo:hi:count");
  app.add_option("--rate", c.rate, "canonical | n | eta | power:a");
  app.add_option("--seed", c.seed, "Master seed (MAXDEP_SEED overrides)");
  app.add_option("--format", c.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--preset", c.preset, "Named preset (distortion: figure1)");
  app.add_option("--t1", c.t1, "Mixing block fraction 1");
  app.add_option("--t2", c.t2, "Mixing block fraction 2");
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--workers", c.workers, "OpenMP threads (0: default)");
  const std::pair<const char*, const char*> commands[] = {
      {"diagonal", "Diagonal delta_n(u) of a family over an n schedule and u grid"},
      {"distortion", "Limit distortion D, its density and quantile on a u grid"},
      {"bound", "Rate r_n, exact power-difference sup and composite bound for a model"},
      {"converge", "Monte Carlo sup distance of normalized maxima to the limit law"},
      {"mixing", "Block-mixing discrepancy of a diagonal family"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  if (!theta.empty()) c.theta = parse_double(theta, "--theta");
  if (env_seed != nullptr && *env_seed != '\0') {
    std::uint64_t s = 0;
    const char* end = env_seed + std::char_traits<char>::length(env_seed);
    auto res = std::from_chars(env_seed, end, s);
    if (res.ec != std::errc() || res.ptr != end) {
      throw UsageError(std::string("MAXDEP_SEED must be a decimal 64-bit integer, got '") +
                       env_seed + "'");
    }
    c.seed = s;
  }
  return c;
}

}  // namespace maxdep::cli
