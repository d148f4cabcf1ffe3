#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxdep::cli {

inline constexpr std::uint64_t kDefaultSeed = 2024;

// Bad flags or specs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help: the message is the help text; exit code 0.
class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

// Everything a run depends on. Serializes to the flat key=value config-file
// format (keys are the long flag names) and back without loss. `workers` and
// `out` affect where and how fast, never what, so they stay out of the
// metadata line.
struct ExperimentConfig {
  std::string command;
  std::string model = "iid";
  std::string margin = "frechet";
  std::string generator;
  std::optional<double> theta;
  int k = 1;
  double phi = 0.5;
  double rho_corr = 0.5;
  std::string n = "2^6..2^10";
  std::uint64_t reps = 10000;
  std::string u_grid = "0:1:11";
  std::string x_grid;
  std::string rate = "canonical";
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string preset;
  double t1 = 0.25;
  double t2 = 0.25;
  std::string out;
  int workers = 0;

  // key=value lines, including `command`.
  std::string to_text() const;
  // Single-line "key=value ..." summary for table metadata.
  std::string metadata() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Parses argv-style arguments (without the program name). Precedence:
// flags > --config file > defaults; a MAXDEP_SEED value (env_seed) overrides
// the seed from both. Throws UsageError.
ExperimentConfig parse_command_line(const std::vector<std::string>& args,
                                    const char* env_seed = nullptr);

// "10,100,1000" or "2^a..2^b" (every power of two in between).
std::vector<std::uint64_t> parse_n_schedule(const std::string& spec);
// "0.1,0.5,0.9" or "lo:hi:count".
std::vector<double> parse_grid(const std::string& spec);

// Runs the configured command, writing the table to `out`. Library errors
// propagate; run_main maps them to exit codes.
void run(const ExperimentConfig& config, std::ostream& out);

// Full entry point: 0 success, 2 usage error, 3 numeric-domain error.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxdep::cli
