#pragma once

#include "boettcher/germ.hpp"
#include "boettcher/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace boettcher::cli {

enum class Command { weight, eval, verify, oracle_compare };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::weight;
  std::string germ_path;
  std::optional<Rational> alpha;
  double r1 = 0.05;
  double r2 = 0.05;
  double tol = 1e-12;
  int max_n = kDefaultMaxIterates;
  int samples = 500;
  std::uint64_t seed = 0x5eed;
  std::string out;
  Format format = Format::json;
  /// eval: N x N log-radial grid unless explicit points are given.
  int grid = 32;
  /// eval: CSV file of re_z,im_z,re_w,im_w rows.
  std::string points_path;
  bool timings = false;

  /// Throws std::invalid_argument on tol <= 0, samples < 1, or radii <= 0.
  void validate() const;
};

enum ExitCode : int { kOk = 0, kGateFailed = 1, kUsageError = 2 };

struct CommandOutput {
  std::string text;
  int exit_code = kOk;
  /// Human-readable note for stderr (refusals, "no oracle").
  std::string note;
};

CommandOutput cmd_weight(const Germ& f, const RunConfig& config);
CommandOutput cmd_eval(const Germ& f, const RunConfig& config);
CommandOutput cmd_verify(const Germ& f, const RunConfig& config);
CommandOutput cmd_oracle_compare(const Germ& f, const RunConfig& config);

/// Full entry point: parses flags, loads the germ, runs, writes the single output.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace boettcher::cli
