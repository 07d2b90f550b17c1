#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "densitylab/intset.hpp"

namespace densitylab::cli {

enum class Command { density, monad, search_gp, search_pap, productset, certify_gp_free };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitExhausted = 3;
inline constexpr int kExitCapacity = 4;

struct RunConfig {
  Command command = Command::density;
  /// One set, or two for productset.
  std::vector<SetSpec> sets;
  u64 horizon = 1'000'000;
  Format format = Format::csv;

  // density
  u64 n_max = 1000;
  double grid_ratio = 1.4142135623730951;
  unsigned m = 2;

  // monad
  u64 k = 1;
  u64 span = 0;
  std::string rho = "10";
  std::optional<u64> point;
  std::vector<double> r_grid;
  /// nu_m with Nroot = span when set.
  std::optional<unsigned> root_m;

  // searches
  u64 l = 3;
  u64 n = 2;
  u64 min_a = 0;
  u64 min_r = 1;
  u64 min_d = 0;

  // productset
  std::vector<u64> n_list{4, 16, 64, 256};
  double product_grid_ratio = 1.1;
};

/// Validates per-command requirements; throws ValidationError.
void validate(const RunConfig& config);

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a config. On --help or a usage error writes to out/err
/// and returns the exit code instead.
struct ParseResult {
  std::optional<RunConfig> config;
  std::optional<std::string> output_path;
  int exit_code = kExitOk;
};
ParseResult parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// parse_arguments followed by run, writing to --output when given.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace densitylab::cli
