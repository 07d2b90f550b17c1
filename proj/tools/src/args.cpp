#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "densitylab/cli/run.hpp"
#include "densitylab/cli/spec_io.hpp"
#include "densitylab/errors.hpp"

namespace densitylab::cli {
namespace {

struct RawArgs {
  std::string format = "csv";
  std::string output;
  std::string set;
  std::string set2;
  std::string horizon;
  std::string k = "1";
  std::string span;
  std::string n_max = "1000";
  std::string point;
  std::string min;
  std::string min_a;
  std::string min_r;
  std::string min_d;
  std::string l = "3";
  std::string n = "2";
  std::vector<std::string> n_list;
  std::vector<double> r_grid;
  std::optional<unsigned> root_m;
  std::optional<double> grid_ratio;
  unsigned m = 2;
  std::string rho = "10";
};

CLI::App* add_set(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--set", raw.set, "Set: family name, example2:j=..,depth=.., explicit:..., intervals:a-b,..., JSON or file")
      ->required();
  return sub;
}

void add_horizon(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--horizon", raw.horizon, "Horizon H, integer or scientific (1e7); default 1e6");
}

u64 count_or(const std::string& text, u64 fallback) { return text.empty() ? fallback : parse_count(text); }

}  // namespace

ParseResult parse_arguments(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RawArgs raw;
  CLI::App app{"Finite-horizon density functionals, window measures, approximate progressions and productset gaps.",
               "densitylab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", raw.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", raw.output, "Write the report to this path instead of stdout");

  auto* density = add_set(app.add_subcommand("density", "Counting, logarithmic and Banach density profiles"), raw);
  add_horizon(density, raw);
  density->add_option("--n-max", raw.n_max, "Largest window size on the Banach grid");
  density->add_option("--grid-ratio", raw.grid_ratio, "Ratio of the Banach window grid");
  density->add_option("--m", raw.m, "Exponent of the BD_m profile");

  auto* monad = add_set(app.add_subcommand("monad", "Window measure nu over [k, N k]"), raw);
  monad->add_option("--k", raw.k, "Window start k");
  monad->add_option("--N", raw.span, "Window span N")->required();
  monad->add_option("--rho", raw.rho, "Ratio cut rho (10, 2.5 or 5/2)");
  monad->add_option("--point", raw.point, "Point for the monad, Phi and local densities");
  monad->add_option("--r", raw.r_grid, "Local density radii (each > rho)")->delimiter(',');
  monad->add_option("--root-m", raw.root_m, "Use nu_m over the root window with Nroot = N");

  auto* gp = add_set(app.add_subcommand("search-gp", "Least n-approximate geometric progression"), raw);
  add_horizon(gp, raw);
  gp->add_option("--l", raw.l, "Progression length");
  gp->add_option("--n", raw.n, "Approximation quality");
  gp->add_option("--min", raw.min, "Lower bound for both a and r");
  gp->add_option("--min-a", raw.min_a, "Search a > min_a");
  gp->add_option("--min-r", raw.min_r, "Search r > min_r");

  auto* pap = add_set(app.add_subcommand("search-pap", "Least n-approximate power progression"), raw);
  add_horizon(pap, raw);
  pap->add_option("--m", raw.m, "Power");
  pap->add_option("--l", raw.l, "Progression length");
  pap->add_option("--n", raw.n, "Approximation quality");
  pap->add_option("--min-a", raw.min_a, "Search a > min_a");
  pap->add_option("--min-d", raw.min_d, "Search d > min_d");

  auto* prod = add_set(app.add_subcommand("productset", "Multiplicative gap witnesses of A.B"), raw);
  prod->add_option("--set2", raw.set2, "Second factor set (defaults to --set)");
  add_horizon(prod, raw);
  prod->add_option("--n", raw.n_list, "Interval ratios n (default 4,16,64,256)")->delimiter(',');
  prod->add_option("--grid-ratio", raw.grid_ratio, "Ratio of the x grid");

  auto* certify = app.add_subcommand("certify", "Exhaustive certificates");
  certify->require_subcommand(1);
  auto* gp_free = add_set(certify->add_subcommand("gp-free", "No a < b < c in A with b^2 = a c"), raw);
  add_horizon(gp_free, raw);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? kExitOk : kExitValidation;
    return result;
  }

  try {
    RunConfig c;
    if (density->parsed()) {
      c.command = Command::density;
    } else if (monad->parsed()) {
      c.command = Command::monad;
    } else if (gp->parsed()) {
      c.command = Command::search_gp;
    } else if (pap->parsed()) {
      c.command = Command::search_pap;
    } else if (prod->parsed()) {
      c.command = Command::productset;
    } else {
      c.command = Command::certify_gp_free;
    }
    c.format = raw.format == "json" ? Format::json : Format::csv;
    c.sets.push_back(parse_set_argument(raw.set));
    if (!raw.set2.empty()) c.sets.push_back(parse_set_argument(raw.set2));
    c.horizon = count_or(raw.horizon, c.horizon);
    c.n_max = parse_count(raw.n_max);
    c.m = raw.m;
    c.k = parse_count(raw.k);
    c.span = count_or(raw.span, 0);
    c.rho = raw.rho;
    if (!raw.point.empty()) c.point = parse_count(raw.point);
    c.r_grid = raw.r_grid;
    c.root_m = raw.root_m;
    c.l = parse_count(raw.l);
    c.n = parse_count(raw.n);
    const u64 min = count_or(raw.min, 0);
    c.min_a = count_or(raw.min_a, raw.min.empty() ? c.min_a : min);
    c.min_r = count_or(raw.min_r, raw.min.empty() ? c.min_r : min);
    c.min_d = count_or(raw.min_d, c.min_d);
    if (!raw.n_list.empty()) {
      c.n_list.clear();
      for (const auto& n : raw.n_list) c.n_list.push_back(parse_count(n));
    }
    if (raw.grid_ratio) {
      if (c.command == Command::productset) {
        c.product_grid_ratio = *raw.grid_ratio;
      } else {
        c.grid_ratio = *raw.grid_ratio;
      }
    }
    result.config = std::move(c);
    if (!raw.output.empty()) result.output_path = raw.output;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << '\n';
    result.exit_code = kExitValidation;
  }
  return result;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_arguments(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  std::ostringstream report;
  const int code = run(*parsed.config, report, err);
  if (report.str().empty()) return code;
  if (!parsed.output_path) {
    out << report.str();
    return code;
  }
  std::ofstream file(*parsed.output_path, std::ios::binary);
  file << report.str();
  if (!file) {
    err << "cannot write " << *parsed.output_path << '\n';
    return kExitValidation;
  }
  return code;
}

}  // namespace densitylab::cli
