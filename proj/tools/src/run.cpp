#include "densitylab/cli/run.hpp"

#include <cstdio>
#include <cstdlib>
#include <new>

#include "densitylab/cli/spec_io.hpp"
#include "densitylab/density.hpp"
#include "densitylab/errors.hpp"
#include "densitylab/monad.hpp"
#include "densitylab/parallel.hpp"
#include "densitylab/productset.hpp"
#include "densitylab/progressions.hpp"

namespace densitylab::cli {
namespace {

/// Reals are reported with 12 significant digits.
json real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

struct Report {
  /// Run parameters, written as "# key=value" lines ahead of the CSV table.
  json params = json::object();
  /// Scalar results shown in the CSV header after the parameters.
  json results = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json body = json::object();
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Report& report, Format format, std::ostream& out) {
  if (format == Format::json) {
    out << report.body.dump(2) << '\n';
    return;
  }
  for (const auto* header : {&report.params, &report.results}) {
    for (const auto& [key, value] : header->items()) out << "# " << key << '=' << cell(value) << '\n';
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
    out << '\n';
  }
}

json base_params(const RunConfig& c, const char* command) {
  json p{{"command", command}, {"set", to_json(c.sets.at(0))}};
  if (c.command != Command::monad) p["horizon"] = c.horizon;
  if (c.sets.size() > 1) p["set2"] = to_json(c.sets[1]);
  return p;
}

Report density_report(const RunConfig& c) {
  const MemberSource src(c.sets[0], c.horizon);
  const auto checkpoints = default_checkpoints(c.horizon);
  const u64 n_max = std::min(c.n_max, c.horizon);
  Report r;
  r.params = base_params(c, "density");
  r.params["n_max"] = n_max;
  r.params["grid_ratio"] = real(c.grid_ratio);
  r.params["m"] = c.m;
  r.params["log_tail_ratio"] = kDefaultLogTailRatio;
  r.columns = {"functional", "m", "n", "k_star", "value"};

  json profiles = json::array();
  auto add_profile = [&](Functional f, unsigned m, const std::vector<Checkpoint>& points) {
    json rows = json::array();
    for (const auto& p : points) {
      r.rows.push_back({std::string(to_string(f)), m, p.n, p.k_star, real(p.extreme)});
      rows.push_back({{"n", p.n}, {"k_star", p.k_star}, {"value", real(p.extreme)}});
    }
    profiles.push_back({{"functional", std::string(to_string(f))}, {"m", m}, {"checkpoints", rows}});
  };
  for (auto f : {Functional::upper_count, Functional::lower_count}) {
    add_profile(f, 1, counting_profile(src, f, checkpoints).checkpoints);
  }
  for (auto f : {Functional::upper_log, Functional::lower_log}) {
    add_profile(f, 1, log_profile(src, f, checkpoints).checkpoints);
  }

  const auto lbd = lbd_estimate(src, n_max, c.horizon, c.grid_ratio);
  std::vector<u64> grid;
  for (const auto& p : lbd.grid) {
    if (p.n < c.horizon) grid.push_back(p.n);
  }
  const auto bd = parallel_map(grid.size(), [&](std::size_t i) {
    const auto s = bd_estimate(src, grid[i], c.horizon);
    return Checkpoint{grid[i], s.value, s.value, s.k_star};
  });
  add_profile(Functional::banach, 1, bd);
  std::vector<Checkpoint> lbd_points = lbd.grid;
  for (auto& p : lbd_points) p.extreme = p.value;
  add_profile(Functional::banach_log, 1, lbd_points);

  std::vector<u64> root_grid;
  for (const auto& p : lbd.grid) {
    const u64 n = p.n;
    const auto base = checked_add(1, n);
    const auto end = base ? checked_pow(*base, c.m) : std::nullopt;
    if (end && *end <= c.horizon) root_grid.push_back(n);
  }
  const auto bdm = parallel_map(root_grid.size(), [&](std::size_t i) {
    const auto s = bdm_window_sup(src, c.m, root_grid[i], c.horizon);
    return Checkpoint{root_grid[i], s.value, s.value, s.k_star};
  });
  add_profile(Functional::bd_m, c.m, bdm);

  r.results["lbd_estimate"] = real(lbd.value);
  r.results["lbd_n_star"] = lbd.n_star;
  r.body = {{"params", r.params},
            {"profiles", profiles},
            {"lbd_estimate", {{"value", real(lbd.value)}, {"n_star", lbd.n_star}, {"k_star", lbd.k_star}}}};
  return r;
}

std::vector<double> default_r_grid(const RatioCut& cut) { return {cut.value() * 10, cut.value() * 100}; }

Report monad_report(const RunConfig& c) {
  const Window w(c.k, c.span);
  const auto cut = RatioCut::parse(c.rho);
  Report r;
  r.params = base_params(c, "monad");
  r.params["rho"] = cut.to_string();
  json body{{"window", {{"k", c.k}, {"N", c.span}}}};
  double value = 0;
  double error_bound = 0;
  if (c.root_m) {
    const u64 end = root_window_end(c.k, c.span, *c.root_m);
    const auto s = member_intervals(c.sets[0], c.k, end);
    value = nu_m(c.span, *c.root_m, s, c.k);
    error_bound = static_cast<double>(kRangeSumSlack * static_cast<long double>(s.component_count()) /
                                      (static_cast<long double>(*c.root_m) * c.span));
    r.params["m"] = *c.root_m;
    r.params["window_end"] = end;
  } else {
    const auto s = member_intervals(c.sets[0], w.lo(), w.hi());
    const auto rep = nu(w, s);
    value = rep.value;
    error_bound = rep.error_bound;
    if (c.point) {
      const u64 x = *c.point;
      if (!w.contains(x)) throw DomainError("--point must lie in [k, N k]");
      const auto grid = c.r_grid.empty() ? default_r_grid(cut) : c.r_grid;
      const auto plus = density_plus(w, cut, s, x, grid);
      const auto minus = density_minus(w, cut, s, x, grid);
      const auto monad = monad_of(w, cut, x);
      auto local = [](const std::vector<LocalDensity>& v) {
        json out = json::array();
        for (const auto& d : v) out.push_back({{"r", real(d.r)}, {"value", real(d.value)}});
        return out;
      };
      body["point"] = {{"x", x},
                       {"monad", {monad.lo, monad.hi}},
                       {"phi", real(phi(w, x))},
                       {"density_plus", local(plus)},
                       {"density_minus", local(minus)},
                       {"density_estimate", real(std::min(density_estimate(plus), density_estimate(minus)))}};
      r.params["point"] = x;
      r.results["monad_lo"] = monad.lo;
      r.results["monad_hi"] = monad.hi;
      r.results["phi"] = body["point"]["phi"];
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string tag = "@r=" + cell(real(grid[i]));
        r.results["density_plus" + tag] = real(plus[i].value);
        r.results["density_minus" + tag] = real(minus[i].value);
      }
    }
  }
  r.columns = {"k", "N", "value", "error_bound"};
  r.rows.push_back({c.k, c.span, real(value), real(error_bound)});
  body["value"] = real(value);
  body["error_bound"] = real(error_bound);
  body["params"] = r.params;
  r.body = std::move(body);
  return r;
}

Report witness_report(const RunConfig& c, const ApproxWitness& w, const char* command, const char* step) {
  Report r;
  r.params = base_params(c, command);
  r.params["l"] = c.l;
  r.params["n"] = c.n;
  r.params["min_a"] = c.min_a;
  if (w.kind == ProgressionKind::geometric) {
    r.params["min_r"] = c.min_r;
  } else {
    r.params["m"] = w.m;
    r.params["min_d"] = c.min_d;
  }
  r.results["a"] = w.a;
  r.results[step] = w.step;
  r.columns = {"i", "term", "match"};
  json matches = json::array();
  for (std::size_t i = 0; i < w.matches.size(); ++i) {
    r.rows.push_back({i, w.matches[i].first, w.matches[i].second});
    matches.push_back({w.matches[i].first, w.matches[i].second});
  }
  r.body = {{"a", w.a}, {step, w.step}, {"l", w.l}, {"n", w.n}, {"matches", matches}, {"params", r.params}};
  if (w.kind == ProgressionKind::power_ap) r.body["m"] = w.m;
  return r;
}

Report productset_report(const RunConfig& c, bool& any) {
  const auto& a = c.sets[0];
  const auto& b = c.sets.size() > 1 ? c.sets[1] : c.sets[0];
  Report r;
  r.params = base_params(c, "productset");
  r.params["n"] = c.n_list;
  r.params["grid_ratio"] = real(c.product_grid_ratio);
  r.columns = {"n", "x", "m", "products", "lo", "hi"};
  json reports = json::array();
  any = false;
  for (u64 n : c.n_list) {
    const auto g = gap_witness(a, b, n, c.horizon, {c.product_grid_ratio, GapScan::automatic});
    if (!g) continue;
    any = true;
    r.rows.push_back({g->n, g->x, g->m, g->products_examined, g->lo, g->hi});
    reports.push_back({{"n", g->n},
                       {"x", g->x},
                       {"m", g->m},
                       {"products", g->products_examined},
                       {"lo", g->lo},
                       {"hi", g->hi},
                       {"last_product", g->last_product}});
  }
  r.body = {{"params", r.params}, {"reports", reports}};
  return r;
}

Report certify_report(const RunConfig& c, const GpCertificate& cert) {
  Report r;
  r.params = base_params(c, "certify gp-free");
  r.columns = {"gp_free", "a", "b", "c", "pairs_checked"};
  const auto w = cert.witness.value_or(std::array<u64, 3>{0, 0, 0});
  r.rows.push_back({cert.gp_free ? 1 : 0, w[0], w[1], w[2], cert.pairs_checked});
  r.body = {{"gp_free", cert.gp_free},
            {"witness", cert.witness ? json(*cert.witness) : json(nullptr)},
            {"pairs_checked", cert.pairs_checked},
            {"params", r.params}};
  return r;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  switch (c.command) {
    case Command::density:
      emit(density_report(c), c.format, out);
      return kExitOk;
    case Command::monad:
      emit(monad_report(c), c.format, out);
      return kExitOk;
    case Command::search_gp: {
      const auto w = find_geo(c.sets[0], c.l, c.n, c.min_a, c.min_r, c.horizon);
      if (!w) {
        err << "search exhausted: no geometric progression up to horizon " << c.horizon << '\n';
        return kExitExhausted;
      }
      emit(witness_report(c, *w, "search-gp", "r"), c.format, out);
      return kExitOk;
    }
    case Command::search_pap: {
      const auto w = find_power_ap(c.sets[0], c.m, c.l, c.n, c.min_a, c.min_d, c.horizon);
      if (!w) {
        err << "search exhausted: no power progression up to horizon " << c.horizon << '\n';
        return kExitExhausted;
      }
      emit(witness_report(c, *w, "search-pap", "d"), c.format, out);
      return kExitOk;
    }
    case Command::productset: {
      bool any = false;
      emit(productset_report(c, any), c.format, out);
      if (!any) err << "no candidate x yields a nonempty product window\n";
      return any ? kExitOk : kExitExhausted;
    }
    case Command::certify_gp_free: {
      const auto cert = gp_free_certify(c.sets[0], c.horizon);
      emit(certify_report(c, cert), c.format, out);
      if (!cert.gp_free) {
        const auto& w = *cert.witness;
        err << "not gp-free: " << w[0] << ", " << w[1] << ", " << w[2] << '\n';
        return kExitRefuted;
      }
      return kExitOk;
    }
  }
  return kExitValidation;
}

}  // namespace

void validate(const RunConfig& c) {
  const std::size_t max_sets = c.command == Command::productset ? 2 : 1;
  if (c.sets.empty() || c.sets.size() > max_sets) {
    throw ValidationError(max_sets == 2 ? "productset takes one or two sets" : "exactly one --set is required");
  }
  if (c.horizon < 2) throw ValidationError("horizon must be >= 2");
  switch (c.command) {
    case Command::density:
      if (c.n_max < 2) throw ValidationError("--n-max must be >= 2");
      if (c.m < 1) throw ValidationError("--m must be >= 1");
      break;
    case Command::monad:
      if (c.span < 2) throw ValidationError("monad requires --N >= 2");
      if (c.k < 1) throw ValidationError("monad requires --k >= 1");
      if (c.root_m && c.point) throw ValidationError("--point cannot be combined with --root-m");
      if (!c.r_grid.empty() && !c.point) throw ValidationError("--r requires --point");
      break;
    case Command::search_gp:
    case Command::search_pap:
      if (c.l < 1) throw ValidationError("--l must be >= 1");
      if (c.n < 1) throw ValidationError("--n must be >= 1");
      if (c.command == Command::search_pap && c.m < 1) throw ValidationError("--m must be >= 1");
      break;
    case Command::productset:
      if (c.n_list.empty()) throw ValidationError("productset needs at least one --n");
      for (u64 n : c.n_list) {
        if (n < 2) throw ValidationError("productset --n values must be >= 2");
      }
      break;
    case Command::certify_gp_free:
      break;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    return dispatch(config, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::bad_alloc&) {
    err << "capacity error: out of memory\n";
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace densitylab::cli
