#include "sturm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sturm/baselines.hpp"
#include "sturm/errors.hpp"
#include "sturm/potentials.hpp"
#include "sturm/reference.hpp"
#include "sturm/secular.hpp"
#include "sturm/variational.hpp"

namespace sturm::cli {

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::vector<int> parse_levels(const std::string& text) {
  const auto fail = [&]() -> void {
    throw ConfigError(
        "levels: expected 'a..b', a comma-separated list, or a single "
        "index, got '" +
        text + "'");
  };
  const auto to_index = [&](const std::string& tok) {
    std::size_t pos = 0;
    int n = -1;
    try {
      n = std::stoi(tok, &pos);
    } catch (...) {
      fail();
    }
    if (pos != tok.size() || n < 0) fail();
    return n;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int a = to_index(text.substr(0, dots));
    const int b = to_index(text.substr(dots + 2));
    if (b < a) fail();
    for (int n = a; n <= b; ++n) out.push_back(n);
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_index(tok));
  }
  if (out.empty()) fail();
  return out;
}

namespace {

struct RunConfig {
  std::string potential;
  double k = 2.0;
  double eps = -1.0;  // sentinel: filled with a per-potential default
  double lambda = 1.0;
  double alpha0 = 1.0;
  double zeta = 0.05;
  double e_target = 2.0;
  double hbar = 1.0;
  double mass = 0.5;
  std::vector<std::string> methods;
  std::string levels_text = "0";
  std::vector<std::string> index_sets;
  std::string format = "table";
  std::string csa_mode = "seed";
  double x_max = 0.0;  // oracle box; 0 = auto
  int n_points = 4001;
  bool with_oracle = false;
};

struct Tolerances {
  double vsa_abs = 5e-5;
  double wkb_abs = 5e-4;
  double oracle_rel = 1e-4;
};

struct Setup {
  Potential v{QuarticAnharmonic{}};
  SystemParams sys;
  std::string name;
  std::string describe;
  double k = 0.0, eps = 0.0, lambda = 0.0;
};

const std::vector<std::string> kMethods{"vsa0", "vsa1", "vsa2", "csa",
                                        "pt0",  "pt1",  "wkb0", "oracle"};

Setup make_setup(const RunConfig& cfg) {
  Setup st;
  st.sys = SystemParams{cfg.hbar, cfg.mass};
  if (cfg.hbar <= 0.0 || cfg.mass <= 0.0)
    throw ConfigError("hbar and m must be positive");
  st.name = cfg.potential;
  st.k = cfg.k;
  st.lambda = cfg.lambda;
  const auto eps_or = [&](double dflt) {
    return cfg.eps < 0.0 ? dflt : cfg.eps;
  };
  if (st.name == "harmonic") {
    st.eps = 0.0;
    st.v = QuarticAnharmonic{st.k, 0.0};
    st.describe = "harmonic (k = " + format_sig(st.k, 6) + ")";
  } else if (st.name == "qao") {
    st.eps = eps_or(0.1);
    st.v = QuarticAnharmonic{st.k, st.eps};
    st.describe = "qao (k = " + format_sig(st.k, 6) +
                  ", eps = " + format_sig(st.eps, 6) + ")";
  } else if (st.name == "quartic") {
    st.eps = eps_or(1.0);
    st.v = PureQuartic{st.eps};
    st.describe = "quartic (eps = " + format_sig(st.eps, 6) + ")";
  } else if (st.name == "gaussian") {
    st.eps = eps_or(2.0);
    st.v = Gaussian{st.lambda, st.eps};
    st.describe = "gaussian (lambda = " + format_sig(st.lambda, 6) +
                  ", eps = " + format_sig(st.eps, 6) + ")";
  } else if (st.name == "gtilde") {
    st.eps = eps_or(1.0);
    st.v = GaussianTilde{st.lambda, st.eps};
    st.describe = "gtilde (lambda = " + format_sig(st.lambda, 6) +
                  ", eps = " + format_sig(st.eps, 6) + ")";
  } else if (st.name == "family") {
    st.eps = 0.0;
    st.v = make_exact_family(cfg.alpha0, cfg.zeta, cfg.e_target, st.sys);
    st.describe = "family (alpha0 = " + format_sig(cfg.alpha0, 6) +
                  ", zeta = " + format_sig(cfg.zeta, 6) +
                  ", E = " + format_sig(cfg.e_target, 6) + ")";
  } else {
    throw ConfigError(
        "unknown potential '" + st.name +
        "' (expected qao|harmonic|quartic|gaussian|gtilde|family)");
  }
  return st;
}

std::string tag_name(MethodTag tag) {
  switch (tag) {
    case MethodTag::closed_form_cubic:
      return "closed_form_cubic";
    case MethodTag::closed_form_quartic_eta:
      return "closed_form_quartic_eta";
    case MethodTag::numeric_minimize:
      return "numeric_minimize";
  }
  return "unknown";
}

CsaMode parse_csa_mode(const RunConfig& cfg) {
  if (cfg.csa_mode == "seed") return CsaMode::harmonic_seed;
  if (cfg.csa_mode == "fixed-point") return CsaMode::fixed_point;
  throw ConfigError("csa-mode: expected 'seed' or 'fixed-point'");
}

double natural_k0(const Setup& st) {
  const double k0 = natural_v0(st.v).k0;
  if (k0 <= 0.0)
    throw UnsupportedPotential(
        "the potential's harmonic scale at the origin is not positive, so "
        "the oscillator pivot basis does not apply; use the "
        "finite-difference oracle");
  return k0;
}

ResultRecord solve_one(const Setup& st, const std::string& method, int level,
                       const std::optional<std::vector<int>>& index_set,
                       CsaMode csa_mode) {
  ResultRecord rec;
  rec.level = level;
  rec.method = method;
  if (index_set && method != "vsa1" && method != "vsa2")
    throw ConfigError("index sets apply to vsa1/vsa2 only");
  if (method == "vsa0") {
    if (st.name == "quartic") {
      const auto sol = solve_quartic_order0(st.sys, st.eps, level);
      rec.energy = sol.energies.at(level);
      rec.script_e_star = sol.script_e_star;
      rec.tag = tag_name(sol.method_tag);
    } else if (st.name == "qao" && st.eps > 0.0) {
      const auto sol = solve_qao_order0(st.sys, st.k, st.eps, level);
      rec.energy = sol.energies.at(level);
      rec.script_e_star = sol.script_e_star;
      rec.tag = tag_name(sol.method_tag);
    } else if (st.name == "gaussian") {
      if (level != 0)
        throw ConfigError(
            "vsa0 on the Gaussian well covers the ground level only");
      const auto sol = solve_gaussian_ground_order0(st.sys, st.lambda, st.eps);
      rec.energy = sol.energies.at(0);
      rec.script_e_star = sol.script_e_star;
      rec.tag = tag_name(sol.method_tag);
    } else {
      const double k0 = natural_k0(st);
      const double se = fix_script_e_order0_general(st.sys, k0, level, st.v);
      const auto sys1 = build_system(st.sys, k0, {level}, se, st.v);
      rec.energy = 0.5 * se + sys1.v_diag(0);
      rec.script_e_star = se;
      rec.tag = "self_consistent_order0";
    }
  } else if (method == "vsa1" || method == "vsa2") {
    const int order = method == "vsa1" ? 1 : 2;
    std::vector<int> indices;
    if (index_set) {
      indices = *index_set;
    } else {
      indices = {level, level + 2};
      if (order == 2) indices.push_back(level + 4);
    }
    if (static_cast<int>(indices.size()) != order + 1)
      throw ConfigError(method + " takes index sets of " +
                        std::to_string(order + 1) + " states");
    const auto pos = std::find(indices.begin(), indices.end(), level);
    if (pos == indices.end())
      throw ConfigError("level " + std::to_string(level) +
                        " is not a member of its index set");
    const int branch = static_cast<int>(pos - indices.begin());
    const double k0 = natural_k0(st);
    const auto sol = minimize_script_e(st.sys, k0, indices, st.v, order,
                                       branch, MinimaPolicy::smallest_script_e);
    rec.energy = sol.energies.at(level);
    rec.script_e_star = sol.script_e_star;
    rec.tag = tag_name(sol.method_tag);
  } else if (method == "csa") {
    const double k0 = natural_k0(st);
    rec.energy = conventional_sturmian_order0(st.sys, k0, level, st.v,
                                              csa_mode);
    if (csa_mode == CsaMode::harmonic_seed) {
      rec.script_e_star =
          st.sys.hbar * std::sqrt(k0 / st.sys.mass) * (level + 0.5);
      rec.tag = "harmonic_seed";
    } else {
      rec.script_e_star = rec.energy;  // self-consistency script_e = E
      rec.tag = "fixed_point";
    }
  } else if (method == "pt0" || method == "pt1") {
    const int order = method == "pt1" ? 1 : 0;
    if (st.name == "qao" || st.name == "harmonic") {
      rec.energy = perturbation_qao(st.sys, st.k, st.eps, level, order);
    } else if (st.name == "gaussian") {
      if (level != 0)
        throw ConfigError(
            "perturbation theory on the Gaussian well covers the ground "
            "level only");
      rec.energy =
          perturbation_gaussian_ground(st.sys, st.lambda, st.eps, order);
    } else {
      throw ConfigError(
          "perturbation theory applies to qao, harmonic, and the Gaussian "
          "ground level");
    }
    rec.tag = "perturbation";
  } else if (method == "wkb0") {
    if (st.name != "quartic")
      throw ConfigError("wkb0 applies to the pure quartic well only");
    rec.energy = wkb_quartic_order0(st.sys, st.eps, level);
    rec.tag = "wkb_action";
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  return rec;
}

OracleResult run_oracle(const Setup& st, const RunConfig& cfg,
                        int max_level) {
  OracleConfig oc;
  oc.x_max = cfg.x_max;
  oc.n_points = cfg.n_points;
  oc.levels = max_level + 1;
  return oracle_spectrum(st.sys, st.v, oc);
}

// ---- emitters --------------------------------------------------------------

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string opt_cell(const std::optional<double>& v, int digits) {
  return v ? format_sig(*v, digits) : "-";
}

void emit_csv(const std::vector<ResultRecord>& recs, std::ostream& out) {
  out << "level,method,energy,script_e_star,reference,rel_error\n";
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_sig(*v, 10) : std::string();
  };
  for (const auto& r : recs)
    out << r.level << ',' << r.method << ',' << format_sig(r.energy, 10)
        << ',' << cell(r.script_e_star) << ',' << cell(r.reference) << ','
        << cell(r.rel_error) << "\n";
}

void emit_json_records(const Setup& st, const std::string& method,
                       const std::vector<ResultRecord>& recs,
                       std::ostream& out) {
  out << "{\"potential\":\"" << st.name << "\",\"method\":\"" << method
      << "\",\"hbar\":" << format_sig(st.sys.hbar, 10)
      << ",\"mass\":" << format_sig(st.sys.mass, 10) << ",\"levels\":[";
  bool first = true;
  for (const auto& r : recs) {
    if (!first) out << ',';
    first = false;
    out << "{\"n\":" << r.level << ",\"E\":" << format_sig(r.energy, 10);
    if (r.script_e_star)
      out << ",\"script_e_star\":" << format_sig(*r.script_e_star, 10);
    if (r.reference) {
      out << ",\"reference\":" << format_sig(*r.reference, 10);
      out << ",\"rel_err\":" << format_sig(*r.rel_error, 10);
    }
    if (r.error_estimate)
      out << ",\"error_estimate\":" << format_sig(*r.error_estimate, 10);
    if (!r.tag.empty()) out << ",\"tag\":\"" << r.tag << "\"";
    out << '}';
  }
  out << "]}\n";
}

void emit_table_records(const Setup& st, const std::string& method,
                        const std::vector<ResultRecord>& recs,
                        std::ostream& out) {
  out << "potential: " << st.describe << "   method: " << method
      << "   hbar = " << format_sig(st.sys.hbar, 6)
      << ", m = " << format_sig(st.sys.mass, 6) << "\n";
  bool has_se = false, has_ref = false, has_est = false;
  for (const auto& r : recs) {
    has_se = has_se || r.script_e_star.has_value();
    has_ref = has_ref || r.reference.has_value();
    has_est = has_est || r.error_estimate.has_value();
  }
  out << pad("  n", 5) << pad("energy", 14);
  if (has_se) out << pad("script_e*", 14);
  if (has_ref) out << pad("reference", 14) << pad("rel_err", 12);
  if (has_est) out << pad("est_error", 12);
  out << "tag\n";
  for (const auto& r : recs) {
    out << pad("  " + std::to_string(r.level), 5)
        << pad(format_sig(r.energy, 6), 14);
    if (has_se) out << pad(opt_cell(r.script_e_star, 6), 14);
    if (has_ref)
      out << pad(opt_cell(r.reference, 6), 14)
          << pad(opt_cell(r.rel_error, 3), 12);
    if (has_est) out << pad(opt_cell(r.error_estimate, 2), 12);
    out << r.tag << "\n";
  }
}

void emit_records(const Setup& st, const std::string& method,
                  const std::vector<ResultRecord>& recs,
                  const std::string& format, std::ostream& out) {
  if (format == "csv")
    emit_csv(recs, out);
  else if (format == "json")
    emit_json_records(st, method, recs, out);
  else
    emit_table_records(st, method, recs, out);
}

// ---- solve / compare / oracle ----------------------------------------------

std::vector<int> sorted_levels(const RunConfig& cfg) {
  auto levels = parse_levels(cfg.levels_text);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

// One optional index set per level: a single --index-set applies to every
// level; several pair up with the ascending level list.
std::vector<std::optional<std::vector<int>>> resolve_index_sets(
    const RunConfig& cfg, const std::vector<int>& levels) {
  std::vector<std::optional<std::vector<int>>> sets(levels.size());
  if (cfg.index_sets.empty()) return sets;
  if (cfg.index_sets.size() != 1 && cfg.index_sets.size() != levels.size())
    throw ConfigError(
        "--index-set: give one set, or exactly one per requested level");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& text =
        cfg.index_sets.size() == 1 ? cfg.index_sets[0] : cfg.index_sets[i];
    auto idx = parse_levels(text);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() < 2)
      throw ConfigError("--index-set: need at least two distinct indices");
    sets[i] = std::move(idx);
  }
  return sets;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Setup st = make_setup(cfg);
  const auto levels = sorted_levels(cfg);
  if (cfg.methods.size() != 1)
    throw ConfigError("solve takes exactly one --method");
  const std::string& method = cfg.methods.front();
  std::vector<ResultRecord> recs;
  if (method == "oracle") {
    const auto orc = run_oracle(st, cfg, levels.back());
    for (int n : levels) {
      ResultRecord r;
      r.level = n;
      r.method = "oracle";
      r.energy = orc.energies.at(static_cast<std::size_t>(n));
      r.error_estimate = orc.error_estimates.at(static_cast<std::size_t>(n));
      r.tag = "finite_difference";
      recs.push_back(std::move(r));
    }
  } else {
    const auto sets = resolve_index_sets(cfg, levels);
    const CsaMode mode = parse_csa_mode(cfg);
    for (std::size_t i = 0; i < levels.size(); ++i)
      recs.push_back(solve_one(st, method, levels[i], sets[i], mode));
    if (cfg.with_oracle) {
      const auto orc = run_oracle(st, cfg, levels.back());
      for (auto& r : recs) {
        r.reference = orc.energies.at(static_cast<std::size_t>(r.level));
        r.rel_error = std::abs(r.energy - *r.reference) / std::abs(*r.reference);
      }
    }
  }
  emit_records(st, method, recs, cfg.format, out);
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Setup st = make_setup(cfg);
  const auto levels = sorted_levels(cfg);
  const auto orc = run_oracle(st, cfg, levels.back());
  std::vector<ResultRecord> recs;
  for (int n : levels) {
    ResultRecord r;
    r.level = n;
    r.method = "oracle";
    r.energy = orc.energies.at(static_cast<std::size_t>(n));
    r.error_estimate = orc.error_estimates.at(static_cast<std::size_t>(n));
    r.tag = "finite_difference";
    recs.push_back(std::move(r));
  }
  if (cfg.format == "table")
    out << "box: x_max = " << format_sig(orc.x_max, 6) << ", "
        << cfg.n_points << " points\n";
  emit_records(st, "oracle", recs, cfg.format, out);
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const Setup st = make_setup(cfg);
  const auto levels = sorted_levels(cfg);
  if (cfg.methods.size() < 2)
    throw ConfigError("compare takes at least two --method entries");
  if (!cfg.index_sets.empty())
    throw ConfigError(
        "compare uses the default index sets; --index-set is solve-only");
  const CsaMode mode = parse_csa_mode(cfg);
  const auto orc = run_oracle(st, cfg, levels.back());

  // records in method-major order, one per (method, level)
  std::vector<std::vector<ResultRecord>> per_method;
  for (const auto& m : cfg.methods) {
    std::vector<ResultRecord> col;
    for (int n : levels) {
      ResultRecord r;
      if (m == "oracle") {
        r.level = n;
        r.method = "oracle";
        r.energy = orc.energies.at(static_cast<std::size_t>(n));
        r.error_estimate = orc.error_estimates.at(static_cast<std::size_t>(n));
        r.tag = "finite_difference";
      } else {
        r = solve_one(st, m, n, std::nullopt, mode);
      }
      r.reference = orc.energies.at(static_cast<std::size_t>(n));
      r.rel_error = std::abs(r.energy - *r.reference) / std::abs(*r.reference);
      col.push_back(std::move(r));
    }
    per_method.push_back(std::move(col));
  }

  if (cfg.format == "json") {
    out << "{\"potential\":\"" << st.name << "\",\"levels\":[";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (i) out << ',';
      out << "{\"n\":" << levels[i] << ",\"methods\":{";
      for (std::size_t j = 0; j < cfg.methods.size(); ++j) {
        if (j) out << ',';
        const auto& r = per_method[j][i];
        out << "\"" << r.method << "\":{\"E\":" << format_sig(r.energy, 10)
            << ",\"rel_err\":" << format_sig(*r.rel_error, 10) << "}";
      }
      out << "}}";
    }
    out << "]}\n";
  } else if (cfg.format == "csv") {
    std::vector<ResultRecord> flat;
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t j = 0; j < cfg.methods.size(); ++j)
        flat.push_back(per_method[j][i]);
    emit_csv(flat, out);
  } else {
    out << "potential: " << st.describe
        << "   reference: finite-difference oracle\n";
    out << pad("  n", 5);
    for (const auto& m : cfg.methods)
      out << pad(m, 14) << pad("rel_err", 12);
    out << "\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
      out << pad("  " + std::to_string(levels[i]), 5);
      for (std::size_t j = 0; j < cfg.methods.size(); ++j) {
        const auto& r = per_method[j][i];
        out << pad(format_sig(r.energy, 6), 14)
            << pad(format_sig(*r.rel_error, 3), 12);
      }
      out << "\n";
    }
  }
  return 0;
}

// ---- stored-table reproduction ----------------------------------------------

struct CellTally {
  int checked = 0;
  std::vector<std::string> failures;

  // Format a checked cell: the computed value plus '*' when it misses the
  // stored reference; unchecked cells go through plain().
  std::string num(double computed, int digits, bool ok,
                  const std::string& label, double stored) {
    ++checked;
    if (!ok)
      failures.push_back(label + ": computed " + format_sig(computed, 7) +
                         " vs stored " + format_sig(stored, 7));
    return format_sig(computed, digits) + (ok ? " " : "*");
  }
  static std::string plain(double computed, int digits) {
    return format_sig(computed, digits) + " ";
  }
  int finish(std::ostream& out) const {
    if (!failures.empty()) {
      out << "cells outside tolerance:\n";
      for (const auto& f : failures) out << "  * " << f << "\n";
    }
    out << checked << " cells checked against stored references, "
        << failures.size() << " outside tolerance\n";
    return failures.empty() ? 0 : 1;
  }
};

bool rel_ok(double computed, double stored, double rel) {
  return std::abs(computed - stored) <= rel * std::abs(stored);
}

int table1(const Tolerances& tol, std::ostream& out) {
  using namespace reference;
  const SystemParams sys{kHbar, kMass};
  const Potential v = QuarticAnharmonic{kQaoK, kQaoEps};
  OracleConfig oc;
  oc.levels = 10;
  const auto orc = oracle_spectrum(sys, v, oc);
  CellTally t;
  out << "Table 1 — anharmonic well V = x^2 + 0.1 x^4: order-0 variational "
         "energies vs baselines ('*' marks a cell outside its stored "
         "tolerance)\n";
  out << pad("  n", 5) << pad("E#", 12) << pad("E(vsa0)", 11)
      << pad("dev", 10) << pad("CSA", 11) << pad("dev", 10) << pad("PT0", 9)
      << pad("dev", 9) << pad("PT1", 9) << pad("dev", 9) << "\n";
  for (const auto& row : kTable1) {
    const int n = row.n;
    const double es = orc.energies.at(static_cast<std::size_t>(n));
    const double e = solve_qao_order0(sys, kQaoK, kQaoEps, n).energies.at(n);
    const double csa = conventional_sturmian_order0(sys, kQaoK, n, v,
                                                    CsaMode::harmonic_seed);
    const double pt0 = perturbation_qao(sys, kQaoK, kQaoEps, n, 0);
    const double pt1 = perturbation_qao(sys, kQaoK, kQaoEps, n, 1);
    const auto dev = [&](double x) { return std::abs(x - es) / es; };
    const std::string at = "n=" + std::to_string(n) + " ";
    out << pad("  " + std::to_string(n), 5)
        << pad(t.num(es, 7, rel_ok(es, row.e_sharp, tol.oracle_rel),
                     at + "E#", row.e_sharp),
               12)
        << pad(t.num(e, 6, std::abs(e - row.vsa0) <= tol.vsa_abs,
                     at + "E(vsa0)", row.vsa0),
               11)
        << pad(t.num(dev(e), 2, matches_stored_delta(dev(e), row.d_vsa0),
                     at + "dev(vsa0)", row.d_vsa0),
               10);
    if (row.csa != kNoValue) {
      out << pad(t.num(csa, 6, std::abs(csa - row.csa) <= tol.vsa_abs,
                       at + "CSA", row.csa),
                 11)
          << pad(t.num(dev(csa), 2, matches_stored_delta(dev(csa), row.d_csa),
                       at + "dev(CSA)", row.d_csa),
                 10);
    } else {
      out << pad(CellTally::plain(csa, 6), 11)
          << pad(CellTally::plain(dev(csa), 2), 10);
    }
    out << pad(t.num(pt0, 6, matches_sig_figs(pt0, row.pt0, 4), at + "PT0",
                     row.pt0),
               9)
        << pad(t.num(dev(pt0), 2, matches_stored_delta(dev(pt0), row.d_pt0),
                     at + "dev(PT0)", row.d_pt0),
               9)
        << pad(t.num(pt1, 6, matches_sig_figs(pt1, row.pt1, 4), at + "PT1",
                     row.pt1),
               9)
        << pad(t.num(dev(pt1), 2, matches_stored_delta(dev(pt1), row.d_pt1),
                     at + "dev(PT1)", row.d_pt1),
               9)
        << "\n";
  }
  return t.finish(out);
}

int table2(const Tolerances& tol, std::ostream& out) {
  using namespace reference;
  const SystemParams sys{kHbar, kMass};
  const Potential v = QuarticAnharmonic{kQaoK, kQaoEps};
  OracleConfig oc;
  oc.levels = 5;
  const auto orc = oracle_spectrum(sys, v, oc);
  CellTally t;
  out << "Table 2 — anharmonic well: two-state (order-1) variational "
         "energies per index set\n";
  out << pad("  set", 9) << pad("E(lo)", 11) << pad("dev", 10)
      << pad("E(hi)", 11) << pad("dev", 10) << "\n";
  for (const auto& row : kTable2) {
    const std::vector<int> idx{row.i0, row.i1};
    const auto lo = minimize_script_e(sys, kQaoK, idx, v, 1, 0,
                                      MinimaPolicy::smallest_script_e);
    const auto hi = minimize_script_e(sys, kQaoK, idx, v, 1, 1,
                                      MinimaPolicy::smallest_script_e);
    const double e_lo = lo.energies.at(row.i0);
    const double e_hi = hi.energies.at(row.i1);
    const double d_lo =
        std::abs(e_lo - orc.energies.at(static_cast<std::size_t>(row.i0))) /
        orc.energies.at(static_cast<std::size_t>(row.i0));
    const double d_hi =
        std::abs(e_hi - orc.energies.at(static_cast<std::size_t>(row.i1))) /
        orc.energies.at(static_cast<std::size_t>(row.i1));
    const std::string at = "{" + std::to_string(row.i0) + "," +
                           std::to_string(row.i1) + "} ";
    out << pad("  {" + std::to_string(row.i0) + "," +
                   std::to_string(row.i1) + "}",
               9)
        << pad(t.num(e_lo, 6, std::abs(e_lo - row.e_lo) <= tol.vsa_abs,
                     at + "E(lo)", row.e_lo),
               11)
        << pad(t.num(d_lo, 2, matches_stored_delta(d_lo, row.d_lo),
                     at + "dev(lo)", row.d_lo),
               10)
        << pad(t.num(e_hi, 6, std::abs(e_hi - row.e_hi) <= tol.vsa_abs,
                     at + "E(hi)", row.e_hi),
               11)
        << pad(t.num(d_hi, 2, matches_stored_delta(d_hi, row.d_hi),
                     at + "dev(hi)", row.d_hi),
               10)
        << "\n";
  }
  return t.finish(out);
}

int table3(const Tolerances& tol, std::ostream& out) {
  using namespace reference;
  const SystemParams sys{kHbar, kMass};
  const Potential v = QuarticAnharmonic{kQaoK, kQaoEps};
  OracleConfig oc;
  oc.levels = 5;
  const auto orc = oracle_spectrum(sys, v, oc);
  const std::vector<int> idx{0, 2, 4};
  CellTally t;
  out << "Table 3 — anharmonic well: three-state (order-2) variational "
         "energies, set {0,2,4}\n";
  out << pad("  n", 5) << pad("E#", 12) << pad("E(vsa2)", 11) << pad("dev", 10)
      << "\n";
  for (std::size_t b = 0; b < kTable3.size(); ++b) {
    const auto& row = kTable3[b];
    const auto sol = minimize_script_e(sys, kQaoK, idx, v, 2,
                                       static_cast<int>(b),
                                       MinimaPolicy::smallest_script_e);
    const double es = orc.energies.at(static_cast<std::size_t>(row.n));
    const double e = sol.energies.at(row.n);
    const double d = std::abs(e - es) / es;
    const std::string at = "n=" + std::to_string(row.n) + " ";
    out << pad("  " + std::to_string(row.n), 5)
        << pad(t.num(es, 7, rel_ok(es, row.e_sharp, tol.oracle_rel),
                     at + "E#", row.e_sharp),
               12)
        << pad(t.num(e, 6, std::abs(e - row.e) <= tol.vsa_abs, at + "E(vsa2)",
                     row.e),
               11)
        << pad(t.num(d, 2, matches_stored_delta(d, row.d), at + "dev", row.d),
               10)
        << "\n";
  }
  return t.finish(out);
}

int table4(const Tolerances& tol, std::ostream& out) {
  using namespace reference;
  const SystemParams sys{kHbar, kMass};
  const Potential v = PureQuartic{kQuarticEps};
  OracleConfig oc;
  oc.levels = 17;
  const auto orc = oracle_spectrum(sys, v, oc);
  CellTally t;
  out << "Table 4 — quartic well V = x^4: order-0 variational vs WKB "
         "(the wkb1 column is a stored reference, not computed)\n";
  out << pad("  n", 5) << pad("E#", 12) << pad("E(vsa0)", 11)
      << pad("dev", 10) << pad("wkb0", 12) << pad("dev", 10)
      << pad("wkb1 [stored]", 15) << pad("dev [stored]", 13) << "\n";
  for (const auto& row : kTable4) {
    const int n = row.n;
    const double es = orc.energies.at(static_cast<std::size_t>(n));
    const double e =
        solve_quartic_order0(sys, kQuarticEps, n).energies.at(n);
    const double wkb = wkb_quartic_order0(sys, kQuarticEps, n);
    const auto dev = [&](double x) { return std::abs(x - es) / es; };
    const std::string at = "n=" + std::to_string(n) + " ";
    out << pad("  " + std::to_string(n), 5);
    if (row.e_sharp != kNoValue)
      out << pad(t.num(es, 8, rel_ok(es, row.e_sharp, tol.oracle_rel),
                       at + "E#", row.e_sharp),
                 12);
    else
      out << pad(CellTally::plain(es, 8), 12);
    out << pad(t.num(e, 6, std::abs(e - row.vsa0) <= tol.vsa_abs,
                     at + "E(vsa0)", row.vsa0),
               11);
    if (row.d_vsa0 != kNoValue)
      out << pad(t.num(dev(e), 2, matches_stored_delta(dev(e), row.d_vsa0),
                       at + "dev(vsa0)", row.d_vsa0),
                 10);
    else
      out << pad(CellTally::plain(dev(e), 2), 10);
    if (row.wkb0 != kNoValue) {
      const double wkb_tol = n == 0 ? 10.0 * tol.wkb_abs : tol.wkb_abs;
      out << pad(t.num(wkb, 8, std::abs(wkb - row.wkb0) <= wkb_tol,
                       at + "wkb0", row.wkb0),
                 12)
          << pad(t.num(dev(wkb), 2,
                       matches_stored_delta(dev(wkb), row.d_wkb0),
                       at + "dev(wkb0)", row.d_wkb0),
                 10);
    } else {
      out << pad(CellTally::plain(wkb, 8), 12)
          << pad(CellTally::plain(dev(wkb), 2), 10);
    }
    if (row.wkb1 != kNoValue)
      out << pad(format_sig(row.wkb1, 8), 15)
          << pad(format_sig(row.d_wkb1, 2), 13);
    else
      out << pad("-", 15) << pad("-", 13);
    out << "\n";
  }
  return t.finish(out);
}

int table5(const Tolerances& tol, std::ostream& out) {
  using namespace reference;
  const SystemParams sys{kHbar, kMass};
  const Potential v = PureQuartic{kQuarticEps};
  const double k0 = natural_v0(v).k0;
  OracleConfig oc;
  oc.levels = 5;
  const auto orc = oracle_spectrum(sys, v, oc);
  CellTally t;
  out << "Table 5 — quartic well: order-1 and order-2 variational energies "
         "per index set\n";
  out << pad("  order", 9) << pad("set", 10)
      << "E / dev per member (ascending)\n";
  for (const auto& row : kTable5) {
    const int m = row.order == 1 ? 2 : 3;
    const std::vector<int> idx(row.indices.begin(),
                               row.indices.begin() + m);
    std::string set = "{";
    for (int j = 0; j < m; ++j)
      set += (j ? "," : "") + std::to_string(idx[j]);
    set += "}";
    out << pad("  " + std::to_string(row.order), 9) << pad(set, 10);
    for (int j = 0; j < m; ++j) {
      const auto sol = minimize_script_e(sys, k0, idx, v, row.order, j,
                                         MinimaPolicy::smallest_script_e);
      const double e = sol.energies.at(idx[j]);
      const double es = orc.energies.at(static_cast<std::size_t>(idx[j]));
      const double d = std::abs(e - es) / es;
      const std::string at = "order-" + std::to_string(row.order) + " " +
                             set + " n=" + std::to_string(idx[j]) + " ";
      out << pad(t.num(e, 6, std::abs(e - row.e[j]) <= tol.vsa_abs, at + "E",
                       row.e[j]),
                 11)
          << pad(t.num(d, 2, matches_stored_delta(d, row.d[j]), at + "dev",
                       row.d[j]),
                 10);
    }
    out << "\n";
  }
  return t.finish(out);
}

int cmd_table(int which, const Tolerances& tol, std::ostream& out) {
  switch (which) {
    case 1:
      return table1(tol, out);
    case 2:
      return table2(tol, out);
    case 3:
      return table3(tol, out);
    case 4:
      return table4(tol, out);
    case 5:
      return table5(tol, out);
    default:
      throw ConfigError("table: expected a number in 1..5");
  }
}

std::string error_name(const Error& e) {
  if (dynamic_cast<const QuadratureNonConvergence*>(&e))
    return "QuadratureNonConvergence";
  if (dynamic_cast<const DegenerateOverlap*>(&e)) return "DegenerateOverlap";
  if (dynamic_cast<const ComplexRoots*>(&e)) return "ComplexRoots";
  if (dynamic_cast<const NearSingularOverlap*>(&e))
    return "NearSingularOverlap";
  if (dynamic_cast<const NoPositiveMinimum*>(&e)) return "NoPositiveMinimum";
  if (dynamic_cast<const MultipleMinima*>(&e)) return "MultipleMinima";
  if (dynamic_cast<const NoFixedPoint*>(&e)) return "NoFixedPoint";
  if (dynamic_cast<const NoPositiveSolution*>(&e))
    return "NoPositiveSolution";
  if (dynamic_cast<const BoundaryLeak*>(&e)) return "BoundaryLeak";
  if (dynamic_cast<const PotentialPole*>(&e)) return "PotentialPole";
  if (dynamic_cast<const UnsupportedPotential*>(&e))
    return "UnsupportedPotential";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  return "Error";
}

int run_impl(std::vector<std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{
      "Variational Sturmian solver for one-dimensional bound states"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --config to appear after the subcommand name
  app.allow_config_extras(false);
  app.set_config("--config", "",
                 "INI config file; keys live in a section named after the "
                 "subcommand, e.g. [solve]; command-line flags win");

  RunConfig cfg;
  Tolerances tol;
  int which_table = 1;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--potential", cfg.potential,
                    "qao|harmonic|quartic|gaussian|gtilde|family")
        ->required();
    sub->add_option("--k", cfg.k, "harmonic coefficient of V=(k/2)x^2+...")
        ->capture_default_str();
    sub->add_option("--eps", cfg.eps,
                    "quartic/Gaussian strength (default per potential)");
    sub->add_option("--lambda", cfg.lambda, "well depth")
        ->capture_default_str();
    sub->add_option("--alpha0", cfg.alpha0, "family pivot width")
        ->capture_default_str();
    sub->add_option("--zeta", cfg.zeta, "family shape parameter")
        ->capture_default_str();
    sub->add_option("--e-target", cfg.e_target, "family eigenvalue")
        ->capture_default_str();
    sub->add_option("--m", cfg.mass, "particle mass")->capture_default_str();
    sub->add_option("--hbar", cfg.hbar, "Planck constant")
        ->capture_default_str();
    sub->add_option("--levels", cfg.levels_text,
                    "'0..9', '0,2,4', or a single index")
        ->capture_default_str();
    sub->add_option("--format", cfg.format, "table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    sub->add_option("--x-max", cfg.x_max, "oracle box half-width (0 = auto)")
        ->capture_default_str();
    sub->add_option("--n-points", cfg.n_points, "oracle grid points")
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "solve one method at given levels");
  add_common(solve);
  solve->add_option("--method", cfg.methods, "vsa0|vsa1|vsa2|csa|pt0|pt1|wkb0|oracle")
      ->required()
      ->delimiter(',');
  solve->add_option("--index-set", cfg.index_sets,
                    "explicit index set for vsa1/vsa2, e.g. '0,2' (repeatable)");
  solve->add_option("--csa-mode", cfg.csa_mode, "seed|fixed-point")
      ->check(CLI::IsMember({"seed", "fixed-point"}))
      ->capture_default_str();
  solve->add_flag("--with-oracle", cfg.with_oracle,
                  "attach finite-difference reference energies");

  auto* compare = app.add_subcommand(
      "compare", "side-by-side methods against the finite-difference oracle");
  add_common(compare);
  compare->add_option("--method", cfg.methods, "two or more methods")
      ->required()
      ->delimiter(',');
  compare->add_option("--csa-mode", cfg.csa_mode, "seed|fixed-point")
      ->check(CLI::IsMember({"seed", "fixed-point"}))
      ->capture_default_str();

  auto* oracle = app.add_subcommand(
      "oracle", "finite-difference reference spectrum");
  add_common(oracle);

  auto* table = app.add_subcommand(
      "table", "reproduce a stored benchmark table with per-cell checks");
  table->add_option("which", which_table, "table number (1-5)")
      ->required()
      ->check(CLI::Range(1, 5));
  table->add_option("--tol-vsa", tol.vsa_abs,
                    "absolute tolerance for variational cells")
      ->envname("STURM_TOL_VSA")
      ->capture_default_str();
  table->add_option("--tol-wkb", tol.wkb_abs,
                    "absolute tolerance for wkb0 cells")
      ->envname("STURM_TOL_WKB")
      ->capture_default_str();
  table->add_option("--tol-oracle", tol.oracle_rel,
                    "relative tolerance for reference-energy cells")
      ->envname("STURM_TOL_ORACLE")
      ->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "ConfigError: " << e.what() << "\n";
    return 2;
  }

  try {
    for (const auto& m : cfg.methods)
      if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
        throw ConfigError("unknown method '" + m + "'");
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (oracle->parsed()) return cmd_oracle(cfg, out);
    return cmd_table(which_table, tol, out);
  } catch (const ConfigError& e) {
    err << "ConfigError: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << error_name(e) << ": " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_impl(std::move(args), out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return run_impl(args, out, err);
}

}  // namespace sturm::cli
