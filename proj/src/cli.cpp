#include "conelab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "conelab/analysis.hpp"

namespace conelab::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kResidualTol = 1e-8;
constexpr double kReplayTol = 1e-12;

struct HelpRequested {
  std::string text;
};

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Gallery: return "gallery";
    case Command::Abb: return "abb";
    case Command::Modulus: return "modulus";
    case Command::Check: return "check";
    case Command::Certify: return "certify";
  }
  return "?";
}

bool is_planar(const std::string& name) { return name == "disk2d" || name == "square2d"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& raw, const std::string& what) {
  const auto b = raw.find_first_not_of(" \t");
  const auto e = raw.find_last_not_of(" \t");
  if (b == std::string::npos) throw ConfigError(what + ": empty number");
  const std::string s = raw.substr(b, e - b + 1);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ConfigError(what + ": not a number: '" + s + "'");
  if (!std::isfinite(v)) throw ConfigError(what + ": must be finite");
  return v;
}

std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> out;
  for (const auto& p : split(text, ',')) {
    const double v = parse_real(p, "--nlist");
    if (v < 1 || v != std::floor(v)) throw ConfigError("--nlist entries must be positive integers");
    out.push_back(static_cast<long>(v));
  }
  if (out.empty()) throw ConfigError("--nlist must not be empty");
  return out;
}

long list_length(const std::string& text) {
  return text.empty() ? 0 : static_cast<long>(split(text, ',').size());
}

// N for the single-instance commands: planar sets are 2-D, otherwise the
// longest coordinate list given, otherwise 4.
long resolve_dim(const RunConfig& cfg) {
  if (is_planar(cfg.instance)) {
    if (cfg.N != 0 && cfg.N != 2) throw ConfigError(cfg.instance + " is planar: --N must be 2");
    return 2;
  }
  if (cfg.N > 0) return cfg.N;
  const long n = std::max({list_length(cfg.point), list_length(cfg.functional), list_length(cfg.target)});
  return n > 1 ? n : 4;
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.tol = cfg.tol;
  s.max_iter = cfg.max_iter;
  s.seed = cfg.seed;
  return s;
}

Eigen::VectorXd functional_or_ones(const RunConfig& cfg, long N) {
  return cfg.functional.empty() ? Eigen::VectorXd::Ones(N) : parse_coords(cfg.functional, N);
}

double min_coeff(const Vector& v) { return v.coords().minCoeff(); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Table run_gallery(const RunConfig& cfg) {
  const GalleryFamily fam = gallery_family_from_string(cfg.family);
  const long N = cfg.N > 0 ? cfg.N : std::max(128L, cfg.n_max + 1);
  const auto rows = gallery(fam, cfg.n_max, N, cfg.tol);
  Table t;
  t.schema = "conelab.gallery." + cfg.family + ".v1";
  t.columns.push_back("n");
  if (!rows.empty()) {
    for (const auto& [name, v] : rows.front().values) t.columns.push_back(name);
    for (const auto& [name, f] : rows.front().flags) t.columns.push_back(name);
  }
  for (const auto& r : rows) {
    std::vector<Cell> cells{r.n};
    for (const auto& [name, v] : r.values) cells.emplace_back(v);
    for (const auto& [name, f] : r.flags) cells.emplace_back(f);
    t.add(std::move(cells), r.pass);
  }
  return t;
}

// With unit_base the level scales with N so the base stays at distance
// cfg.level from the origin and one schedule fits every N.
AbbTrace abb_trace(const RunConfig& cfg, long N, bool unit_base) {
  const Instance inst = make_instance(cfg.instance, N);
  const Eigen::VectorXd f = functional_or_ones(cfg, N);
  const double level = unit_base ? cfg.level * f.norm() : cfg.level;
  const BaseSpec base = base_of(inst.cone, Vector(f), level);
  const Vector xbar(parse_coords(cfg.target, N), inst.set.ambient());
  return abb_approximate(inst.set, inst.cone, base, xbar, parse_schedule(cfg.schedule),
                         solver_config(cfg));
}

Table run_abb(const RunConfig& cfg) {
  const long N = resolve_dim(cfg);
  const AbbTrace tr = abb_trace(cfg, N, false);
  Table t;
  t.schema = "conelab.abb.v1";
  t.columns = {"k",      "delta",      "distance",  "support_residual", "cone_gap",
               "margin", "min_f",      "iterations", "converged",       "x",
               "f",      "f_positive", "residual_ok", "distance_nonincreasing"};
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
    const AbbIterate& it = tr.iterates[k];
    const bool positive = it.margin > 0.0;
    const bool res_ok = it.support_residual <= kResidualTol;
    const bool mono = it.distance <= prev + cfg.tol;
    prev = it.distance;
    t.add({static_cast<long>(k), tr.schedule[k], it.distance, it.support_residual, it.cone_gap,
           it.margin, min_coeff(it.f), it.iterations, it.converged, to_std(it.x.coords()),
           to_std(it.f.coords()), positive, res_ok, mono},
          positive && res_ok && mono);
  }
  return t;
}

// How the trace degrades with N: the first k with distance below 1/2.
Table run_abb_sweep(const RunConfig& cfg) {
  if (is_planar(cfg.instance)) throw ConfigError("--sweep needs a sequence-space instance");
  Table t;
  t.schema = "conelab.abb.sweep.v1";
  t.columns = {"N",           "steps",         "first_k_below_half", "final_distance",
               "max_support_residual", "all_converged", "f_positive", "residual_ok"};
  for (long N : parse_n_list(cfg.n_list)) {
    const AbbTrace tr = abb_trace(cfg, N, true);
    long first = -1;
    double max_res = 0.0;
    bool conv = true;
    bool positive = true;
    for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
      const AbbIterate& it = tr.iterates[k];
      if (first < 0 && it.distance < 0.5) first = static_cast<long>(k);
      max_res = std::max(max_res, it.support_residual);
      conv = conv && it.converged;
      positive = positive && it.margin > 0.0;
    }
    const double final_d = tr.iterates.empty() ? kNaN : tr.iterates.back().distance;
    const bool res_ok = max_res <= kResidualTol;
    t.add({N, static_cast<long>(tr.iterates.size()), first, final_d, max_res, conv, positive, res_ok},
          positive && res_ok);
  }
  return t;
}

// Known modulus bounds at the origin from the explicit witness sequences.
double modulus_bound(const std::string& instance, long N, const Eigen::VectorXd& x) {
  if (!x.isZero(0.0)) return kNaN;
  if (instance == "kflat") return 1.0 / (std::sqrt(2.0) * static_cast<double>(N - 1));
  if (instance == "kminusp") return 1.0 / static_cast<double>(N);
  return kNaN;
}

Table run_modulus(const RunConfig& cfg) {
  const double eps = *cfg.epsilon;
  std::vector<long> dims = parse_n_list(cfg.n_list);
  if (is_planar(cfg.instance)) {
    if (cfg.N != 0 && cfg.N != 2) throw ConfigError(cfg.instance + " is planar: --N must be 2");
    dims = {2};
  } else if (cfg.N > 0) {
    dims = {cfg.N};
  }
  Table t;
  t.schema = "conelab.modulus.v1";
  t.columns = {"N",      "epsilon",          "delta_hat",         "family_value", "generic_value",
               "bound",  "upper_bound_only", "strictly_maximal",  "source",       "within_bound",
               "decreasing"};
  double prev = std::numeric_limits<double>::infinity();
  for (long N : dims) {
    const Instance inst = make_instance(cfg.instance, N);
    const Eigen::VectorXd x = parse_coords(cfg.point, N);
    const ModulusReport r =
        strict_max_modulus(inst.set, inst.cone, Vector(x, inst.set.ambient()), eps, solver_config(cfg));
    const double bound = modulus_bound(cfg.instance, N, x);
    const bool within = std::isnan(bound) || r.delta_hat <= bound + cfg.tol;
    const bool decreasing = r.delta_hat < prev;
    prev = r.delta_hat;
    t.add({N, eps, r.delta_hat, r.family_value, r.generic_value, bound, r.upper_bound_only,
           r.strictly_maximal, r.source, within, decreasing},
          within && decreasing);
  }
  return t;
}

bool replays(const SetSpec& set, const ConeSpec& cone, const Vector& x, const Certificate& c) {
  if (!c.witness) return true;
  static const char* const kNames[] = {"set_violation", "cone_violation", "gap", "witness_value"};
  for (const char* name : kNames) {
    const auto hit = std::find_if(c.residuals.begin(), c.residuals.end(),
                                  [&](const auto& r) { return r.first == name; });
    if (hit == c.residuals.end()) continue;
    const double again = replay_residual(set, cone, x, c, name);
    if (std::abs(again - hit->second) > kReplayTol * std::max(1.0, std::abs(hit->second))) return false;
  }
  return true;
}

double residual_or_nan(const Certificate& c, std::string_view name) {
  for (const auto& [n, v] : c.residuals)
    if (n == name) return v;
  return kNaN;
}

std::vector<double> witness_cell(const Certificate& c) {
  return c.witness ? to_std(c.witness->coords()) : std::vector<double>{};
}

Table run_check(const RunConfig& cfg) {
  const long N = resolve_dim(cfg);
  const Instance inst = make_instance(cfg.instance, N);
  const Vector x(parse_coords(cfg.point, N), inst.set.ambient());
  const Vector f = cfg.functional.empty() ? interior_functional(inst.cone)
                                          : Vector(parse_coords(cfg.functional, N));
  const SolverConfig scfg = solver_config(cfg);
  const Certificate mc = is_maximal(inst.set, inst.cone, x, scfg);
  const Certificate pc = pos_support_check(inst.set, inst.cone, x, f, scfg);
  const bool replay_ok = replays(inst.set, inst.cone, x, mc) && replays(inst.set, inst.cone, x, pc);
  const bool consistent = !pc.holds() || mc.holds();
  Table t;
  t.schema = "conelab.check.v1";
  t.columns = {"N",      "maximal",     "maximal_verdict", "pos",           "pos_verdict",
               "margin", "sup",         "value",           "support_gap",   "witness_value",
               "f",      "max_witness", "pos_witness",     "replay_ok",     "pos_implies_max"};
  t.add({N, mc.holds(), std::string(to_string(mc.verdict)), pc.holds(),
         std::string(to_string(pc.verdict)), residual_or_nan(pc, "margin"), residual_or_nan(pc, "sup"),
         residual_or_nan(pc, "value"), residual_or_nan(pc, "support_gap"),
         residual_or_nan(pc, "witness_value"), to_std(f.coords()), witness_cell(mc), witness_cell(pc),
         replay_ok, consistent},
        replay_ok && consistent);
  return t;
}

Table run_certify(const RunConfig& cfg) {
  const double eps = *cfg.epsilon;
  const long N = resolve_dim(cfg);
  const Instance inst = make_instance(cfg.instance, N);
  const BaseSpec base = base_of(inst.cone, Vector(functional_or_ones(cfg, N)), cfg.level);
  const Vector xbar(parse_coords(cfg.point, N), inst.set.ambient());
  Table t;
  t.schema = "conelab.certify.v1";
  t.columns = {"N",     "epsilon", "delta",   "alpha",      "sup_value",    "level",
               "samples", "violations", "f", "separated", "no_violations"};
  try {
    const DeltaCertificate d = stmax_delta_certificate(inst.set, inst.cone, base, xbar, eps,
                                                       solver_config(cfg), cfg.samples);
    const bool clean = d.violations == 0;
    t.add({N, eps, d.delta, d.alpha, d.sup_value, d.level, d.samples, d.violations,
           to_std(d.f.coords()), true, clean},
          clean);
  } catch (const SeparationFailure&) {
    t.add({N, eps, kNaN, kNaN, kNaN, kNaN, 0L, 0L, std::vector<double>{}, false, false}, false);
  }
  return t;
}

void validate(RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
  if (cfg.N < 0) throw ConfigError("--N must be positive");
  if (cfg.n_max < 1) throw ConfigError("--nmax must be at least 1");
  if (cfg.samples < 1) throw ConfigError("--samples must be at least 1");
  if (!(cfg.level > 0.0)) throw ConfigError("--level must be positive");
  if (cfg.epsilon && !(*cfg.epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
  const bool needs_eps = cfg.command == Command::Modulus || cfg.command == Command::Certify;
  if (needs_eps && !cfg.epsilon)
    throw ConfigError("--epsilon is required for " + std::string(command_name(cfg.command)));
  if (cfg.command == Command::Gallery) {
    gallery_family_from_string(cfg.family);
    const long N = cfg.N > 0 ? cfg.N : std::max(128L, cfg.n_max + 1);
    if (cfg.n_max + 1 > N) throw ConfigError("gallery needs --nmax + 1 <= --N");
  } else {
    make_instance(cfg.instance, is_planar(cfg.instance) ? 2 : 4);
  }
  if (cfg.command == Command::Abb) parse_schedule(cfg.schedule);
  if (const char* env = std::getenv("CONELAB_SEED")) {
    const double v = parse_real(env, "CONELAB_SEED");
    if (v < 0 || v != std::floor(v) || v > 1.8e19) throw ConfigError("CONELAB_SEED must be a non-negative integer");
    cfg.seed = std::strtoull(env, nullptr, 10);
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::vector<double>& v) const {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
      return out;
    }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_double(v));
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::vector<double>& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string_view format_name(Format f) { return f == Format::Csv ? "csv" : "json"; }

}  // namespace

void Table::add(std::vector<Cell> row, bool ok) {
  rows.push_back(std::move(row));
  pass.push_back(ok);
}

bool Table::all_pass() const { return std::all_of(pass.begin(), pass.end(), [](bool b) { return b; }); }

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Maximal, positive and strictly maximal points under cone orders", "conelab"};
  app.require_subcommand(1);
  std::string format = "csv";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--N", cfg.N, "Truncation dimension");
    sub->add_option("--tol", cfg.tol, "Tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap for iterative solvers");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "Output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "Seed (CONELAB_SEED overrides)");
    sub->add_flag("--timing", cfg.timing, "Add wall time to JSON metadata");
  };
  auto instance = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance,
                    "kflat, kminusp, kslab, kballtriple, disk2d, square2d or halfcap");
  };

  auto* gal = app.add_subcommand("gallery", "Reproduction table of a witness family");
  gal->add_option("family", cfg.family, "prop33, ex34, prop36 or prop37")->required();
  gal->add_option("--nmax", cfg.n_max, "Last sequence index");
  common(gal);

  auto* abb = app.add_subcommand("abb", "Dilating-cone approximation trace");
  instance(abb);
  abb->add_option("--target", cfg.target, "Maximal point to approximate");
  abb->add_option("--schedule", cfg.schedule, "geom:delta0:ratio:count or list:d1,d2,...");
  abb->add_option("--functional", cfg.functional, "Base functional (default ones)");
  abb->add_option("--level", cfg.level, "Base level");
  abb->add_flag("--sweep", cfg.sweep, "Summarize the trace for each N in --nlist");
  abb->add_option("--nlist", cfg.n_list, "Dimensions for --sweep");
  common(abb);

  auto* mod = app.add_subcommand("modulus", "Strict-maximality modulus against N");
  instance(mod);
  mod->add_option("--epsilon", cfg.epsilon, "Radius epsilon");
  mod->add_option("--point", cfg.point, "Point x (default 0)");
  mod->add_option("--nlist", cfg.n_list, "Dimensions to sweep");
  common(mod);

  auto* chk = app.add_subcommand("check", "Maximality and positive-support checks at a point");
  instance(chk);
  chk->add_option("--point", cfg.point, "Point x (default 0)");
  chk->add_option("--functional", cfg.functional, "Functional f (default interior functional)");
  common(chk);

  auto* cer = app.add_subcommand("certify", "Strict-maximality delta certificate");
  instance(cer);
  cer->add_option("--epsilon", cfg.epsilon, "Radius epsilon");
  cer->add_option("--point", cfg.point, "Point xbar (default 0)");
  cer->add_option("--functional", cfg.functional, "Base functional (default ones)");
  cer->add_option("--level", cfg.level, "Base level");
  cer->add_option("--samples", cfg.samples, "Inclusion-check samples");
  common(cer);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "gallery") cfg.command = Command::Gallery;
  else if (name == "abb") cfg.command = Command::Abb;
  else if (name == "modulus") cfg.command = Command::Modulus;
  else if (name == "check") cfg.command = Command::Check;
  else cfg.command = Command::Certify;
  cfg.format = format == "json" ? Format::Json : Format::Csv;

  try {
    validate(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

Instance make_instance(const std::string& name, long N) {
  if (N < 1) throw ConfigError("--N must be positive");
  auto with_cone = [](SetSpec s) { return Instance{s, natural_cone(s)}; };
  if (name == "kflat") return with_cone(SetSpec::k_flat(N));
  if (name == "kminusp") return with_cone(SetSpec::k_minus_p(N));
  if (name == "kslab") return with_cone(SetSpec::k_slab(N));
  if (name == "kballtriple") return with_cone(SetSpec::k_ball_triple(N));
  if (name == "disk2d") return with_cone(SetSpec::ball_2d());
  if (name == "square2d") return with_cone(SetSpec::square_2d());
  if (name == "halfcap") {
    const Eigen::VectorXd a = Eigen::VectorXd::Ones(N) / std::sqrt(static_cast<double>(N));
    return with_cone(SetSpec::half_space_cap(a, 0.5));
  }
  throw ConfigError("unknown instance '" + name + "'");
}

Eigen::VectorXd parse_coords(const std::string& text, long N) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
  const auto parts = split(text, ',');
  if (static_cast<long>(parts.size()) > N)
    throw ConfigError("'" + text + "' has " + std::to_string(parts.size()) +
                      " coordinates but N = " + std::to_string(N));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_real(parts[i], "coordinate");
  return v;
}

std::vector<double> parse_schedule(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  std::vector<double> out;
  if (kind == "geom") {
    const auto p = split(rest, ':');
    if (p.size() != 3) throw ConfigError("--schedule geom needs delta0:ratio:count");
    const double d0 = parse_real(p[0], "schedule delta0");
    const double ratio = parse_real(p[1], "schedule ratio");
    const double count = parse_real(p[2], "schedule count");
    if (!(d0 > 0.0)) throw ConfigError("schedule delta0 must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("schedule ratio must lie in (0, 1)");
    if (count < 1 || count != std::floor(count)) throw ConfigError("schedule count must be a positive integer");
    out = geometric_schedule(d0, ratio, static_cast<int>(count));
  } else if (kind == "list") {
    for (const auto& s : split(rest, ',')) {
      const double d = parse_real(s, "schedule entry");
      if (!(d > 0.0)) throw ConfigError("schedule entries must be positive");
      out.push_back(d);
    }
    if (out.empty()) throw ConfigError("--schedule list must not be empty");
  } else {
    throw ConfigError("--schedule must start with geom: or list:");
  }
  return out;
}

Table run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Gallery: return run_gallery(cfg);
    case Command::Abb: return cfg.sweep ? run_abb_sweep(cfg) : run_abb(cfg);
    case Command::Modulus: return run_modulus(cfg);
    case Command::Check: return run_check(cfg);
    case Command::Certify: return run_certify(cfg);
  }
  throw ConfigError("unknown command");
}

std::string to_csv(const Table& table) {
  std::string out = "schema";
  for (const auto& c : table.columns) out += "," + csv_field(c);
  out += ",pass\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    out += csv_field(table.schema);
    for (const auto& c : table.rows[i]) out += "," + csv_field(cell_text(c));
    out += table.pass[i] ? ",true\n" : ",false\n";
  }
  return out;
}

std::string to_json(const Table& table, const RunConfig& cfg, std::optional<double> wall_seconds) {
  nlohmann::ordered_json config = {
      {"command", command_name(cfg.command)},
      {"family", cfg.family},
      {"instance", cfg.instance},
      {"N", cfg.N},
      {"n_max", cfg.n_max},
      {"n_list", cfg.n_list},
      {"epsilon", cfg.epsilon ? nlohmann::ordered_json(*cfg.epsilon) : nlohmann::ordered_json()},
      {"tol", cfg.tol},
      {"max_iter", cfg.max_iter},
      {"schedule", cfg.schedule},
      {"point", cfg.point},
      {"functional", cfg.functional},
      {"target", cfg.target},
      {"level", cfg.level},
      {"samples", cfg.samples},
      {"sweep", cfg.sweep},
      {"format", format_name(cfg.format)},
  };
  nlohmann::ordered_json meta = {
      {"program", "conelab"}, {"version", kVersion}, {"seed", cfg.seed}, {"config", config}};
  if (wall_seconds) meta["wall_time_s"] = *wall_seconds;

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    nlohmann::ordered_json r;
    for (std::size_t j = 0; j < table.columns.size(); ++j) r[table.columns[j]] = cell_json(table.rows[i][j]);
    r["pass"] = static_cast<bool>(table.pass[i]);
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json doc = {
      {"schema", table.schema}, {"metadata", meta}, {"rows", rows}, {"pass", table.all_pass()}};
  return doc.dump(2) + "\n";
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const ConfigError& e) {
    err << "conelab: " << e.what() << "\n";
    return 2;
  }

  Table table;
  const auto start = std::chrono::steady_clock::now();
  try {
    table = run(cfg);
  } catch (const std::invalid_argument& e) {
    err << "conelab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "conelab: " << command_name(cfg.command) << " failed: " << e.what() << "\n";
    return 1;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string text = cfg.format == Format::Csv
                               ? to_csv(table)
                               : to_json(table, cfg, cfg.timing ? std::optional<double>(wall) : std::nullopt);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!(file << text) || !file.flush()) {
      err << "conelab: cannot write " << cfg.output << "\n";
      return 3;
    }
  }
  if (!table.all_pass()) {
    err << "conelab: " << std::count(table.pass.begin(), table.pass.end(), false) << " of "
        << table.rows.size() << " rows failed\n";
    return 1;
  }
  return 0;
}

}  // namespace conelab::cli
