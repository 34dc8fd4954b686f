#include "g4cli/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "g4/geometry.hpp"

namespace g4::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kFrameTableTolerance = 1e-10;
constexpr std::size_t kOraclePoints = 20;

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError("invalid number for " + what + ": '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string eta_label(const Mat4& eta) {
  if (eta == lorentzian_eta()) return "lorentzian";
  if (eta == euclidean_eta()) return "euclidean";
  return "custom";
}

// The configured eta plus one alternative signature.
std::vector<Mat4> eta_variants(const GroupParams& params) {
  const Mat4 alt = params.eta == euclidean_eta() ? lorentzian_eta() : euclidean_eta();
  return {params.eta, alt};
}

ordered_json vec_json(const Vec4& v) { return ordered_json::array({v[0], v[1], v[2], v[3]}); }

ordered_json params_json(const GroupParams& p) {
  ordered_json eta = ordered_json::array();
  for (const auto& row : p.eta) eta.push_back(vec_json(row));
  ordered_json j;
  j["c"] = p.c;
  j["alpha_angle"] = p.alpha_angle;
  j["k"] = p.k;
  j["l"] = p.l;
  j["eps01"] = p.eps01;
  j["em_alphas"] = vec_json(p.em_alphas);
  j["eta"] = eta;
  return j;
}

std::string display_name(const CheckResult& r) {
  return r.variant.empty() ? r.check_name : r.check_name + " [" + r.variant + "]";
}

template <typename F>
CheckResult guarded(const std::string& name, GroupId id, double tol, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    CheckResult r;
    r.check_name = name;
    r.group_id = id;
    r.tolerance = tol;
    r.max_residual = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.notes.push_back(std::string("evaluation error: ") + e.what());
    return r;
  }
}

void verify_group(const GroupModel& model, const RunConfig& cfg, std::vector<CheckResult>& out) {
  const ToleranceConfig& tol = cfg.tolerances;
  const GroupId id = model.id;
  const auto points = sample_points(model.domain, cfg.n_points, cfg.seed);
  const auto phase = sample_phase_points(model, cfg.n_points, cfg.seed);
  const std::span<const ChartPoint> oracle_points(points.data(), std::min(points.size(), kOraclePoints));

  auto push = [&](CheckResult r, CheckMode mode = CheckMode::kAsserted) {
    r.group_id = id;
    r.mode = mode;
    out.push_back(std::move(r));
  };

  push(guarded("duality", id, tol.tol_exact, [&] { return check_duality(model, points, tol.tol_exact); }));
  push(guarded("tetrad_duality", id, tol.tol_exact, [&] {
    auto r = check_tetrad_duality(model, points, tol.tol_exact);
    if (!model.tetrad.printed) r.notes.push_back("tetrad constructed, not transcribed");
    return r;
  }));
  CheckResult closure =
      guarded("lie_closure", id, tol.tol_deriv, [&] { return check_lie_closure(model, points, tol.tol_deriv); });
  const int sign = closure.sign != 0 ? closure.sign : 1;
  push(closure);
  push(check_jacobi(model.C, tol.tol_exact));

  for (const Mat4& eta : eta_variants(model.params)) {
    const GroupModel m = model.with_eta(eta);
    const std::string variant = "eta=" + eta_label(eta);
    auto r = guarded("killing", id, tol.tol_deriv, [&] { return check_killing(m, points, tol.tol_deriv); });
    r.variant = variant;
    push(r);
    r = guarded("frame_killing", id, tol.tol_deriv,
                [&] { return check_frame_killing(m, sign, points, tol.tol_deriv); });
    r.variant = variant;
    push(r);
  }

  push(guarded("admissibility", id, tol.tol_deriv, [&] {
    return check_admissibility(model, PotentialSource::kTetrad, points, tol.tol_deriv);
  }));
  push(guarded("admissibility", id, tol.tol_deriv,
               [&] { return check_admissibility(model, PotentialSource::kHolonomic, points, tol.tol_deriv); }),
       model.potential.holo_asserted ? CheckMode::kAsserted : CheckMode::kReport);
  if (model.potential.holo_printed) {
    push(guarded("admissibility", id, tol.tol_deriv,
                 [&] {
                   return check_admissibility(model, PotentialSource::kPrintedHolonomic, points, tol.tol_deriv);
                 }),
         CheckMode::kReport);
  }

  push(guarded("frame_defining", id, tol.tol_deriv, [&] {
    return check_frame_defining(model, FrameSource::kDerived, sign, points, tol.tol_deriv);
  }));
  if (model.potential.frame_printed) {
    push(guarded("frame_defining", id, tol.tol_deriv,
                 [&] { return check_frame_defining(model, FrameSource::kPrinted, sign, points, tol.tol_deriv); }),
         CheckMode::kReport);
    push(guarded("frame_table_consistency", id, kFrameTableTolerance,
                 [&] { return check_frame_table_consistency(model, points, kFrameTableTolerance); }),
         CheckMode::kReport);
  }

  if (is_abelian_family(id)) {
    push(guarded("abelian_zero_field", id, tol.tol_exact,
                 [&] { return check_abelian_zero_field(model, points, tol.tol_exact); }));
  }

  push(guarded("integral_algebra", id, tol.tol_deriv,
               [&] { return check_integral_algebra(model, sign, phase, tol.tol_deriv); }));

  const LinearPotential admissible = admissible_potential(model);
  const std::string admissible_source = model.potential.holo_asserted ? "holonomic" : "tetrad";
  for (const Mat4& eta : eta_variants(model.params)) {
    const GroupModel m = model.with_eta(eta);
    auto r = guarded("hamiltonian_integrals", id, tol.tol_deriv,
                     [&] { return check_hamiltonian_integrals(m, admissible, phase, tol.tol_deriv); });
    r.variant = "source=" + admissible_source + ", eta=" + eta_label(eta);
    push(r);
  }
  if (!model.potential.holo_asserted) {
    auto r = guarded("hamiltonian_integrals", id, tol.tol_deriv,
                     [&] { return check_hamiltonian_integrals(model, model.potential.holo, phase, tol.tol_deriv); });
    r.variant = "source=holonomic";
    push(r, CheckMode::kReport);
  }
  if (model.potential.holo_printed) {
    auto r = guarded("hamiltonian_integrals", id, tol.tol_deriv, [&] {
      return check_hamiltonian_integrals(model, *model.potential.holo_printed, phase, tol.tol_deriv);
    });
    r.variant = "source=printed-holonomic";
    push(r, CheckMode::kReport);
  }

  for (const Mat4& eta : eta_variants(model.params)) {
    const GroupModel m = model.with_eta(eta);
    auto r = guarded("gradient_oracle", id, tol.fd_tol,
                     [&] { return check_gradient_oracle(m, oracle_points, tol.fd_tol); });
    r.variant = "eta=" + eta_label(eta);
    push(r);
  }
}

std::ostream* open_output(const std::optional<std::string>& path, std::ofstream& file, std::ostream& fallback) {
  if (!path) return &fallback;
  file.open(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + *path + "'");
  return &file;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<GroupId> resolve_groups(const std::string& selector) {
  if (selector == "all") return {kAllGroups.begin(), kAllGroups.end()};
  if (auto id = parse_group(selector)) return {*id};
  throw UsageError("unknown group '" + selector + "' (use 'list' to see the catalog)");
}

Vec4 parse_vec4(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != kDim) throw UsageError("expected four comma-separated numbers: '" + text + "'");
  Vec4 v{};
  for (int i = 0; i < kDim; ++i) v[i] = parse_double(parts[i], "vector component");
  return v;
}

void apply_param(GroupParams& params, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  if (key == "c") {
    params.c = parse_double(value, key);
  } else if (key == "alpha-angle") {
    params.alpha_angle = parse_double(value, key);
  } else if (key == "k") {
    params.k = parse_double(value, key);
  } else if (key == "l") {
    params.l = parse_double(value, key);
  } else if (key == "eps01") {
    if (value != "0" && value != "1") throw UsageError("eps01 must be 0 or 1");
    params.eps01 = value == "1" ? 1 : 0;
  } else if (key.size() == 6 && key.starts_with("alpha") && key[5] >= '1' && key[5] <= '4') {
    params.em_alphas[key[5] - '1'] = parse_double(value, key);
  } else if (key == "eta") {
    if (!value.starts_with("diag:")) throw UsageError("eta expects diag:a,b,c,d");
    params.eta = diagonal(parse_vec4(value.substr(5)));
  } else {
    throw UsageError("unknown parameter '" + key + "'");
  }
}

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("G4_SEED");
  if (!env || !*env) return std::nullopt;
  std::uint64_t v = 0;
  const std::string s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("G4_SEED must be an unsigned integer");
  return v;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "human") return Format::kHuman;
  throw UsageError("unknown format '" + text + "'");
}

Status status_of(const CheckResult& r) {
  if (r.passed) return Status::kPass;
  return r.mode == CheckMode::kReport ? Status::kFlag : Status::kFail;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kFlag:
      return "FLAG";
  }
  return "?";
}

bool VerificationReport::all_asserted_pass() const {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return status_of(r) == Status::kFail; });
}

VerificationReport run_verify(const RunConfig& config) {
  config.tolerances.validate();
  VerificationReport report;
  report.config = config;
  std::vector<GroupModel> models;
  for (GroupId id : config.groups) models.push_back(get_group(id, config.params));

  for (const GroupModel& model : models) {
    const std::size_t first = report.results.size();
    verify_group(model, config, report.results);

    GroupSummary s{model.id};
    for (const std::string& note : model.notes) report.inconsistencies.emplace_back(model.id, note);
    for (std::size_t k = first; k < report.results.size(); ++k) {
      const CheckResult& r = report.results[k];
      switch (status_of(r)) {
        case Status::kPass:
          ++s.pass;
          break;
        case Status::kFail:
          ++s.fail;
          break;
        case Status::kFlag: {
          ++s.flag;
          std::string msg = display_name(r) + " flagged";
          for (const auto& n : r.notes) msg += "; " + n;
          report.inconsistencies.emplace_back(model.id, msg);
          break;
        }
      }
    }
    report.summary.push_back(s);
  }
  return report;
}

ordered_json report_to_json(const VerificationReport& report) {
  const RunConfig& cfg = report.config;
  ordered_json j;
  j["schema"] = kSchema;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

  ordered_json groups = ordered_json::array();
  for (GroupId id : cfg.groups) groups.push_back(std::string(group_key(id)));
  j["config"] = {
      {"group", cfg.group_selector},
      {"groups", groups},
      {"seed", cfg.seed},
      {"points", cfg.n_points},
      {"params", params_json(cfg.params)},
      {"param_overrides", cfg.param_overrides},
      {"tolerances",
       {{"tol_exact", cfg.tolerances.tol_exact},
        {"tol_deriv", cfg.tolerances.tol_deriv},
        {"fd_tol", cfg.tolerances.fd_tol}}},
  };

  ordered_json results = ordered_json::array();
  for (const CheckResult& r : report.results) {
    ordered_json e;
    e["group"] = std::string(group_key(r.group_id));
    e["check"] = r.check_name;
    e["variant"] = r.variant;
    e["mode"] = r.mode == CheckMode::kAsserted ? "asserted" : "report";
    e["n_points"] = r.n_points;
    if (std::isfinite(r.max_residual)) {
      e["max_residual"] = r.max_residual;
    } else {
      e["max_residual"] = nullptr;
    }
    e["tolerance"] = r.tolerance;
    e["status"] = std::string(status_name(status_of(r)));
    if (r.sign != 0) e["sign"] = r.sign;
    e["notes"] = r.notes;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);

  ordered_json per_group = ordered_json::object();
  int pass = 0, fail = 0, flag = 0;
  for (const GroupSummary& s : report.summary) {
    per_group[std::string(group_key(s.id))] = {{"pass", s.pass}, {"fail", s.fail}, {"flag", s.flag}};
    pass += s.pass;
    fail += s.fail;
    flag += s.flag;
  }
  j["summary"] = {
      {"groups", per_group},
      {"total", {{"checks", pass + fail + flag}, {"pass", pass}, {"fail", fail}, {"flag", flag}}},
      {"passed", report.all_asserted_pass()},
  };

  ordered_json inc = ordered_json::array();
  for (const auto& [id, note] : report.inconsistencies) {
    inc.push_back({{"group", std::string(group_key(id))}, {"note", note}});
  }
  j["inconsistencies"] = std::move(inc);
  return j;
}

void write_report(std::ostream& os, const VerificationReport& report, Format format) {
  switch (format) {
    case Format::kJson:
      os << report_to_json(report).dump(2) << '\n';
      return;
    case Format::kCsv:
      os << "group,check,variant,mode,n_points,max_residual,tolerance,status\n";
      for (const CheckResult& r : report.results) {
        os << fmt::format("{},{},\"{}\",{},{},{:.17g},{:.17g},{}\n", group_key(r.group_id), r.check_name, r.variant,
                          r.mode == CheckMode::kAsserted ? "asserted" : "report", r.n_points, r.max_residual,
                          r.tolerance, status_name(status_of(r)));
      }
      return;
    case Format::kHuman: {
      std::size_t k = 0;
      for (const GroupSummary& s : report.summary) {
        os << fmt::format("{} ({})\n", group_label(s.id), group_key(s.id));
        os << fmt::format("  {:<56} {:>11} {:>9}  {}\n", "check", "residual", "tol", "status");
        for (; k < report.results.size() && report.results[k].group_id == s.id; ++k) {
          const CheckResult& r = report.results[k];
          os << fmt::format("  {:<56} {:>11.3e} {:>9.1e}  {}\n", display_name(r), r.max_residual, r.tolerance,
                            status_name(status_of(r)));
        }
        os << fmt::format("  pass {}  fail {}  flag {}\n\n", s.pass, s.fail, s.flag);
      }
      if (!report.inconsistencies.empty()) {
        os << "Catalog inconsistencies and corrections\n";
        for (const auto& [id, note] : report.inconsistencies) os << fmt::format("  {}: {}\n", group_key(id), note);
        os << '\n';
      }
      os << (report.all_asserted_pass() ? "RESULT: PASS\n" : "RESULT: FAIL\n");
      return;
    }
  }
}

ordered_json catalog_to_json(const RunConfig& config) {
  ordered_json groups = ordered_json::array();
  for (GroupId id : config.groups) {
    const GroupModel m = get_group(id, config.params);
    ordered_json C = ordered_json::array();
    for (const auto& e : m.C.nonzero()) {
      C.push_back({{"symbol", fmt::format("C^{}_{}{}", e.g + 1, e.a + 1, e.b + 1)},
                   {"gamma", e.g + 1},
                   {"alpha", e.a + 1},
                   {"beta", e.b + 1},
                   {"value", e.value}});
    }
    ordered_json box = ordered_json::object();
    for (int i = 0; i < kDim; ++i) {
      box[fmt::format("u{}", i + 1)] = ordered_json::array({m.domain.box[i].first, m.domain.box[i].second});
    }
    ordered_json dom = {{"box", box}};
    if (!m.domain.excluded.empty()) dom["excluded"] = m.domain.excluded;

    ordered_json e;
    e["id"] = std::string(group_key(id));
    e["label"] = std::string(group_label(id));
    e["constraints"] = param_constraints(id);
    e["structure_constants"] = std::move(C);
    e["domain"] = std::move(dom);
    e["metric_form"] = m.metric_form == MetricForm::kTetrad ? "tetrad" : "block-g3";
    e["tetrad"] = {{"printed", m.tetrad.printed},
                   {"orientation", std::string(orientation_name(m.tetrad.orientation))},
                   {"decision", m.orientation.summary()}};
    e["notes"] = m.notes;
    groups.push_back(std::move(e));
  }
  ordered_json j;
  j["schema"] = kSchema;
  j["params"] = params_json(config.params);
  j["groups"] = std::move(groups);
  return j;
}

void write_catalog(std::ostream& os, const RunConfig& config, Format format) {
  if (format == Format::kJson) {
    os << catalog_to_json(config).dump(2) << '\n';
    return;
  }
  if (format == Format::kCsv) {
    os << "group,gamma,alpha,beta,value\n";
    for (GroupId id : config.groups) {
      const GroupModel m = get_group(id, config.params);
      for (const auto& e : m.C.nonzero()) {
        os << fmt::format("{},{},{},{},{:.17g}\n", group_key(id), e.g + 1, e.a + 1, e.b + 1, e.value);
      }
    }
    return;
  }
  for (GroupId id : config.groups) {
    const GroupModel m = get_group(id, config.params);
    os << fmt::format("{:<12} {:<20}", group_key(id), group_label(id));
    for (const auto& e : m.C.nonzero()) os << fmt::format(" C^{}_{}{}={:g}", e.g + 1, e.a + 1, e.b + 1, e.value);
    os << '\n';
  }
}

ordered_json drift_to_json(const SimulateConfig& config, const Trajectory& traj) {
  const DriftStats d = drift_report(traj);
  ordered_json max_abs = ordered_json::object();
  ordered_json max_rel = ordered_json::object();
  ordered_json initial = ordered_json::object();
  for (std::size_t q = 0; q < DriftStats::kNames.size(); ++q) {
    initial[DriftStats::kNames[q]] = d.initial[q];
    max_abs[DriftStats::kNames[q]] = d.max_abs[q];
    max_rel[DriftStats::kNames[q]] = d.max_rel[q];
  }
  ordered_json j;
  j["schema"] = kSchema;
  j["group"] = std::string(group_key(config.run.groups.front()));
  j["params"] = params_json(config.run.params);
  j["u0"] = vec_json(config.state0.u);
  j["p0"] = vec_json(config.state0.p);
  j["T"] = config.T;
  j["h"] = config.h;
  j["steps"] = traj.t.size() - 1;
  j["t_end"] = traj.t.back();
  j["domain_exit"] = traj.domain_exit;
  if (traj.domain_exit) {
    j["exit_time"] = traj.exit_time;
    j["exit_reason"] = traj.message;
  }
  j["initial"] = std::move(initial);
  j["max_abs_drift"] = std::move(max_abs);
  j["max_rel_drift"] = std::move(max_rel);
  return j;
}

// ---------------------------------------------------------------------------

namespace {

struct CommonOptions {
  std::string group = "all";
  std::optional<std::uint64_t> seed;
  std::size_t points = 200;
  std::vector<std::string> params;
  std::optional<double> tol_exact;
  std::optional<double> tol_deriv;
  std::string format = "json";
  std::optional<std::string> out;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_checks) {
  app->add_option("--group", o.group, "Group id or 'all'")->capture_default_str();
  app->add_option("--param", o.params, "Parameter override key=value (repeatable)");
  app->add_option("--format", o.format, "Output format: json, csv or human")->capture_default_str();
  app->add_option("--out", o.out, "Output file (default: stdout)");
  if (with_checks) {
    app->add_option("--seed", o.seed, "Sampling seed (default: $G4_SEED or 42)");
    app->add_option("--points", o.points, "Sample points per group")->capture_default_str();
    app->add_option("--tol-exact", o.tol_exact, "Tolerance for algebraic identities");
    app->add_option("--tol-deriv", o.tol_deriv, "Tolerance for derivative identities");
  }
}

RunConfig build_config(const CommonOptions& o) {
  RunConfig cfg;
  cfg.group_selector = o.group;
  cfg.groups = resolve_groups(o.group);
  for (const auto& p : o.params) apply_param(cfg.params, p);
  cfg.param_overrides = o.params;
  for (GroupId id : cfg.groups) {
    try {
      validate_params(id, cfg.params);
    } catch (const InvalidParams& e) {
      throw UsageError(e.what());
    }
  }
  if (o.points == 0) throw UsageError("--points must be at least 1");
  cfg.n_points = o.points;
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (auto env = seed_from_env()) {
    cfg.seed = *env;
  }
  if (o.tol_exact) cfg.tolerances.tol_exact = *o.tol_exact;
  if (o.tol_deriv) cfg.tolerances.tol_deriv = *o.tol_deriv;
  try {
    cfg.tolerances.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.format = parse_format(o.format);
  cfg.out = o.out;
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification of four-dimensional spacetimes with simply transitive G4 motion groups"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions list_opts, verify_opts, sim_opts;
  auto* list_cmd = app.add_subcommand("list", "Dump the catalog");
  add_common(list_cmd, list_opts, false);
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");
  add_common(verify_cmd, verify_opts, true);

  auto* sim_cmd = app.add_subcommand("simulate", "Integrate a charged-particle trajectory");
  sim_cmd->set_help_flag("--help", "Print this help message and exit");
  sim_opts.group = "g4-i-cne1";
  add_common(sim_cmd, sim_opts, false);
  std::string u0 = "0,0,0,0", p0 = "0.1,0.2,0.3,0.4";
  double T = 10.0, h = 1e-3;
  sim_cmd->add_option("--u0", u0, "Initial chart point u1,u2,u3,u4")->capture_default_str();
  sim_cmd->add_option("--p0", p0, "Initial momenta p1,p2,p3,p4")->capture_default_str();
  sim_cmd->add_option("--T", T, "Integration horizon")->capture_default_str();
  sim_cmd->add_option("--h", h, "RK4 step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (list_cmd->parsed()) {
      const RunConfig cfg = build_config(list_opts);
      std::ofstream file;
      write_catalog(*open_output(cfg.out, file, out), cfg, cfg.format);
      return kExitPass;
    }
    if (verify_cmd->parsed()) {
      const RunConfig cfg = build_config(verify_opts);
      const VerificationReport report = run_verify(cfg);
      std::ofstream file;
      write_report(*open_output(cfg.out, file, out), report, cfg.format);
      return report.all_asserted_pass() ? kExitPass : kExitFailure;
    }
    if (sim_cmd->parsed()) {
      SimulateConfig sc;
      sc.run = build_config(sim_opts);
      if (sc.run.groups.size() != 1) throw UsageError("simulate needs a single --group");
      if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("--h must be positive");
      if (!(T > 0.0) || !std::isfinite(T)) throw UsageError("--T must be positive");
      sc.state0.u = parse_vec4(u0);
      sc.state0.p = parse_vec4(p0);
      sc.T = T;
      sc.h = h;
      const GroupModel model = get_group(sc.run.groups.front(), sc.run.params);
      if (!model.domain.contains(sc.state0.u)) throw UsageError("--u0 lies outside the group's domain");
      const Trajectory traj = integrate_trajectory(model, sc.state0, T, h);

      if (sc.run.out) {
        std::ofstream file(*sc.run.out, std::ios::binary | std::ios::trunc);
        if (!file) throw UsageError("cannot open output file '" + *sc.run.out + "'");
        write_trajectory_csv(file, traj);
      }
      switch (sc.run.format) {
        case Format::kCsv:
          if (!sc.run.out) write_trajectory_csv(out, traj);
          break;
        case Format::kJson:
          out << drift_to_json(sc, traj).dump(2) << '\n';
          break;
        case Format::kHuman: {
          const DriftStats d = drift_report(traj);
          out << fmt::format("{} steps={} t_end={:.6g}{}\n", group_key(model.id), traj.t.size() - 1, traj.t.back(),
                             traj.domain_exit ? fmt::format(" domain_exit at t={:.6g}", traj.exit_time) : "");
          for (std::size_t q = 0; q < DriftStats::kNames.size(); ++q) {
            out << fmt::format("  {:<3} initial {:>22.15g}  max drift {:.3e}\n", DriftStats::kNames[q], d.initial[q],
                               d.max_abs[q]);
          }
          break;
        }
      }
      return kExitPass;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace g4::cli
