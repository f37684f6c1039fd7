#include "coordcycle/experiments.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "coordcycle/output.hpp"

namespace coordcycle {

using json = nlohmann::ordered_json;

std::string to_string(Artifact artifact) {
  switch (artifact) {
    case Artifact::Csv:
      return "csv";
    case Artifact::Json:
      return "json";
    case Artifact::Svg:
      return "svg";
  }
  return "unknown";
}

Artifact parse_artifact(std::string_view name) {
  if (name == "csv") return Artifact::Csv;
  if (name == "json") return Artifact::Json;
  if (name == "svg") return Artifact::Svg;
  throw ConfigError("unknown output '" + std::string(name) +
                    "' (expected csv, json or svg)");
}

bool Scenario::wants(Artifact a) const {
  return std::find(outputs.begin(), outputs.end(), a) != outputs.end();
}

void validate(const Scenario &sc) {
  if (sc.name.empty()) throw ConfigError("scenario needs a name");
  if (sc.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("scenario name '" + sc.name + "' contains a path separator");
  }
  validate(sc.params);
  validate(sc.integrator);
  if (!(sc.initial.x >= 0.0 && sc.initial.x <= 1.0)) {
    throw ConfigError("initial x must lie in [0, 1]");
  }
  if (!std::isfinite(sc.initial.y)) throw ConfigError("initial y must be finite");
  if (sc.matrix && !(alignment(*sc.matrix) > 0.0)) {
    throw ConfigError("payoff matrix must have positive alignment a - b - c + d");
  }
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::R:
      return "r";
    case SweepAxis::K:
      return "k";
    case SweepAxis::S:
      return "s";
    case SweepAxis::Eta:
      return "eta";
  }
  return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "r") return SweepAxis::R;
  if (name == "k") return SweepAxis::K;
  if (name == "s") return SweepAxis::S;
  if (name == "eta") return SweepAxis::Eta;
  throw ConfigError("unknown sweep axis '" + std::string(name) +
                    "' (expected r, k, s or eta)");
}

Scenario sweep_point(const SweepSpec &spec, double value) {
  Scenario sc = spec.base;
  switch (spec.axis) {
    case SweepAxis::R:
      sc.params.r = value;
      break;
    case SweepAxis::K:
      sc.params.k = value;
      break;
    case SweepAxis::S:
      if (sc.matrix) throw ConfigError("cannot sweep s in full-matrix mode");
      sc.params.s = value;
      break;
    case SweepAxis::Eta:
      sc.params.eta = value;
      break;
  }
  char suffix[64];
  std::snprintf(suffix, sizeof suffix, "_%s%g", to_string(spec.axis).c_str(),
                value);
  sc.name = spec.name + suffix;
  validate(sc);
  return sc;
}

// ---------------------------------------------------------------------------
// Config files

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node &at, const std::string &msg) const {
    const YAML::Mark m = at.Mark();
    std::ostringstream os;
    os << source_;
    if (!m.is_null()) os << ':' << m.line + 1 << ':' << m.column + 1;
    os << ": " << msg;
    throw ConfigError(os.str());
  }

  void expect_map(const YAML::Node &n, const std::string &what) const {
    if (!n.IsMap()) fail(n, what + " must be a mapping");
  }

  void allow_keys(const YAML::Node &n, std::initializer_list<const char *> keys,
                  const std::string &what) const {
    expect_map(n, what);
    for (const auto &kv : n) {
      const std::string key = kv.first.as<std::string>();
      if (std::none_of(keys.begin(), keys.end(),
                       [&](const char *k) { return key == k; })) {
        fail(kv.first, "unknown key '" + key + "' in " + what);
      }
    }
  }

  double number(const YAML::Node &n, const std::string &what) const {
    try {
      return n.as<double>();
    } catch (const YAML::Exception &) {
      fail(n, what + " must be a number");
    }
  }

  std::size_t count(const YAML::Node &n, const std::string &what) const {
    try {
      const long long v = n.as<long long>();
      if (v < 0) fail(n, what + " must be non-negative");
      return static_cast<std::size_t>(v);
    } catch (const YAML::Exception &) {
      fail(n, what + " must be an integer");
    }
  }

  std::string text(const YAML::Node &n, const std::string &what) const {
    if (!n.IsScalar()) fail(n, what + " must be a string");
    return n.as<std::string>();
  }

  template <typename F>
  auto wrap(const YAML::Node &at, F &&f) const -> decltype(f()) {
    try {
      return f();
    } catch (const ConfigError &e) {
      fail(at, e.what());
    }
  }

  Scenario scenario(const YAML::Node &n) const {
    allow_keys(n,
               {"name", "group", "dynamic", "params", "initial", "matrix",
                "integrator", "outputs"},
               "scenario");
    Scenario sc;
    if (!n["name"]) fail(n, "scenario needs a name");
    sc.name = text(n["name"], "name");
    if (n["group"]) sc.group = text(n["group"], "group");
    if (!n["dynamic"]) fail(n, "scenario '" + sc.name + "' needs a dynamic");
    sc.kind = wrap(n["dynamic"],
                   [&] { return parse_dynamic_kind(text(n["dynamic"], "dynamic")); });

    bool explicit_s = false;
    if (const YAML::Node ps = n["params"]) {
      allow_keys(ps, {"r", "k", "x_hat", "eta", "s"}, "params");
      if (ps["r"]) sc.params.r = number(ps["r"], "r");
      if (ps["k"]) sc.params.k = number(ps["k"], "k");
      if (ps["x_hat"]) sc.params.x_hat = number(ps["x_hat"], "x_hat");
      if (ps["eta"]) sc.params.eta = number(ps["eta"], "eta");
      if (ps["s"]) {
        sc.params.s = number(ps["s"], "s");
        explicit_s = true;
      }
    }

    const YAML::Node init = n["initial"];
    if (!init) fail(n, "scenario '" + sc.name + "' needs an initial state");
    allow_keys(init, {"x", "y"}, "initial");
    if (!init["x"]) fail(init, "initial state needs x");
    sc.initial.x = number(init["x"], "initial x");

    if (const YAML::Node m = n["matrix"]) {
      if (!m.IsSequence() || m.size() != 4) {
        fail(m, "matrix must be a list [a, b, c, d]");
      }
      sc.matrix = make_payoff_matrix(number(m[0], "a"), number(m[1], "b"),
                                     number(m[2], "c"), number(m[3], "d"));
      if (explicit_s) fail(n["params"]["s"], "s is derived from the matrix");
      if (init["y"]) fail(init["y"], "initial y is derived from the matrix");
      if (!(alignment(*sc.matrix) > 0.0)) {
        fail(m, "matrix must have positive alignment a - b - c + d");
      }
      sc.params.s = alignment(*sc.matrix);
      sc.initial.y = indifference_state(*sc.matrix);
    } else {
      if (!init["y"]) fail(init, "initial state needs y");
      sc.initial.y = number(init["y"], "initial y");
    }

    if (const YAML::Node ic = n["integrator"]) {
      allow_keys(ic,
                 {"rel_tol", "abs_tol", "event_tol", "max_time",
                  "max_crossings", "diag_band", "sliding_policy", "y_max",
                  "output_dt", "max_step", "br_method"},
                 "integrator");
      IntegratorConfig &c = sc.integrator;
      if (ic["rel_tol"]) c.rel_tol = number(ic["rel_tol"], "rel_tol");
      if (ic["abs_tol"]) c.abs_tol = number(ic["abs_tol"], "abs_tol");
      if (ic["event_tol"]) c.event_tol = number(ic["event_tol"], "event_tol");
      if (ic["max_time"]) c.max_time = number(ic["max_time"], "max_time");
      if (ic["max_crossings"]) {
        c.max_crossings = count(ic["max_crossings"], "max_crossings");
      }
      if (ic["diag_band"]) c.diag_band = number(ic["diag_band"], "diag_band");
      if (ic["y_max"]) c.y_max = number(ic["y_max"], "y_max");
      if (ic["output_dt"]) c.output_dt = number(ic["output_dt"], "output_dt");
      if (ic["max_step"]) c.max_step = number(ic["max_step"], "max_step");
      if (ic["sliding_policy"]) {
        c.sliding_policy = wrap(ic["sliding_policy"], [&] {
          return parse_sliding_policy(
              text(ic["sliding_policy"], "sliding_policy"));
        });
      }
      if (ic["br_method"]) {
        c.br_method = wrap(ic["br_method"], [&] {
          return parse_br_method(text(ic["br_method"], "br_method"));
        });
      }
    }

    if (const YAML::Node out = n["outputs"]) {
      if (!out.IsSequence()) fail(out, "outputs must be a list");
      sc.outputs.clear();
      for (const auto &o : out) {
        sc.outputs.push_back(
            wrap(o, [&] { return parse_artifact(text(o, "output")); }));
      }
    }
    wrap(n, [&] { validate(sc); });
    return sc;
  }

  SweepSpec sweep(const YAML::Node &n) const {
    allow_keys(n, {"name", "base", "axis", "values"}, "sweep");
    SweepSpec spec;
    if (!n["name"]) fail(n, "sweep needs a name");
    spec.name = text(n["name"], "name");
    if (!n["base"]) fail(n, "sweep '" + spec.name + "' needs a base scenario");
    YAML::Node base = YAML::Clone(n["base"]);
    if (base.IsMap() && !base["name"]) base["name"] = spec.name;
    spec.base = scenario(base);
    if (!n["axis"]) fail(n, "sweep '" + spec.name + "' needs an axis");
    spec.axis =
        wrap(n["axis"], [&] { return parse_sweep_axis(text(n["axis"], "axis")); });
    const YAML::Node values = n["values"];
    if (!values || !values.IsSequence()) fail(n, "sweep values must be a list");
    for (const auto &v : values) {
      spec.values.push_back(number(v, "sweep value"));
      wrap(v, [&] { sweep_point(spec, spec.values.back()); });
    }
    return spec;
  }

 private:
  std::string source_;
};

}  // namespace

ConfigFile parse_config(const std::string &text, const std::string &source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException &e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  const Reader rd(source);
  if (!root.IsMap()) rd.fail(root, "config must be a mapping");
  rd.allow_keys(root, {"schema_version", "scenarios", "sweeps"}, "config");
  ConfigFile cfg;
  if (!root["schema_version"]) rd.fail(root, "missing schema_version");
  cfg.schema_version =
      static_cast<int>(rd.count(root["schema_version"], "schema_version"));
  if (cfg.schema_version != kSchemaVersion) {
    rd.fail(root["schema_version"],
            "unsupported schema_version " + std::to_string(cfg.schema_version) +
                " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  std::set<std::string> names;
  if (const YAML::Node list = root["scenarios"]) {
    if (!list.IsSequence()) rd.fail(list, "scenarios must be a list");
    for (const auto &n : list) {
      cfg.scenarios.push_back(rd.scenario(n));
      if (!names.insert(cfg.scenarios.back().name).second) {
        rd.fail(n, "duplicate scenario name '" + cfg.scenarios.back().name + "'");
      }
    }
  }
  if (const YAML::Node list = root["sweeps"]) {
    if (!list.IsSequence()) rd.fail(list, "sweeps must be a list");
    for (const auto &n : list) {
      cfg.sweeps.push_back(rd.sweep(n));
      if (!names.insert(cfg.sweeps.back().name).second) {
        rd.fail(n, "duplicate name '" + cfg.sweeps.back().name + "'");
      }
    }
  }
  return cfg;
}

ConfigFile load_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

// ---------------------------------------------------------------------------
// Golden scenarios

std::vector<Scenario> golden_scenarios() {
  std::vector<Scenario> out;
  auto base = [](std::string name, std::string group, DynamicKind kind,
                 ModelParams p, JointStated init) {
    Scenario sc;
    sc.name = std::move(name);
    sc.group = std::move(group);
    sc.kind = kind;
    sc.params = p;
    sc.initial = init;
    return sc;
  };

  for (auto [label, r] : {std::pair{"0.1", 0.1}, {"3.5", 3.5}, {"7", 7.0}}) {
    Scenario sc = base(std::string("br_orbit_r") + label, "br_orbit",
                       DynamicKind::BestResponse, {r, 0.6, 0.1, 1.0, 1.0},
                       {0.8, 0.65});
    sc.integrator.max_crossings = 60;
    sc.integrator.max_time = 2000.0;
    out.push_back(sc);
  }

  Scenario logit_cycle = base("logit_cycle", "logit_cycle", DynamicKind::Logit,
                              {0.25, 0.6, 0.1, 0.25, 1.25}, {0.9, 0.6});
  logit_cycle.integrator.max_time = 200.0;
  out.push_back(logit_cycle);

  for (auto [group, eta] : {std::pair{"logit_low_noise", 1.0 / 6.0},
                            {"logit_high_noise", 1.0 / 3.0}}) {
    for (auto [label, r] : {std::pair{"0.1", 0.1}, {"1.5", 1.5}, {"10", 10.0}}) {
      Scenario sc = base(std::string(group) + "_r" + label, group,
                         DynamicKind::Logit, {r, 0.6, 0.1, eta, 1.0},
                         {0.4, 0.6});
      sc.integrator.max_time = 200.0;
      out.push_back(sc);
    }
  }

  Scenario spiral = base("replicator_spiral", "replicator_spiral",
                         DynamicKind::Replicator, {3.0, 0.6, 0.1, 1.0, 0.17},
                         {0.4, 0.7});
  spiral.integrator.max_time = 1000.0;
  out.push_back(spiral);
  return out;
}

// ---------------------------------------------------------------------------
// Running

std::optional<LyapunovSummary> summarize_lyapunov(const Trajectory &traj,
                                                  const ModelParams &p) {
  if (!(p.r > 0.0)) return std::nullopt;
  LyapunovSummary out;
  std::optional<double> prev;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const JointStated &s = traj.samples[i].state;
    if (!(s.x > 0.0 && s.x < 1.0)) continue;
    ModelParams q = p;
    if (traj.full_matrix()) q.s = alignment(traj.payoffs[i]);
    const double v = lyapunov(q, s).value;
    if (!prev) {
      out.initial = v;
    } else {
      out.largest_dip = std::min(out.largest_dip, v - *prev);
    }
    prev = v;
    out.final = v;
    ++out.samples;
  }
  if (out.samples == 0) return std::nullopt;
  return out;
}

ScenarioResult run_scenario(const Scenario &sc,
                            const std::filesystem::path &out_dir) {
  validate(sc);
  ScenarioResult res;
  res.scenario = sc;
  if (sc.matrix) {
    res.trajectory = integrate_full_matrix(sc.kind, sc.params, *sc.matrix,
                                           sc.initial.x, sc.integrator);
  } else {
    res.trajectory = integrate(sc.kind, sc.params, sc.initial, sc.integrator);
  }
  res.stability = classify_stability(sc.kind, sc.params);
  try {
    res.orbit = detect_orbit(res.trajectory, sc.params, 1e-6, 5, sc.kind);
  } catch (const InsufficientCrossings &e) {
    res.orbit_note = e.what();
  }
  if (sc.kind == DynamicKind::Replicator) {
    res.lyapunov = summarize_lyapunov(res.trajectory, sc.params);
  }

  if (out_dir.empty()) return res;
  std::filesystem::create_directories(out_dir);
  if (sc.wants(Artifact::Csv)) {
    res.files.push_back(out_dir / (sc.name + ".csv"));
    write_trajectory_csv(res.files.back(), res.trajectory);
    res.files.push_back(out_dir / (sc.name + "_crossings.csv"));
    write_crossings_csv(res.files.back(), res.trajectory);
  }
  if (sc.wants(Artifact::Svg)) {
    res.files.push_back(out_dir / (sc.name + ".svg"));
    RenderStyle style;
    style.title = sc.name;
    write_text(res.files.back(),
               render_phase_portrait(
                   {PortraitTrace{&res.trajectory, sc.params, sc.name}},
                   sc.kind, style));
  }
  if (sc.wants(Artifact::Json)) {
    res.files.push_back(out_dir / (sc.name + ".json"));
    write_text(res.files.back(), report_json(res).dump(2) + "\n");
  }
  return res;
}

namespace {

json number_or_null(const std::optional<double> &v) {
  return v ? json(*v) : json(nullptr);
}

json params_json(const ModelParams &p) {
  return {{"r", p.r}, {"k", p.k}, {"x_hat", p.x_hat}, {"eta", p.eta},
          {"s", p.s}};
}

json integrator_json(const IntegratorConfig &c) {
  return {{"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"event_tol", c.event_tol},
          {"max_time", c.max_time},
          {"max_crossings", c.max_crossings},
          {"diag_band", c.diag_band},
          {"sliding_policy", to_string(c.sliding_policy)},
          {"y_max", c.y_max},
          {"output_dt", c.output_dt},
          {"max_step", c.max_step},
          {"br_method", to_string(c.br_method)}};
}

}  // namespace

json report_json(const ScenarioResult &res) {
  const Scenario &sc = res.scenario;
  const Trajectory &t = res.trajectory;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = sc.name;
  j["group"] = sc.group;
  j["dynamic"] = to_string(sc.kind);
  j["mode"] = sc.matrix ? "full_matrix" : "reduced";
  j["params"] = params_json(sc.params);
  j["initial"] = {{"x", sc.initial.x}, {"y", sc.initial.y}};
  if (sc.matrix) {
    const PayoffMatrixd &m = *sc.matrix;
    j["matrix"] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }
  j["integrator"] = integrator_json(sc.integrator);

  const Sample &last = t.samples.back();
  j["run"] = {{"termination", to_string(t.termination)},
              {"samples", t.samples.size()},
              {"crossings", t.crossings.size()},
              {"nullcline_crossings", t.nullcline_crossings.size()},
              {"final", {{"t", last.t}, {"x", last.state.x}, {"y", last.state.y}}},
              {"max_boundary_violation", t.max_boundary_violation}};

  const StabilityReport &st = res.stability;
  json stab;
  stab["steady_state"] = {{"x", st.steady_state.x}, {"y", st.steady_state.y}};
  stab["eta_star"] = number_or_null(st.eta_star);
  if (st.jacobian) {
    const Eigen::Matrix2d &m = *st.jacobian;
    stab["jacobian"] = {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
  } else {
    stab["jacobian"] = nullptr;
  }
  if (st.eigenvalues) {
    stab["eigenvalues"] = json::array();
    for (const auto &l : *st.eigenvalues) {
      stab["eigenvalues"].push_back({{"re", l.real()}, {"im", l.imag()}});
    }
  } else {
    stab["eigenvalues"] = nullptr;
  }
  stab["classification"] = to_string(st.classification);
  j["stability"] = stab;

  if (res.orbit) {
    const OrbitReport &o = *res.orbit;
    j["orbit"] = {{"converged", o.converged},
                  {"upper_tail", o.upper_tail},
                  {"lower_tail", o.lower_tail},
                  {"upper_limit", o.upper_limit},
                  {"lower_limit", o.lower_limit},
                  {"residual", o.residual},
                  {"orbit_width_lower_bound",
                   number_or_null(o.orbit_width_lower_bound)}};
  } else {
    j["orbit"] = {{"converged", false}, {"note", res.orbit_note}};
  }
  if (sc.kind == DynamicKind::Replicator) {
    if (res.lyapunov) {
      const LyapunovSummary &l = *res.lyapunov;
      j["lyapunov"] = {{"initial", l.initial},
                       {"final", l.final},
                       {"largest_dip", l.largest_dip},
                       {"samples", l.samples}};
    } else {
      j["lyapunov"] = nullptr;
    }
  }
  json files = json::array();
  for (const auto &f : res.files) files.push_back(f.filename().string());
  j["files"] = files;
  return j;
}

std::vector<std::filesystem::path> write_group_portraits(
    const std::vector<ScenarioResult> &results,
    const std::filesystem::path &out_dir) {
  std::map<std::string, std::vector<const ScenarioResult *>> groups;
  for (const ScenarioResult &r : results) {
    if (!r.scenario.group.empty()) groups[r.scenario.group].push_back(&r);
  }
  std::vector<std::filesystem::path> written;
  for (const auto &[group, members] : groups) {
    if (members.size() < 2) continue;
    if (members.front()->scenario.group == members.front()->scenario.name) continue;
    std::vector<PortraitTrace> traces;
    bool same_kind = true;
    for (const ScenarioResult *r : members) {
      same_kind &= r->scenario.kind == members.front()->scenario.kind;
      traces.push_back({&r->trajectory, r->scenario.params, r->scenario.name});
    }
    if (!same_kind) continue;
    RenderStyle style;
    style.title = group;
    std::filesystem::create_directories(out_dir);
    written.push_back(out_dir / (group + ".svg"));
    write_text(written.back(), render_phase_portrait(
                                   traces, members.front()->scenario.kind, style));
  }
  return written;
}

namespace {

constexpr double kSteadyBall = 1e-3;

SweepRow sweep_row(const Scenario &sc, double value) {
  const ScenarioResult res = run_scenario(sc);
  SweepRow row;
  row.value = value;
  row.stability = res.stability.classification;
  row.crossings = res.trajectory.crossings.size();
  row.termination = res.trajectory.termination;
  if (res.orbit) row.orbit_width_lower_bound = res.orbit->orbit_width_lower_bound;
  if (sc.kind == DynamicKind::BestResponse) {
    row.orbit_width_lower_bound = br_geometry(sc.params).width();
  }
  const JointStated &end = res.trajectory.samples.back().state;
  const JointStated &ss = res.stability.steady_state;
  if (res.trajectory.diverged()) {
    row.outcome = "diverged";
  } else if (res.orbit && res.orbit->converged) {
    row.outcome = "orbit_converged";
    row.orbit_width = res.orbit->upper_limit - res.orbit->lower_limit;
  } else if (res.trajectory.termination == Termination::SteadyState ||
             std::hypot(end.x - ss.x, end.y - ss.y) < kSteadyBall) {
    row.outcome = "steady_state";
  } else {
    row.outcome = "unresolved";
  }
  return row;
}

}  // namespace

SweepReport run_sweep(const SweepSpec &spec, unsigned threads) {
  SweepReport report;
  report.name = spec.name;
  report.axis = spec.axis;
  std::vector<Scenario> points;
  for (double v : spec.values) points.push_back(sweep_point(spec, v));
  report.rows.resize(points.size());
  if (points.empty()) return report;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(points.size());
  auto worker = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      try {
        report.rows[i] = sweep_row(points[i], spec.values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

json sweep_json(const SweepReport &report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = report.name;
  j["axis"] = to_string(report.axis);
  j["rows"] = json::array();
  for (const SweepRow &r : report.rows) {
    j["rows"].push_back({{"value", r.value},
                         {"stability", to_string(r.stability)},
                         {"outcome", r.outcome},
                         {"orbit_width_lower_bound",
                          number_or_null(r.orbit_width_lower_bound)},
                         {"orbit_width", number_or_null(r.orbit_width)},
                         {"crossings", r.crossings},
                         {"termination", to_string(r.termination)}});
  }
  return j;
}

void write_sweep(const SweepReport &report,
                 const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / (report.name + ".json"), sweep_json(report).dump(2) + "\n");
  std::string csv = to_string(report.axis) +
                    ",stability,outcome,orbit_width_lower_bound,orbit_width,"
                    "crossings,termination\n";
  for (const SweepRow &r : report.rows) {
    csv += format_double(r.value) + ',' + to_string(r.stability) + ',' +
           r.outcome + ',' +
           (r.orbit_width_lower_bound ? format_double(*r.orbit_width_lower_bound)
                                      : "") +
           ',' + (r.orbit_width ? format_double(*r.orbit_width) : "") + ',' +
           std::to_string(r.crossings) + ',' + to_string(r.termination) + '\n';
  }
  write_text(out_dir / (report.name + ".csv"), csv);
}

}  // namespace coordcycle
