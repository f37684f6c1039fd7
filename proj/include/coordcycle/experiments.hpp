#ifndef COORDCYCLE_EXPERIMENTS_HPP_
#define COORDCYCLE_EXPERIMENTS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "coordcycle/analysis.hpp"
#include "coordcycle/integrator.hpp"

namespace coordcycle {

inline constexpr int kSchemaVersion = 1;

enum class Artifact { Csv, Json, Svg };

std::string to_string(Artifact artifact);
Artifact parse_artifact(std::string_view name);

struct Scenario {
  std::string name;
  // Scenarios sharing a group are also drawn together.
  std::string group;
  DynamicKind kind = DynamicKind::BestResponse;
  ModelParams params;
  JointStated initial;
  IntegratorConfig integrator;
  // Full-matrix mode: evolve the payoffs themselves. params.s and initial.y
  // are then derived from the matrix.
  std::optional<PayoffMatrixd> matrix;
  std::vector<Artifact> outputs{Artifact::Csv, Artifact::Json, Artifact::Svg};

  bool wants(Artifact a) const;
};

void validate(const Scenario &sc);

enum class SweepAxis { R, K, S, Eta };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepSpec {
  std::string name;
  Scenario base;
  SweepAxis axis = SweepAxis::R;
  std::vector<double> values;
};

// Copy of `base` with the swept parameter set to `value`.
Scenario sweep_point(const SweepSpec &spec, double value);

struct ConfigFile {
  int schema_version = kSchemaVersion;
  std::vector<Scenario> scenarios;
  std::vector<SweepSpec> sweeps;
};

// Errors are ConfigError carrying "source:line:column: message".
ConfigFile parse_config(const std::string &text,
                        const std::string &source = "<config>");
ConfigFile load_config(const std::filesystem::path &path);

std::vector<Scenario> golden_scenarios();

struct LyapunovSummary {
  double initial = 0.0;
  double final = 0.0;
  // Most negative change between consecutive interior samples (0 if none).
  double largest_dip = 0.0;
  std::size_t samples = 0;
};

std::optional<LyapunovSummary> summarize_lyapunov(const Trajectory &traj,
                                                  const ModelParams &p);

struct ScenarioResult {
  Scenario scenario;
  Trajectory trajectory;
  StabilityReport stability;
  std::optional<OrbitReport> orbit;
  std::string orbit_note;
  std::optional<LyapunovSummary> lyapunov;
  std::vector<std::filesystem::path> files;
};

// Runs one scenario and writes its requested artifacts into out_dir (no
// files when out_dir is empty).
ScenarioResult run_scenario(const Scenario &sc,
                            const std::filesystem::path &out_dir = {});

nlohmann::ordered_json report_json(const ScenarioResult &result);

// One SVG per group that holds more than one scenario.
std::vector<std::filesystem::path> write_group_portraits(
    const std::vector<ScenarioResult> &results,
    const std::filesystem::path &out_dir);

struct SweepRow {
  double value = 0.0;
  Stability stability = Stability::Repelling;
  // orbit_converged, diverged, steady_state or unresolved.
  std::string outcome;
  std::optional<double> orbit_width_lower_bound;
  std::optional<double> orbit_width;
  std::size_t crossings = 0;
  Termination termination = Termination::MaxTime;
};

struct SweepReport {
  std::string name;
  SweepAxis axis = SweepAxis::R;
  std::vector<SweepRow> rows;
};

// Points run on up to `threads` workers; rows keep the order of values.
SweepReport run_sweep(const SweepSpec &spec, unsigned threads = 0);

nlohmann::ordered_json sweep_json(const SweepReport &report);
void write_sweep(const SweepReport &report,
                 const std::filesystem::path &out_dir);

}  // namespace coordcycle

#endif  // COORDCYCLE_EXPERIMENTS_HPP_
