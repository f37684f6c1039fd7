#include "coordcycle/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "coordcycle/experiments.hpp"
#include "coordcycle/output.hpp"

namespace coordcycle {

namespace {

struct Options {
  std::string config;
  std::string out_dir;
  std::string format;
  std::string seed;
  unsigned threads = 0;
};

std::filesystem::path resolve_out_dir(const Options &o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char *env = std::getenv("COORDCYCLE_OUT"); env && *env) return env;
  return "coordcycle_out";
}

std::vector<Artifact> parse_formats(const std::string &list) {
  std::vector<Artifact> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_artifact(item));
  }
  if (out.empty()) throw ConfigError("--format needs at least one of csv, json, svg");
  return out;
}

std::vector<Scenario> scenarios_from(const Options &o, bool golden_default) {
  if (o.config.empty()) {
    if (golden_default) return golden_scenarios();
    throw ConfigError("--config is required");
  }
  return load_config(o.config).scenarios;
}

void override_outputs(std::vector<Scenario> &scs, const Options &o) {
  if (o.format.empty()) return;
  const std::vector<Artifact> formats = parse_formats(o.format);
  for (Scenario &sc : scs) sc.outputs = formats;
}

std::string summary_line(const ScenarioResult &r) {
  char buf[256];
  const Sample &last = r.trajectory.samples.back();
  std::string orbit = "orbit n/a";
  if (r.orbit) orbit = r.orbit->converged ? "orbit converged" : "orbit open";
  std::snprintf(buf, sizeof buf,
                "%-22s %-13s %-13s t=%-10.6g crossings=%-5zu %-16s %s",
                r.scenario.name.c_str(), to_string(r.scenario.kind).c_str(),
                to_string(r.trajectory.termination).c_str(), last.t,
                r.trajectory.crossings.size(),
                to_string(r.stability.classification).c_str(), orbit.c_str());
  return buf;
}

int run_many(std::vector<Scenario> scs, const std::filesystem::path &out_dir,
             bool group_portraits, std::ostream &out) {
  std::vector<ScenarioResult> results;
  for (const Scenario &sc : scs) {
    results.push_back(run_scenario(sc, out_dir));
    out << summary_line(results.back()) << '\n';
  }
  if (group_portraits) {
    for (const auto &p : write_group_portraits(results, out_dir)) {
      out << "wrote " << p.filename().string() << '\n';
    }
  }
  const bool all_diverged =
      !results.empty() &&
      std::all_of(results.begin(), results.end(),
                  [](const ScenarioResult &r) { return r.trajectory.diverged(); });
  return all_diverged ? kExitDivergenceOnly : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Coordination games with adjusting payoffs: simulation and analysis",
               "coordcycle"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App *sub, bool config_required) {
    auto *c = sub->add_option("--config", o.config, "YAML scenario file");
    if (config_required) c->required();
    sub->add_option("--out-dir", o.out_dir,
                    "output directory (default $COORDCYCLE_OUT or coordcycle_out)");
    sub->add_option("--format", o.format, "comma list of csv, json, svg");
    sub->add_option("--seed", o.seed, "reserved; the dynamics are deterministic");
  };
  CLI::App *simulate = app.add_subcommand("simulate", "run the scenarios of a config file");
  common(simulate, true);
  CLI::App *analyze = app.add_subcommand("analyze", "print JSON analysis reports");
  common(analyze, true);
  CLI::App *sweep = app.add_subcommand("sweep", "run the parameter sweeps of a config file");
  common(sweep, true);
  sweep->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  CLI::App *render = app.add_subcommand("render", "write phase portraits only");
  common(render, true);
  CLI::App *golden = app.add_subcommand("golden", "run the built-in reference scenarios");
  common(golden, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (analyze->parsed()) {
      nlohmann::ordered_json reports = nlohmann::ordered_json::array();
      for (const Scenario &sc : scenarios_from(o, false)) {
        reports.push_back(report_json(run_scenario(sc)));
      }
      out << reports.dump(2) << '\n';
      return kExitOk;
    }
    const std::filesystem::path out_dir = resolve_out_dir(o);
    if (sweep->parsed()) {
      const ConfigFile cfg = load_config(o.config);
      bool all_diverged = !cfg.sweeps.empty();
      for (const SweepSpec &spec : cfg.sweeps) {
        const SweepReport report = run_sweep(spec, o.threads);
        write_sweep(report, out_dir);
        for (const SweepRow &r : report.rows) {
          all_diverged &= r.outcome == "diverged";
          char buf[160];
          std::snprintf(buf, sizeof buf, "%-16s %s=%-10g %-16s %s\n",
                        report.name.c_str(), to_string(report.axis).c_str(),
                        r.value, to_string(r.stability).c_str(),
                        r.outcome.c_str());
          out << buf;
        }
        all_diverged &= !report.rows.empty();
      }
      return all_diverged ? kExitDivergenceOnly : kExitOk;
    }
    std::vector<Scenario> scs = scenarios_from(o, golden->parsed());
    if (render->parsed()) {
      if (!o.format.empty() && o.format != "svg") {
        throw ConfigError("render only writes svg");
      }
      o.format = "svg";
    }
    override_outputs(scs, o);
    return run_many(std::move(scs), out_dir, golden->parsed() || render->parsed(), out);
  } catch (const ConfigError &e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_cli(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace coordcycle
