#ifndef COORDCYCLE_OUTPUT_HPP_
#define COORDCYCLE_OUTPUT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "coordcycle/fields.hpp"
#include "coordcycle/integrator.hpp"

namespace coordcycle {

// t,x,y (or t,x,y,a,b,c,d in full-matrix mode), 17 significant digits.
void write_trajectory_csv(const std::filesystem::path &path,
                          const Trajectory &traj);
// n,t,x,direction
void write_crossings_csv(const std::filesystem::path &path,
                         const Trajectory &traj);

// Samples (and payoffs, when present) of a file written by
// write_trajectory_csv.
Trajectory read_trajectory_csv(const std::filesystem::path &path);

std::string format_double(double v);

void write_text(const std::filesystem::path &path, const std::string &text);

struct PortraitTrace {
  const Trajectory *trajectory = nullptr;
  ModelParams params;
  std::string label;
};

struct RenderStyle {
  int width = 640;
  int height = 640;
  std::string title;
  std::size_t max_points = 4000;
};

std::string render_phase_portrait(const std::vector<PortraitTrace> &traces,
                                  DynamicKind kind,
                                  const RenderStyle &style = {});

std::string render_phase_portrait(const std::vector<Trajectory> &trajectories,
                                  const ModelParams &p, DynamicKind kind,
                                  const RenderStyle &style = {});

}  // namespace coordcycle

#endif  // COORDCYCLE_OUTPUT_HPP_
