#include "coordcycle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace coordcycle {

std::string to_string(Stability stability) {
  switch (stability) {
    case Stability::Repelling:
      return "repelling";
    case Stability::Sink:
      return "sink";
    case Stability::CenterThreshold:
      return "center_threshold";
  }
  return "unknown";
}

JointStated steady_state(DynamicKind kind, const ModelParams &p) {
  validate(p);
  if (kind == DynamicKind::Logit) {
    return {p.k, p.k - p.eta / p.s * std::log(p.k / (1.0 - p.k))};
  }
  return {p.k, p.k};
}

double eta_star(const ModelParams &p) { return p.s * p.k * (1.0 - p.k); }

Eigen::Matrix2d jacobian_at_steady_state(DynamicKind kind,
                                         const ModelParams &p) {
  validate(p);
  const double v = p.k * (1.0 - p.k);
  Eigen::Matrix2d j;
  switch (kind) {
    case DynamicKind::Logit: {
      const double c = p.s * v / p.eta;
      j << c - 1.0, -c, p.r / p.s, 0.0;
      return j;
    }
    case DynamicKind::Replicator:
      j << p.s * v, -p.s * v, p.r / p.s, 0.0;
      return j;
    case DynamicKind::BestResponse:
      break;
  }
  throw Unsupported("best response is not differentiable at its steady state");
}

Eigen::Matrix2d numerical_jacobian(DynamicKind kind, const ModelParams &p,
                                   const JointStated &at, double h) {
  Eigen::Matrix2d j;
  const JointStated dx{h, 0.0};
  const JointStated dy{0.0, h};
  for (int col = 0; col < 2; ++col) {
    const JointStated d = col == 0 ? dx : dy;
    const Eigen::Vector2d fwd =
        smooth_field(kind, p, JointStated{at.x + d.x, at.y + d.y});
    const Eigen::Vector2d bwd =
        smooth_field(kind, p, JointStated{at.x - d.x, at.y - d.y});
    j.col(col) = (fwd - bwd) / (2.0 * h);
  }
  return j;
}

Stability classify_eigenvalues(
    const std::array<std::complex<double>, 2> &eigenvalues) {
  const double re = std::max(eigenvalues[0].real(), eigenvalues[1].real());
  if (std::abs(re) < kCenterWindow) return Stability::CenterThreshold;
  return re > 0.0 ? Stability::Repelling : Stability::Sink;
}

StabilityReport classify_stability(DynamicKind kind, const ModelParams &p) {
  StabilityReport report;
  report.steady_state = steady_state(kind, p);
  if (kind == DynamicKind::BestResponse) {
    report.classification = Stability::Repelling;
    return report;
  }
  const Eigen::Matrix2d j = jacobian_at_steady_state(kind, p);
  report.jacobian = j;
  report.eigenvalues = eigenvalues_2x2(j);
  report.classification = classify_eigenvalues(*report.eigenvalues);
  if (kind == DynamicKind::Logit) report.eta_star = eta_star(p);
  return report;
}

std::vector<double> crossing_values(const Trajectory &traj, Region entering) {
  std::vector<double> out;
  for (const CrossingEvent &c : traj.crossings) {
    if (c.direction == entering) out.push_back(c.x);
  }
  return out;
}

std::vector<double> crossing_amplitudes(const Trajectory &traj,
                                        const ModelParams &p,
                                        Region entering) {
  std::vector<double> out = crossing_values(traj, entering);
  for (double &v : out) v = std::abs(v - p.k);
  return out;
}

bool strictly_increasing(const std::vector<double> &values) {
  return std::adjacent_find(values.begin(), values.end(),
                            std::greater_equal<>()) == values.end();
}

namespace {

// Crossings crowd against x = 0 and x = 1, where gaps in x shrink even for
// spirals that grow without bound; gaps are measured in log-odds instead.
double separation(double a, double b) {
  if (a == b) return 0.0;
  const double la = std::log(a) - std::log1p(-a);
  const double lb = std::log(b) - std::log1p(-b);
  const double d = std::abs(lb - la);
  return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
}

bool settled(const std::vector<double> &v, double tol) {
  const double flat = 1e-3 * tol;
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double gap = separation(v[i - 1], v[i]);
    if (!(gap < tol)) return false;
    if (gap <= flat) continue;
    if (v[i] < v[i - 1]) up = false;
    if (v[i] > v[i - 1]) down = false;
  }
  return up || down;
}

std::vector<double> tail(const std::vector<double> &v, std::size_t K) {
  return {v.end() - static_cast<std::ptrdiff_t>(std::min(K, v.size())),
          v.end()};
}

}  // namespace

OrbitReport detect_orbit(const Trajectory &traj, const ModelParams &p,
                         double tol, std::size_t K, DynamicKind kind) {
  if (K < 2) throw ConfigError("orbit detection needs K >= 2");
  const std::vector<double> upper = crossing_values(traj, Region::SMinus);
  const std::vector<double> lower = crossing_values(traj, Region::SPlus);
  if (traj.crossings.size() < 2 * K || upper.size() < K || lower.size() < K) {
    throw InsufficientCrossings(
        "orbit detection needs " + std::to_string(K) +
        " crossings on each side, got " + std::to_string(upper.size()) +
        " upper and " + std::to_string(lower.size()) + " lower");
  }
  OrbitReport report;
  report.upper_tail = tail(upper, K);
  report.lower_tail = tail(lower, K);
  report.upper_limit = report.upper_tail.back();
  report.lower_limit = report.lower_tail.back();
  report.residual =
      std::max(std::abs(upper[upper.size() - 1] - upper[upper.size() - 2]),
               std::abs(lower[lower.size() - 1] - lower[lower.size() - 2]));
  report.converged =
      settled(report.upper_tail, tol) && settled(report.lower_tail, tol);
  if (kind == DynamicKind::BestResponse) {
    report.orbit_width_lower_bound = br_geometry(p).width();
  }
  return report;
}

LyapunovEvaluation lyapunov(const ModelParams &p, const JointStated &state) {
  const double x = state.x;
  const double y = state.y;
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("Lyapunov function needs 0 < x < 1");
  }
  if (!(p.r > 0.0)) throw DomainError("Lyapunov function needs r > 0");
  const double k = p.k;
  const double s = p.s;
  const double c0 = k / s * std::log(k) + (1.0 - k) / s * std::log1p(-k);
  LyapunovEvaluation out;
  out.value = s / (2.0 * p.r) * (y - k) * (y - k) - k / s * std::log(x) -
              (1.0 - k) / s * std::log1p(-x) + c0;
  const double dL_dx = -k / (s * x) + (1.0 - k) / (s * (1.0 - x));
  const double dL_dy = s / p.r * (y - k);
  out.time_derivative =
      dL_dx * replicator_xdot(s, state) + dL_dy * y_dot(p, x);
  return out;
}

double winding_number(const std::vector<Sample> &samples,
                      const JointStated &center) {
  double total = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double a0 = std::atan2(samples[i - 1].state.y - center.y,
                                 samples[i - 1].state.x - center.x);
    const double a1 = std::atan2(samples[i].state.y - center.y,
                                 samples[i].state.x - center.x);
    double d = a1 - a0;
    if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    if (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
    total += d;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace coordcycle
