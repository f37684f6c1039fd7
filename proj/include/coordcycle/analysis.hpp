#ifndef COORDCYCLE_ANALYSIS_HPP_
#define COORDCYCLE_ANALYSIS_HPP_

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coordcycle/fields.hpp"
#include "coordcycle/game.hpp"
#include "coordcycle/integrator.hpp"

namespace coordcycle {

enum class Stability { Repelling, Sink, CenterThreshold };

std::string to_string(Stability stability);

// Half-width of the band around zero real part labelled CenterThreshold.
inline constexpr double kCenterWindow = 1e-12;

struct StabilityReport {
  JointStated steady_state;
  // Absent for best response, which is not differentiable at (k, k).
  std::optional<Eigen::Matrix2d> jacobian;
  std::optional<std::array<std::complex<double>, 2>> eigenvalues;
  Stability classification = Stability::Repelling;
  std::optional<double> eta_star;
};

JointStated steady_state(DynamicKind kind, const ModelParams &p);

// Logit noise level at which the steady state changes stability.
double eta_star(const ModelParams &p);

Eigen::Matrix2d jacobian_at_steady_state(DynamicKind kind,
                                         const ModelParams &p);

// Central differences of the smooth field.
Eigen::Matrix2d numerical_jacobian(DynamicKind kind, const ModelParams &p,
                                   const JointStated &at, double h = 1e-6);

// Roots of lambda^2 - tr(J) lambda + det(J), larger real part first.
template <typename Derived>
std::array<std::complex<typename Derived::Scalar>, 2> eigenvalues_2x2(
    const Eigen::MatrixBase<Derived> &j) {
  using Scalar = typename Derived::Scalar;
  using Complex = std::complex<Scalar>;
  const Scalar tr = j.trace();
  const Scalar det = j.determinant();
  const Complex root = std::sqrt(Complex(tr * tr - Scalar(4) * det));
  return {(Complex(tr) + root) / Scalar(2), (Complex(tr) - root) / Scalar(2)};
}

Stability classify_eigenvalues(
    const std::array<std::complex<double>, 2> &eigenvalues);

StabilityReport classify_stability(DynamicKind kind, const ModelParams &p);

// Diagonal crossings split by the side of the orbit they lie on. Upper
// crossings leave S+ for S-, lower ones leave S- for S+.
std::vector<double> crossing_values(const Trajectory &traj, Region entering);

// |x - k| of the crossings on one side.
std::vector<double> crossing_amplitudes(const Trajectory &traj,
                                        const ModelParams &p,
                                        Region entering);

bool strictly_increasing(const std::vector<double> &values);

struct OrbitReport {
  bool converged = false;
  std::vector<double> upper_tail;
  std::vector<double> lower_tail;
  double upper_limit = 0.0;
  double lower_limit = 0.0;
  // Largest |x(t_{n+2}) - x(t_n)| over the two sides at the last crossings.
  double residual = 0.0;
  // beta - alpha, best response only.
  std::optional<double> orbit_width_lower_bound;
};

OrbitReport detect_orbit(const Trajectory &traj, const ModelParams &p,
                         double tol = 1e-6, std::size_t K = 5,
                         DynamicKind kind = DynamicKind::BestResponse);

struct LyapunovEvaluation {
  double value = 0.0;
  double time_derivative = 0.0;
};

// L for the replicator dynamic, with dL/dt built from its partial
// derivatives and the field.
LyapunovEvaluation lyapunov(const ModelParams &p, const JointStated &state);

// Net number of counterclockwise turns of the sample path around `center`.
double winding_number(const std::vector<Sample> &samples,
                      const JointStated &center);

}  // namespace coordcycle

#endif  // COORDCYCLE_ANALYSIS_HPP_
