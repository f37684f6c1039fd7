#ifndef COORDCYCLE_FIELDS_HPP_
#define COORDCYCLE_FIELDS_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "coordcycle/errors.hpp"
#include "coordcycle/game.hpp"

namespace coordcycle {

// Law of motion for the population state. The logit noise level lives in
// ModelParams::eta.
enum class DynamicKind { BestResponse, Logit, Replicator };

std::string to_string(DynamicKind kind);
DynamicKind parse_dynamic_kind(std::string_view name);

template <typename Scalar>
struct Interval {
  Scalar lo{};
  Scalar hi{};

  bool is_point() const { return lo == hi; }
  bool contains(Scalar v) const { return lo <= v && v <= hi; }
};

// Best response rate of change of x. On the diagonal the rate is the whole
// interval [-x, 1 - x]; selection is left to the integrator.
template <typename Scalar>
Interval<Scalar> br_xdot(const JointState<Scalar> &state) {
  const Scalar x = state.x;
  if (x > state.y) return {Scalar(1) - x, Scalar(1) - x};
  if (x < state.y) return {-x, -x};
  return {-x, Scalar(1) - x};
}

// Logistic function without overflow for any finite argument.
template <typename Scalar>
Scalar logistic(Scalar z) {
  using std::exp;
  if (z <= Scalar(0)) {
    const Scalar e = exp(z);
    return e / (Scalar(1) + e);
  }
  return Scalar(1) / (Scalar(1) + exp(-z));
}

template <typename Scalar>
Scalar logit_choice_probability(Scalar s, Scalar eta,
                                const JointState<Scalar> &state) {
  return logistic(payoff_difference(s, state) / eta);
}

template <typename Scalar>
Scalar logit_xdot(Scalar s, Scalar eta, const JointState<Scalar> &state) {
  return logit_choice_probability(s, eta, state) - state.x;
}

template <typename Scalar>
Scalar replicator_xdot(Scalar s, const JointState<Scalar> &state) {
  const Scalar x = std::clamp(state.x, Scalar(0), Scalar(1));
  return s * x * (Scalar(1) - x) * (x - state.y);
}

// Diagonal landing thresholds: trajectories leaving S+ return to the diagonal
// above beta, those leaving S- return below alpha.
struct BRGeometry {
  double alpha = 0.0;
  double beta = 1.0;
  double k = 0.5;

  double width() const { return beta - alpha; }
};

inline BRGeometry br_geometry(const ModelParams &p) {
  const double denom = p.s + p.r;
  return {p.r * p.k / denom, (p.s + p.r * p.k) / denom, p.k};
}

// Whether x = y can be held on the diagonal, i.e. the y rate lies inside the
// best response interval.
template <typename Scalar>
bool sliding_feasible(const ModelParams &p, Scalar x) {
  const Scalar rate = y_dot(p, x);
  return -x <= rate && rate <= Scalar(1) - x;
}

// (xdot, ydot) for the smooth dynamics. Throws Unsupported for best response.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> smooth_field(DynamicKind kind,
                                         const ModelParams &p,
                                         const JointState<Scalar> &state) {
  const Scalar s(p.s);
  Eigen::Matrix<Scalar, 2, 1> v;
  switch (kind) {
    case DynamicKind::Logit:
      v << logit_xdot(s, Scalar(p.eta), state), y_dot(p, state.x);
      return v;
    case DynamicKind::Replicator:
      v << replicator_xdot(s, state), y_dot(p, state.x);
      return v;
    case DynamicKind::BestResponse:
      break;
  }
  throw Unsupported("best response field is set-valued on the diagonal");
}

// The curve xdot = 0 written as y(x): the diagonal for best response and
// replicator, a logistic-shifted curve for logit. Requires 0 < x < 1 for logit.
template <typename Scalar>
Scalar x_nullcline(DynamicKind kind, const ModelParams &p, Scalar x) {
  using std::log;
  if (kind == DynamicKind::Logit) {
    return x - Scalar(p.eta) / Scalar(p.s) * log(x / (Scalar(1) - x));
  }
  return x;
}

}  // namespace coordcycle

#endif  // COORDCYCLE_FIELDS_HPP_
