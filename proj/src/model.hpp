#ifndef COORDCYCLE_SRC_MODEL_HPP_
#define COORDCYCLE_SRC_MODEL_HPP_

#include <algorithm>
#include <cmath>

#include "coordcycle/fields.hpp"
#include "coordcycle/game.hpp"
#include "coordcycle/ode.hpp"

namespace coordcycle::detail {

// Active right-hand side. Smooth covers logit and replicator; the other three
// are the best response pieces: x > y, x < y, and motion along the diagonal.
enum class Mode { Smooth, Upper, Lower, Slide };

enum class XCoord { Raw, LogOdds };

inline double log_odds(double x) { return std::log(x) - std::log1p(-x); }

// Autonomous system over the state vector
//   N == 2: (x, y)
//   N == 5: (x, a, b, c, d)
// where the first component is x itself or its log-odds.
template <int N>
struct Model {
  static_assert(N == 2 || N == 5);
  using Vec = ode::Vector<N>;

  DynamicKind kind = DynamicKind::Logit;
  ModelParams params;
  XCoord xcoord = XCoord::Raw;

  double x_of(const Vec &u) const {
    if (xcoord == XCoord::LogOdds) return logistic(u[0]);
    return std::clamp(u[0], 0.0, 1.0);
  }

  double alignment_of(const Vec &u) const {
    if constexpr (N == 2) {
      return params.s;
    } else {
      return u[1] - u[2] - u[3] + u[4];
    }
  }

  double y_of(const Vec &u) const {
    if constexpr (N == 2) {
      return u[1];
    } else {
      return (u[4] - u[2]) / alignment_of(u);
    }
  }

  JointStated joint(const Vec &u) const { return {x_of(u), y_of(u)}; }

  PayoffMatrixd payoffs(const Vec &u) const {
    if constexpr (N == 5) {
      return make_payoff_matrix(u[1], u[2], u[3], u[4]);
    } else {
      return PayoffMatrixd::Zero();
    }
  }

  Vec initial(const JointStated &state) const {
    static_assert(N == 2);
    Vec u;
    u << encode_x(state.x), state.y;
    return u;
  }

  Vec initial(const PayoffMatrixd &m, double x) const {
    static_assert(N == 5);
    Vec u;
    u << encode_x(x), m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return u;
  }

  double encode_x(double x) const {
    return xcoord == XCoord::LogOdds ? log_odds(x) : x;
  }

  Vec rhs(const Vec &u, Mode mode) const {
    const double x = x_of(u);
    const double s = alignment_of(u);
    const JointStated state{x, y_of(u)};
    ModelParams p = params;
    p.s = s;

    double xdot = 0.0;
    switch (mode) {
      case Mode::Smooth:
        if (kind == DynamicKind::Logit) {
          xdot = logit_xdot(s, p.eta, state);
        } else if (xcoord == XCoord::LogOdds) {
          // d/dt log(x / (1 - x)) = xdot / (x (1 - x)) = s (x - y)
          xdot = payoff_difference(s, state);
        } else {
          xdot = replicator_xdot(s, state);
        }
        break;
      case Mode::Upper:
        xdot = 1.0 - x;
        break;
      case Mode::Lower:
        xdot = -x;
        break;
      case Mode::Slide:
        xdot = y_dot(p, x);
        break;
    }

    Vec out;
    if constexpr (N == 2) {
      out << xdot, y_dot(p, x);
    } else {
      const PayoffMatrixd rate = payoff_adjustment(payoffs(u), p, x);
      out << xdot, rate(0, 0), rate(0, 1), rate(1, 0), rate(1, 1);
    }
    return out;
  }
};

}  // namespace coordcycle::detail

#endif  // COORDCYCLE_SRC_MODEL_HPP_
