#include "coordcycle/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "coordcycle/ode.hpp"
#include "model.hpp"

namespace coordcycle {

std::string to_string(SlidingPolicy policy) {
  return policy == SlidingPolicy::EscapeImmediately ? "escape_immediately"
                                                    : "slide_to_boundary";
}

SlidingPolicy parse_sliding_policy(std::string_view name) {
  if (name == "escape_immediately") return SlidingPolicy::EscapeImmediately;
  if (name == "slide_to_boundary") return SlidingPolicy::SlideToBoundary;
  throw ConfigError("unknown sliding policy '" + std::string(name) + "'");
}

std::string to_string(BrMethod method) {
  return method == BrMethod::Analytic ? "analytic" : "numeric";
}

BrMethod parse_br_method(std::string_view name) {
  if (name == "analytic") return BrMethod::Analytic;
  if (name == "numeric") return BrMethod::Numeric;
  throw ConfigError("unknown best response method '" + std::string(name) +
                    "'");
}

std::string to_string(Region region) {
  return region == Region::SPlus ? "into_S_plus" : "into_S_minus";
}

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::MaxTime:
      return "max_time";
    case Termination::MaxCrossings:
      return "max_crossings";
    case Termination::Divergence:
      return "divergence";
    case Termination::SteadyState:
      return "steady_state";
  }
  return "unknown";
}

void validate(const IntegratorConfig &cfg) {
  auto positive = [](double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("integrator: ") + name +
                        " must be positive and finite");
    }
  };
  positive(cfg.rel_tol, "rel_tol");
  positive(cfg.abs_tol, "abs_tol");
  positive(cfg.event_tol, "event_tol");
  positive(cfg.max_time, "max_time");
  positive(cfg.diag_band, "diag_band");
  positive(cfg.y_max, "y_max");
  positive(cfg.max_step, "max_step");
  if (!(cfg.output_dt >= 0.0) || !std::isfinite(cfg.output_dt)) {
    throw ConfigError("integrator: output_dt must be non-negative");
  }
}

namespace {

using detail::Mode;
using detail::Model;
using detail::XCoord;

// Zero-crossing test between two consecutive values.
bool sign_change(double g0, double g1) {
  return (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0);
}

template <int N>
class NumericRun {
 public:
  using Vec = ode::Vector<N>;

  NumericRun(Model<N> model, const IntegratorConfig &cfg)
      : model_(std::move(model)), cfg_(cfg) {
    control_.rel_tol = cfg.rel_tol;
    control_.abs_tol = cfg.abs_tol;
    control_.max_step = cfg.max_step;
  }

  Trajectory run(const Vec &u0) {
    record(0.0, u0);
    if (std::abs(model_.y_of(u0)) > cfg_.y_max) {
      traj_.termination = Termination::Divergence;
      return std::move(traj_);
    }
    if (model_.kind == DynamicKind::BestResponse) {
      run_best_response(u0);
    } else {
      segment(Mode::Smooth, 0.0, u0, std::nullopt);
    }
    return std::move(traj_);
  }

 private:
  // Terminal event: stop once sign * g(u) drops to zero or below.
  struct Terminal {
    enum class Kind { Diagonal, SlideExit } kind;
    double sign;
    double target = 0.0;
  };

  enum class Stop { Time, Event, Diverged, Crossings };

  struct SegmentEnd {
    Stop why;
    double t;
    Vec u;
  };

  double diagonal_gap(const Vec &u) const {
    const JointStated j = model_.joint(u);
    return j.x - j.y;
  }

  double terminal_value(const Terminal &ev, const Vec &u) const {
    if (ev.kind == Terminal::Kind::Diagonal) return diagonal_gap(u);
    return model_.x_of(u) - ev.target;
  }

  ModelParams params_at(const Vec &u) const {
    ModelParams p = model_.params;
    p.s = model_.alignment_of(u);
    return p;
  }

  void record(double t, const Vec &u) {
    if (!traj_.samples.empty() && !(t > traj_.samples.back().t)) return;
    traj_.samples.push_back({t, model_.joint(u)});
    if constexpr (N == 5) traj_.payoffs.push_back(model_.payoffs(u));
  }

  void hold_until_end(const Vec &u) {
    record(cfg_.max_time, u);
    traj_.termination = Termination::SteadyState;
  }

  void run_best_response(Vec u) {
    double t = 0.0;
    const JointStated j0 = model_.joint(u);
    std::optional<Mode> mode;
    if (std::abs(j0.x - j0.y) <= cfg_.diag_band) {
      mode = leave_diagonal(t, u);
      if (!mode) return;
    } else {
      mode = j0.x > j0.y ? Mode::Upper : Mode::Lower;
    }
    for (;;) {
      const double sign = *mode == Mode::Upper ? 1.0 : -1.0;
      const SegmentEnd end =
          segment(*mode, t, u, Terminal{Terminal::Kind::Diagonal, sign});
      if (end.why != Stop::Event) return;
      t = end.t;
      u = end.u;
      const double x = model_.x_of(u);
      const DiagonalDeparture dep = br_departure(params_at(u), x, cfg_);
      const Region dir = dep.kind == DiagonalDeparture::Kind::Rest
                             ? (*mode == Mode::Upper ? Region::SMinus
                                                     : Region::SPlus)
                             : dep.branch;
      traj_.crossings.push_back({t, x, dir});
      if (traj_.crossings.size() >= cfg_.max_crossings) {
        traj_.termination = Termination::MaxCrossings;
        return;
      }
      mode = leave_diagonal(t, u);
      if (!mode) return;
    }
  }

  // Applies the diagonal selection policy at (t, u). Returns the branch to
  // continue on, or nothing when the run has ended (rest or time out).
  std::optional<Mode> leave_diagonal(double &t, Vec &u) {
    const DiagonalDeparture dep =
        br_departure(params_at(u), model_.x_of(u), cfg_);
    if (dep.kind == DiagonalDeparture::Kind::Rest) {
      hold_until_end(u);
      return std::nullopt;
    }
    if (dep.kind == DiagonalDeparture::Kind::Slide) {
      const double sign = model_.x_of(u) > dep.exit_x ? 1.0 : -1.0;
      const SegmentEnd end = segment(
          Mode::Slide, t, u,
          Terminal{Terminal::Kind::SlideExit, sign, dep.exit_x});
      if (end.why != Stop::Event) return std::nullopt;
      t = end.t;
      u = end.u;
    }
    return dep.branch == Region::SPlus ? Mode::Upper : Mode::Lower;
  }

  struct PendingEvent {
    double t;
    Vec u;
    bool diagonal;  // false: nullcline
    Region direction;
  };

  SegmentEnd segment(Mode mode, double t0, const Vec &u0,
                     std::optional<Terminal> terminal) {
    auto f = [&](const Vec &u) { return model_.rhs(u, mode); };
    ode::AdaptiveStepper<N> stepper(control_, t0, u0);
    const double dt = cfg_.output_dt;
    const double k = model_.params.k;

    while (stepper.t() < cfg_.max_time) {
      ode::AcceptedStep<N> st = stepper.advance(f, cfg_.max_time);
      if (model_.xcoord == XCoord::Raw) {
        const double excursion =
            std::max({-st.u1[0], st.u1[0] - 1.0, 0.0});
        traj_.max_boundary_violation =
            std::max(traj_.max_boundary_violation, excursion);
        if (excursion > 0.0) {
          st.u1[0] = std::clamp(st.u1[0], 0.0, 1.0);
          stepper.reset(st.t1, st.u1);
        }
      }
      const double h = st.t1 - st.t0;
      auto restep = [&](double tau) -> Vec {
        if (tau >= h) return st.u1;
        return ode::dormand_prince_step<N>(f, st.t0, st.u0, tau).next;
      };
      auto localize = [&](auto &&g) {
        return ode::locate_event(
            [&](double tau) { return g(restep(tau)); }, 0.0, h,
            cfg_.event_tol);
      };

      std::vector<PendingEvent> events;
      double t_stop = st.t1;
      std::optional<PendingEvent> stop_event;
      if (terminal) {
        const double g0 = terminal->sign * terminal_value(*terminal, st.u0);
        const double g1 = terminal->sign * terminal_value(*terminal, st.u1);
        if (g0 > 0.0 && g1 <= 0.0) {
          const double tau = localize(
              [&](const Vec &u) { return terminal_value(*terminal, u); });
          stop_event = PendingEvent{st.t0 + tau, restep(tau), false,
                                    Region::SPlus};
          t_stop = stop_event->t;
        }
      } else {
        const double g0 = diagonal_gap(st.u0);
        const double g1 = diagonal_gap(st.u1);
        if (sign_change(g0, g1)) {
          const double tau =
              localize([&](const Vec &u) { return diagonal_gap(u); });
          const Region dir =
              g1 > 0.0 ? Region::SPlus
                       : (g1 < 0.0 ? Region::SMinus
                                   : (g0 > 0.0 ? Region::SMinus
                                               : Region::SPlus));
          events.push_back({st.t0 + tau, restep(tau), true, dir});
        }
      }
      {
        auto nullcline_gap = [&](const Vec &u) { return model_.x_of(u) - k; };
        const double n0 = nullcline_gap(st.u0);
        const double n1 = nullcline_gap(st.u1);
        if (mode != Mode::Slide && sign_change(n0, n1)) {
          const double tau = localize(nullcline_gap);
          if (st.t0 + tau <= t_stop) {
            events.push_back(
                {st.t0 + tau, restep(tau), false, Region::SPlus});
          }
        }
      }
      std::sort(events.begin(), events.end(),
                [](const PendingEvent &a, const PendingEvent &b) {
                  return a.t < b.t;
                });

      double t_done = st.t0;
      auto flush_grid = [&](double until, bool inclusive) {
        if (dt <= 0.0) return;
        for (auto i = static_cast<long long>(std::floor(t_done / dt)) + 1;;
             ++i) {
          const double g = static_cast<double>(i) * dt;
          if (inclusive ? g > until : g >= until) break;
          if (g <= t_done) continue;
          record(g, g >= st.t1 ? st.u1 : Vec(st.dense(g)));
        }
      };

      for (const PendingEvent &ev : events) {
        flush_grid(ev.t, false);
        t_done = std::max(t_done, ev.t);
        if (!ev.diagonal) {
          traj_.nullcline_crossings.push_back({ev.t, model_.y_of(ev.u)});
          continue;
        }
        record(ev.t, ev.u);
        traj_.crossings.push_back({ev.t, model_.x_of(ev.u), ev.direction});
        if (traj_.crossings.size() >= cfg_.max_crossings) {
          traj_.termination = Termination::MaxCrossings;
          return {Stop::Crossings, ev.t, ev.u};
        }
      }

      if (stop_event) {
        flush_grid(stop_event->t, false);
        record(stop_event->t, stop_event->u);
        return {Stop::Event, stop_event->t, stop_event->u};
      }

      flush_grid(st.t1, true);
      if (dt <= 0.0 || st.t1 >= cfg_.max_time) record(st.t1, st.u1);
      if (std::abs(model_.y_of(st.u1)) > cfg_.y_max) {
        record(st.t1, st.u1);
        traj_.termination = Termination::Divergence;
        return {Stop::Diverged, st.t1, st.u1};
      }
    }
    traj_.termination = Termination::MaxTime;
    return {Stop::Time, stepper.t(), stepper.u()};
  }

  Model<N> model_;
  IntegratorConfig cfg_;
  ode::StepControl control_;
  Trajectory traj_;
};

XCoord coordinate_for(DynamicKind kind, double x0) {
  if (kind == DynamicKind::Replicator && x0 > 0.0 && x0 < 1.0) {
    return XCoord::LogOdds;
  }
  return XCoord::Raw;
}

void check_initial_x(double x0) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) {
    throw DomainError("initial population state must lie in [0, 1]");
  }
}

}  // namespace

Trajectory integrate(DynamicKind kind, const ModelParams &p,
                     const JointStated &init, const IntegratorConfig &cfg) {
  validate(p);
  validate(cfg);
  check_initial_x(init.x);
  if (kind == DynamicKind::BestResponse &&
      cfg.br_method == BrMethod::Analytic) {
    return br_integrate_analytic(p, init, cfg.max_crossings, cfg);
  }
  Model<2> model{kind, p, coordinate_for(kind, init.x)};
  const auto u0 = model.initial(init);
  return NumericRun<2>(model, cfg).run(u0);
}

Trajectory integrate_full_matrix(DynamicKind kind, const ModelParams &p,
                                 const PayoffMatrixd &initial, double x0,
                                 const IntegratorConfig &cfg) {
  const double s = alignment(initial);
  if (!(s > 0.0)) {
    throw ConfigError("full-matrix mode needs a positive alignment");
  }
  ModelParams reduced = p;
  reduced.s = s;
  validate(reduced);
  validate(cfg);
  check_initial_x(x0);
  Model<5> model{kind, reduced, coordinate_for(kind, x0)};
  const auto u0 = model.initial(initial, x0);
  return NumericRun<5>(model, cfg).run(u0);
}

}  // namespace coordcycle
