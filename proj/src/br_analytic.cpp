#include <cmath>
#include <limits>

#include "coordcycle/integrator.hpp"

namespace coordcycle {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Default spacing of samples between crossings when output_dt is 0.
constexpr double kAnalyticOutputDt = 0.05;

// Largest root of A - B t = exp(-t) on (0, A/B]. The left-hand side minus
// the right is concave and negative at A/B, so Newton's method started there
// decreases monotonically onto the root.
double solve_crossing_equation(double A, double B) {
  if (!(A > 0.0 && B > 0.0) || !std::isfinite(A / B)) {
    throw InternalError("crossing equation is not bracketed");
  }
  double t = A / B;
  for (int iter = 0; iter < 200; ++iter) {
    const double e = std::exp(-t);
    const double g = A - B * t - e;
    const double dg = e - B;
    if (g == 0.0 || dg >= 0.0) break;
    const double next = t - g / dg;
    if (!(next < t)) break;
    t = next;
  }
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InternalError("crossing equation has no positive root");
  }
  return t;
}

struct Segment {
  enum class Kind { Upper, Lower, Slide, Rest } kind;
  JointStated start;
};

JointStated evaluate(const Segment &seg, const ModelParams &p, double tau) {
  const double q = p.r / p.s;
  const double x0 = seg.start.x;
  const double y0 = seg.start.y;
  switch (seg.kind) {
    case Segment::Kind::Upper: {
      const double em1 = std::expm1(-tau);  // e^{-tau} - 1
      return {1.0 - (1.0 - x0) * std::exp(-tau),
              q * (1.0 - p.k) * tau + q * (1.0 - x0) * em1 + y0};
    }
    case Segment::Kind::Lower: {
      const double em1 = std::expm1(-tau);
      return {x0 * std::exp(-tau), -q * p.k * tau - q * x0 * em1 + y0};
    }
    case Segment::Kind::Slide: {
      const double x = p.k + (x0 - p.k) * std::exp(q * tau);
      return {x, x};
    }
    case Segment::Kind::Rest:
      break;
  }
  return seg.start;
}

// Time at which x passes k inside a segment, if it does.
double nullcline_time(const Segment &seg, const ModelParams &p) {
  const double x0 = seg.start.x;
  if (seg.kind == Segment::Kind::Upper && x0 < p.k) {
    return std::log((1.0 - x0) / (1.0 - p.k));
  }
  if (seg.kind == Segment::Kind::Lower && x0 > p.k) {
    return std::log(x0 / p.k);
  }
  return kNaN;
}

class AnalyticRun {
 public:
  AnalyticRun(const ModelParams &p, const IntegratorConfig &cfg,
              std::size_t n_crossings)
      : p_(p),
        cfg_(cfg),
        n_crossings_(n_crossings),
        dt_(cfg.output_dt > 0.0 ? cfg.output_dt : kAnalyticOutputDt) {}

  Trajectory run(const JointStated &init) {
    emit(0.0, init);
    if (std::abs(init.y) > cfg_.y_max) {
      traj_.termination = Termination::Divergence;
      return std::move(traj_);
    }
    if (n_crossings_ == 0) {
      traj_.termination = Termination::MaxCrossings;
      return std::move(traj_);
    }
    double t = 0.0;
    Segment seg{Segment::Kind::Rest, init};
    if (std::abs(init.x - init.y) <= cfg_.diag_band) {
      if (!leave_diagonal(t, init, seg)) return std::move(traj_);
    } else {
      seg.kind = init.x > init.y ? Segment::Kind::Upper : Segment::Kind::Lower;
    }

    for (;;) {
      if (p_.r == 0.0) {
        // Frozen payoffs: the solution never returns to the diagonal.
        if (run_until(t, seg, cfg_.max_time)) {
          traj_.termination = Termination::MaxTime;
        }
        return std::move(traj_);
      }
      const Region branch = seg.kind == Segment::Kind::Upper ? Region::SPlus
                                                             : Region::SMinus;
      const BrCrossing c = br_crossing_time(p_, seg.start, branch);
      if (t + c.t > cfg_.max_time) {
        if (run_until(t, seg, cfg_.max_time)) {
          traj_.termination = Termination::MaxTime;
        }
        return std::move(traj_);
      }
      if (!run_until(t, seg, t + c.t, c.x)) return std::move(traj_);
      t += c.t;
      const JointStated landing{c.x, c.x};
      const DiagonalDeparture dep = br_departure(p_, c.x, cfg_);
      const Region dir = dep.kind == DiagonalDeparture::Kind::Rest
                             ? (branch == Region::SPlus ? Region::SMinus
                                                        : Region::SPlus)
                             : dep.branch;
      traj_.crossings.push_back({t, c.x, dir});
      if (traj_.crossings.size() >= n_crossings_) {
        traj_.termination = Termination::MaxCrossings;
        return std::move(traj_);
      }
      if (!leave_diagonal(t, landing, seg)) return std::move(traj_);
    }
  }

 private:
  // Chooses the next off-diagonal segment from a point on the diagonal,
  // sliding first when the policy asks for it. False when the run is over.
  bool leave_diagonal(double &t, const JointStated &at, Segment &seg) {
    const DiagonalDeparture dep = br_departure(p_, at.x, cfg_);
    if (dep.kind == DiagonalDeparture::Kind::Rest) {
      emit(cfg_.max_time, at);
      traj_.termination = Termination::SteadyState;
      return false;
    }
    JointStated start = at;
    if (dep.kind == DiagonalDeparture::Kind::Slide) {
      const Segment slide{Segment::Kind::Slide, at};
      if (t + dep.slide_time > cfg_.max_time) {
        if (run_until(t, slide, cfg_.max_time)) {
          traj_.termination = Termination::MaxTime;
        }
        return false;
      }
      if (!run_until(t, slide, t + dep.slide_time, dep.exit_x)) return false;
      t += dep.slide_time;
      start = {dep.exit_x, dep.exit_x};
    }
    seg = {dep.branch == Region::SPlus ? Segment::Kind::Upper
                                       : Segment::Kind::Lower,
           start};
    return true;
  }

  // Emits grid samples of `seg` (started at t0) up to t_end, then the end
  // point itself. When `diagonal_x` is given the end point is placed exactly
  // on the diagonal.
  bool run_until(double t0, const Segment &seg, double t_end,
                 double diagonal_x = kNaN) {
    const double t_null = nullcline_time(seg, p_);
    if (std::isfinite(t_null) && t0 + t_null <= t_end) {
      traj_.nullcline_crossings.push_back(
          {t0 + t_null, evaluate(seg, p_, t_null).y});
    }
    for (auto i = static_cast<long long>(std::floor(t0 / dt_)) + 1;; ++i) {
      const double g = static_cast<double>(i) * dt_;
      if (g >= t_end) break;
      if (g <= t0) continue;
      if (!emit(g, evaluate(seg, p_, g - t0))) return false;
    }
    const JointStated end = std::isnan(diagonal_x)
                                ? evaluate(seg, p_, t_end - t0)
                                : JointStated{diagonal_x, diagonal_x};
    return emit(t_end, end);
  }

  bool emit(double t, const JointStated &state) {
    if (!traj_.samples.empty() && !(t > traj_.samples.back().t)) return true;
    traj_.samples.push_back({t, state});
    if (std::abs(state.y) > cfg_.y_max) {
      traj_.termination = Termination::Divergence;
      return false;
    }
    return true;
  }

  ModelParams p_;
  IntegratorConfig cfg_;
  std::size_t n_crossings_;
  double dt_;
  Trajectory traj_;
};

}  // namespace

DiagonalDeparture br_departure(const ModelParams &p, double x,
                               const IntegratorConfig &cfg) {
  DiagonalDeparture dep;
  if (p.r == 0.0 || std::abs(x - p.k) <= cfg.diag_band) {
    dep.kind = DiagonalDeparture::Kind::Rest;
    return dep;
  }
  // Every exit follows the counterclockwise rotation: below k into S+,
  // above k into S-.
  dep.branch = x < p.k ? Region::SPlus : Region::SMinus;
  const BRGeometry geo = br_geometry(p);
  if (cfg.sliding_policy == SlidingPolicy::SlideToBoundary &&
      x > geo.alpha && x < geo.beta) {
    dep.kind = DiagonalDeparture::Kind::Slide;
    dep.exit_x = x < p.k ? geo.alpha : geo.beta;
    dep.slide_time = p.s / p.r * std::log((dep.exit_x - p.k) / (x - p.k));
    return dep;
  }
  dep.kind = DiagonalDeparture::Kind::Escape;
  return dep;
}

BrCrossing br_crossing_time(const ModelParams &p, const JointStated &init,
                            Region branch) {
  if (!(p.r > 0.0)) {
    throw DomainError("best response crossing requires r > 0");
  }
  const double x0 = init.x;
  const double y0 = init.y;
  if (!(x0 >= 0.0 && x0 <= 1.0)) {
    throw DomainError("population state must lie in [0, 1]");
  }
  const double q = p.r / p.s;
  BrCrossing out;
  if (branch == Region::SPlus) {
    if (x0 == 1.0) {
      // x stays at 1 while y climbs linearly to meet it.
      out = {(1.0 - y0) / (q * (1.0 - p.k)), 1.0, kNaN, kNaN, 0.0};
    } else {
      const double denom = (1.0 - x0) * (1.0 + q);
      out.A = (1.0 - y0 + q * (1.0 - x0)) / denom;
      out.B = q * (1.0 - p.k) / denom;
      out.t = solve_crossing_equation(out.A, out.B);
      out.x = 1.0 - (1.0 - x0) * std::exp(-out.t);
    }
  } else {
    if (x0 == 0.0) {
      out = {y0 / (q * p.k), 0.0, kNaN, kNaN, 0.0};
    } else {
      const double denom = x0 * (1.0 + q);
      out.A = (y0 + q * x0) / denom;
      out.B = q * p.k / denom;
      out.t = solve_crossing_equation(out.A, out.B);
      out.x = x0 * std::exp(-out.t);
    }
  }
  if (!(out.t > 0.0)) {
    throw InternalError("best response crossing time is not positive");
  }
  if (std::isfinite(out.A)) {
    out.residual = std::abs(out.A - out.B * out.t - std::exp(-out.t));
  }
  return out;
}

BrCrossing br_crossing_time(const ModelParams &p, const JointStated &init) {
  if (init.x == init.y) {
    throw DomainError(
        "initial state lies on the diagonal; the escape branch is ambiguous");
  }
  return br_crossing_time(p, init,
                          init.x > init.y ? Region::SPlus : Region::SMinus);
}

Trajectory br_integrate_analytic(const ModelParams &p, const JointStated &init,
                                 std::size_t n_crossings,
                                 const IntegratorConfig &cfg) {
  validate(p);
  validate(cfg);
  if (!(init.x >= 0.0 && init.x <= 1.0)) {
    throw DomainError("initial population state must lie in [0, 1]");
  }
  return AnalyticRun(p, cfg, n_crossings).run(init);
}

Trajectory br_integrate_analytic(const ModelParams &p, const JointStated &init,
                                 std::size_t n_crossings) {
  if (!(p.r > 0.0)) {
    throw DomainError("crossing-limited best response run requires r > 0");
  }
  IntegratorConfig cfg;
  cfg.max_time = std::numeric_limits<double>::max();
  return br_integrate_analytic(p, init, n_crossings, cfg);
}

}  // namespace coordcycle
