#include <algorithm>
#include <cmath>
#include <optional>

#include "coordcycle/integrator.hpp"
#include "coordcycle/ode.hpp"
#include "model.hpp"

namespace coordcycle {

namespace {

using detail::Mode;
using Vec = ode::Vector<2>;

constexpr double kReferenceEventTol = 1e-14;

class ReferenceRun {
 public:
  ReferenceRun(DynamicKind kind, const ModelParams &p, double step,
               double t_end, std::size_t stride, SlidingPolicy policy)
      : model_{kind, p, detail::XCoord::Raw},
        step_(step),
        t_end_(t_end),
        stride_(stride == 0 ? 1 : stride) {
    cfg_.sliding_policy = policy;
    cfg_.max_time = t_end;
  }

  Trajectory run(const JointStated &init) {
    Vec u = model_.initial(init);
    traj_.samples.push_back({0.0, init});
    double t = 0.0;
    Mode mode = Mode::Smooth;
    std::optional<double> slide_exit;
    if (model_.kind == DynamicKind::BestResponse) {
      if (init.x == init.y) {
        if (!depart(u, mode, slide_exit)) return finish(t_end_, u);
      } else {
        mode = init.x > init.y ? Mode::Upper : Mode::Lower;
      }
    }

    std::size_t count = 0;
    while (t < t_end_) {
      double h = std::min(step_, t_end_ - t);
      if (t_end_ - (t + h) < 1e-3 * step_) h = t_end_ - t;
      auto f = [&](const Vec &v) { return model_.rhs(v, mode); };
      Vec next = ode::rk4_step<2>(f, u, h);
      clamp(next);

      if (mode != Mode::Smooth) {
        auto gap = [&](const Vec &v) {
          return slide_exit ? v[0] - *slide_exit : v[0] - v[1];
        };
        const double sign = slide_exit ? (u[0] > *slide_exit ? 1.0 : -1.0)
                                       : (mode == Mode::Upper ? 1.0 : -1.0);
        if (sign * gap(u) > 0.0 && sign * gap(next) <= 0.0) {
          const double tau = ode::locate_event(
              [&](double s) { return gap(ode::rk4_step<2>(f, u, s)); }, 0.0,
              h, kReferenceEventTol);
          u = ode::rk4_step<2>(f, u, tau);
          clamp(u);
          t += tau;
          traj_.samples.push_back({t, model_.joint(u)});
          if (slide_exit) {
            slide_exit.reset();
            mode = u[0] < model_.params.k ? Mode::Upper : Mode::Lower;
            continue;
          }
          const Region from = mode == Mode::Upper ? Region::SPlus
                                                  : Region::SMinus;
          traj_.crossings.push_back(
              {t, u[0], from == Region::SPlus ? Region::SMinus : Region::SPlus});
          if (!depart(u, mode, slide_exit)) return finish(t_end_, u);
          if (mode != Mode::Slide) {
            traj_.crossings.back().direction =
                mode == Mode::Upper ? Region::SPlus : Region::SMinus;
          }
          continue;
        }
      }
      u = next;
      t += h;
      if (++count % stride_ == 0 && t < t_end_) {
        traj_.samples.push_back({t, model_.joint(u)});
      }
    }
    return finish(t_end_, u);
  }

 private:
  void clamp(Vec &v) {
    const double excursion = std::max({-v[0], v[0] - 1.0, 0.0});
    traj_.max_boundary_violation =
        std::max(traj_.max_boundary_violation, excursion);
    v[0] = std::clamp(v[0], 0.0, 1.0);
  }

  bool depart(const Vec &u, Mode &mode, std::optional<double> &slide_exit) {
    const DiagonalDeparture dep = br_departure(model_.params, u[0], cfg_);
    if (dep.kind == DiagonalDeparture::Kind::Rest) return false;
    if (dep.kind == DiagonalDeparture::Kind::Slide) {
      mode = Mode::Slide;
      slide_exit = dep.exit_x;
      return true;
    }
    mode = dep.branch == Region::SPlus ? Mode::Upper : Mode::Lower;
    return true;
  }

  Trajectory finish(double t, const Vec &u) {
    if (traj_.samples.back().t < t) traj_.samples.push_back({t, model_.joint(u)});
    return std::move(traj_);
  }

  detail::Model<2> model_;
  double step_;
  double t_end_;
  std::size_t stride_;
  IntegratorConfig cfg_;
  Trajectory traj_;
};

}  // namespace

Trajectory integrate_reference(DynamicKind kind, const ModelParams &p,
                               const JointStated &init, double step,
                               double t_end, std::size_t stride,
                               SlidingPolicy policy) {
  validate(p);
  if (!(step > 0.0) || !(t_end > 0.0)) {
    throw ConfigError("reference integrator needs positive step and horizon");
  }
  if (!(init.x >= 0.0 && init.x <= 1.0)) {
    throw DomainError("initial population state must lie in [0, 1]");
  }
  return ReferenceRun(kind, p, step, t_end, stride, policy).run(init);
}

}  // namespace coordcycle
