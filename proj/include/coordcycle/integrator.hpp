#ifndef COORDCYCLE_INTEGRATOR_HPP_
#define COORDCYCLE_INTEGRATOR_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coordcycle/fields.hpp"
#include "coordcycle/game.hpp"

namespace coordcycle {

// What best response does when a solution sits on the diagonal strictly
// between alpha and beta (only reachable from on-diagonal initial states).
enum class SlidingPolicy { EscapeImmediately, SlideToBoundary };

enum class BrMethod { Analytic, Numeric };

std::string to_string(SlidingPolicy policy);
SlidingPolicy parse_sliding_policy(std::string_view name);
std::string to_string(BrMethod method);
BrMethod parse_br_method(std::string_view name);

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  // Crossing localization tolerance on x - y.
  double event_tol = 1e-10;
  double max_time = 100.0;
  std::size_t max_crossings = 10000;
  // Half-width of the band treated as "on the diagonal" for best response.
  double diag_band = 1e-9;
  SlidingPolicy sliding_policy = SlidingPolicy::EscapeImmediately;
  // Divergence guard on |y|.
  double y_max = 50.0;
  // Output grid spacing; 0 records every accepted step. The analytic best
  // response stepper falls back to 0.05 when this is 0.
  double output_dt = 0.0;
  double max_step = 1.0;
  BrMethod br_method = BrMethod::Analytic;

  friend bool operator==(const IntegratorConfig &,
                         const IntegratorConfig &) = default;
};

void validate(const IntegratorConfig &cfg);

// Region entered after a diagonal crossing. S+ is x > y, S- is x < y.
enum class Region { SPlus, SMinus };

std::string to_string(Region region);

struct CrossingEvent {
  double t = 0.0;
  double x = 0.0;
  Region direction = Region::SPlus;
};

// Crossing of the y-nullcline x = k.
struct NullclineEvent {
  double t = 0.0;
  double y = 0.0;
};

struct Sample {
  double t = 0.0;
  JointStated state;
};

enum class Termination { MaxTime, MaxCrossings, Divergence, SteadyState };

std::string to_string(Termination termination);

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<CrossingEvent> crossings;
  std::vector<NullclineEvent> nullcline_crossings;
  // Full-matrix mode only: payoff matrix at each sample.
  std::vector<PayoffMatrixd> payoffs;
  Termination termination = Termination::MaxTime;
  // Largest excursion of x outside [0, 1] before clamping.
  double max_boundary_violation = 0.0;

  bool diverged() const { return termination == Termination::Divergence; }
  bool full_matrix() const { return !payoffs.empty(); }
};

// Integrates the reduced (x, y) system. Best response uses the closed-form
// stepper unless cfg.br_method is Numeric; replicator runs from interior
// states are integrated in log-odds coordinates.
Trajectory integrate(DynamicKind kind, const ModelParams &p,
                     const JointStated &init, const IntegratorConfig &cfg);

// Evolves the payoff matrix itself. The alignment and indifference state are
// recomputed from the payoffs at every evaluation; p.s is ignored.
Trajectory integrate_full_matrix(DynamicKind kind, const ModelParams &p,
                                 const PayoffMatrixd &initial, double x0,
                                 const IntegratorConfig &cfg);

// Fixed-step RK4 reference. Best response switches branches at localized
// diagonal crossings. Samples are stored every `stride` steps plus the end.
Trajectory integrate_reference(DynamicKind kind, const ModelParams &p,
                               const JointStated &init, double step,
                               double t_end, std::size_t stride = 1000,
                               SlidingPolicy policy =
                                   SlidingPolicy::EscapeImmediately);

// First diagonal crossing of a best response solution that leaves `init`
// into `branch`. A and B are the coefficients of A - B t = exp(-t); they are
// NaN for starts on the x = 0 or x = 1 faces, where the solution rides the
// face and the crossing is solved directly.
struct BrCrossing {
  double t = 0.0;
  double x = 0.0;
  double A = 0.0;
  double B = 0.0;
  double residual = 0.0;
};

BrCrossing br_crossing_time(const ModelParams &p, const JointStated &init);
BrCrossing br_crossing_time(const ModelParams &p, const JointStated &init,
                            Region branch);

// Selection on the diagonal: rest at (k, k), slide along the diagonal, or
// leave into one region.
struct DiagonalDeparture {
  enum class Kind { Rest, Escape, Slide };
  Kind kind = Kind::Escape;
  Region branch = Region::SPlus;
  double slide_time = 0.0;
  double exit_x = 0.0;
};

DiagonalDeparture br_departure(const ModelParams &p, double x,
                               const IntegratorConfig &cfg);

// Closed-form best response run stopping after n_crossings, or earlier on
// cfg.max_time or the divergence guard.
Trajectory br_integrate_analytic(const ModelParams &p, const JointStated &init,
                                 std::size_t n_crossings,
                                 const IntegratorConfig &cfg);

// Same, limited by the crossing count alone. Requires r > 0.
Trajectory br_integrate_analytic(const ModelParams &p, const JointStated &init,
                                 std::size_t n_crossings);

}  // namespace coordcycle

#endif  // COORDCYCLE_INTEGRATOR_HPP_
