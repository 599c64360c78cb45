#include "flipin/verify.hpp"

#include <array>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flipin {

namespace {

enum Axis { kDefender = 0, kAttacker = 1, kInsider = 2 };

double axis_benefit(Axis axis, double value, const StrategyProfile& base,
                    const GameParameters& params,
                    const std::optional<InsiderType>& mode) {
  StrategyProfile p = base;
  switch (axis) {
    case kDefender:
      p.alpha = value;
      break;
    case kAttacker:
      p.beta = value;
      break;
    case kInsider:
      p.gamma = value;
      break;
  }
  if (!mode) {
    const ExpectedBenefits eb = expected_benefits(p, params);
    return axis == kDefender ? eb.defender
           : axis == kAttacker ? eb.attacker
                               : eb.insider;
  }
  switch (axis) {
    case kDefender:
      return defender_benefit(p, params);
    case kAttacker:
      return attacker_benefit(p, params, *mode);
    case kInsider:
      return insider_benefit(p, params, *mode);
  }
  return 0.0;
}

// Deterministic regardless of evaluation order: best gain wins, ties go to
// the smallest deviating strategy.
struct Best {
  double gain = -std::numeric_limits<double>::infinity();
  double strategy = 0.0;

  void consider(double g, double s) {
    if (g > gain || (g == gain && s < strategy)) {
      gain = g;
      strategy = s;
    }
  }
  void merge(const Best& other) { consider(other.gain, other.strategy); }
};

PlayerDeviation sweep_axis(Axis axis, double bound,
                           const StrategyProfile& candidate,
                           const GameParameters& params,
                           const std::optional<InsiderType>& mode,
                           double grid_step, Execution policy) {
  const double baseline =
      axis_benefit(axis,
                   axis == kDefender   ? candidate.alpha
                   : axis == kAttacker ? candidate.beta
                                       : candidate.gamma,
                   candidate, params, mode);
  const long points = static_cast<long>(std::floor(bound / grid_step));

  Best best;
  auto visit = [&](Best& acc, long k) {
    const double s = static_cast<double>(k) * grid_step;
    acc.consider(axis_benefit(axis, s, candidate, params, mode) - baseline, s);
  };

#ifdef _OPENMP
  if (policy == Execution::Parallel) {
    #pragma omp parallel
    {
      Best local;
      #pragma omp for schedule(static) nowait
      for (long k = 0; k <= points; ++k) visit(local, k);
      #pragma omp critical
      best.merge(local);
    }
  } else
#endif
  {
    (void)policy;
    for (long k = 0; k <= points; ++k) visit(best, k);
  }

  if (static_cast<double>(points) * grid_step < bound) {
    best.consider(axis_benefit(axis, bound, candidate, params, mode) - baseline,
                  bound);
  }
  return {best.gain, best.strategy};
}

}  // namespace

VerificationReport verify_equilibrium(const StrategyProfile& candidate,
                                      const GameParameters& params,
                                      std::optional<InsiderType> mode,
                                      double grid_step, double tolerance,
                                      Execution policy) {
  params.validate();
  if (!(grid_step > 0.0)) throw DomainError("grid_step must be positive");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");

  const std::array<double, 3> bounds{params.alpha_max, params.beta_max,
                                     params.gamma_max};
  for (double bound : bounds) {
    if (!(bound > 0.0))
      throw DomainError("degenerate strategy interval: zero-length axis");
    if (bound / grid_step < 100.0)
      throw DomainError("grid_step too coarse: each axis needs >= 100 points");
  }

  VerificationReport report;
  report.grid_step = grid_step;
  report.tolerance = tolerance;
  report.defender = sweep_axis(kDefender, bounds[0], candidate, params, mode,
                               grid_step, policy);
  report.attacker = sweep_axis(kAttacker, bounds[1], candidate, params, mode,
                               grid_step, policy);
  report.insider = sweep_axis(kInsider, bounds[2], candidate, params, mode,
                              grid_step, policy);
  report.verified = report.defender.gain <= tolerance &&
                    report.attacker.gain <= tolerance &&
                    report.insider.gain <= tolerance;
  return report;
}

}  // namespace flipin
