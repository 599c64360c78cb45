#pragma once
// Brute-force best-response verification oracle: grid-sweeps each player's
// strategy axis with the others held at the candidate and records the worst
// improvement. Independent of the closed-form solvers by construction.

#include <optional>

#include "flipin/benefits.hpp"

namespace flipin {

enum class Execution { Serial, Parallel };

struct PlayerDeviation {
  double gain = 0.0;      // best improvement found over the candidate
  double strategy = 0.0;  // deviating strategy value achieving it
};

struct VerificationReport {
  bool verified = false;
  PlayerDeviation defender;
  PlayerDeviation attacker;
  PlayerDeviation insider;
  double tolerance = 0.0;
  double grid_step = 0.0;
};

// mode: empty optional = Bayesian (expected benefits); a concrete InsiderType
// = per-type benefits for that realized game. grid_step must give every axis
// at least 100 points; degenerate (zero-length) axes are rejected.
// The parallel path gives bit-identical reports to the serial one.
VerificationReport verify_equilibrium(const StrategyProfile& candidate,
                                      const GameParameters& params,
                                      std::optional<InsiderType> mode,
                                      double grid_step, double tolerance,
                                      Execution policy = Execution::Parallel);

}  // namespace flipin
