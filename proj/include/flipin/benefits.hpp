#pragma once
// Control-fraction math and the per-type / expected benefit functions.

#include "flipin/params.hpp"

namespace flipin {

// Long-run fraction of time the defender owns the resource under periodic
// strategies with random phase. Piecewise: alpha/(2 beta) when alpha <= beta,
// 1 - beta/(2 alpha) otherwise; continuous at alpha = beta. Edge cases:
// beta = 0 -> 1 (defender keeps initial ownership), alpha = 0, beta > 0 -> 0.
double control_fraction(double alpha, double beta);

double defender_benefit(const StrategyProfile& profile,
                        const GameParameters& params);

double attacker_benefit(const StrategyProfile& profile,
                        const GameParameters& params, InsiderType insider);

double insider_benefit(const StrategyProfile& profile,
                       const GameParameters& params, InsiderType insider);

struct ExpectedBenefits {
  double defender = 0.0;
  double attacker = 0.0;
  double insider = 0.0;
};

// Belief-weighted benefits under the diagonal type distribution.
ExpectedBenefits expected_benefits(const StrategyProfile& profile,
                                   const GameParameters& params);

}  // namespace flipin
