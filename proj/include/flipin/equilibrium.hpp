#pragma once
// Closed-form BNE and edge-case NE solvers with branch-condition audit.

#include <optional>
#include <string>
#include <vector>

#include "flipin/params.hpp"

namespace flipin {

enum class EquilibriumBranch {
  BneSlowGammaZero,   // alpha<=beta, gamma*=0
  BneSlowGammaMax,    // alpha<=beta, gamma*=gamma_max
  BneFastGammaZero,   // alpha>beta,  gamma*=0
  BneFastGammaMax,    // alpha>beta,  gamma*=gamma_max
  NeMaliciousSlowZero,
  NeMaliciousSlowMax,
  NeMaliciousFastZero,
  NeMaliciousFastMax,
  NeInadvertentSlow,
  NeInadvertentFast,
  NeCorruptSlow,
  NeCorruptFast,
};

const char* branch_id(EquilibriumBranch branch);

enum class Regime { Slow, Fast };  // slow: alpha <= beta

struct ConditionFlag {
  std::string id;
  bool satisfied = false;
  double value = 0.0;  // the quantity the condition tested, for audit output
};

struct EquilibriumResult {
  StrategyProfile profile;
  EquilibriumBranch branch{};
  double sigma = 0.0;
  Regime regime{};
  std::vector<ConditionFlag> conditions;
};

// Marginal quantities whose zeros and signs select equilibrium branches.
// F and K need positive beta and alpha respectively.
struct AuxiliaryQuantities {
  double marginal_defender = 0.0;  // F = (1-gamma)/(2 beta) - C_D
  double marginal_insider = 0.0;   // H = th1 (x - C_I) + th2 (C_AI - C_I)
  double marginal_attacker = 0.0;  // K = 1/(2 alpha) - C_A
};

AuxiliaryQuantities auxiliary_quantities(const StrategyProfile& profile,
                                         const GameParameters& params);

// Bayesian solver. Requires theta1 > 0, theta2 > 0, theta1 + theta2 < 1;
// otherwise throws DomainError naming the applicable edge-case solver.
// Evaluates the four branch conditions (upper bounds of shape sigma < 1/D in
// reciprocal form 1/sigma > D, vacuously true for D <= 0). Returns the unique
// satisfied branch, empty when none holds, and throws DomainError when more
// than one condition holds (no silent pick). The returned audit flags include
// the regime inequality and the insider-marginal sign check; the latter is
// reported, not enforced, because the printed branch conditions do not imply
// it everywhere.
std::optional<EquilibriumResult> solve_bne(const GameParameters& params);

// Certain-malicious NE (theta1 = 1 edge). Empty when no branch applies.
std::optional<EquilibriumResult> solve_ne_malicious(
    const GameParameters& params);

// Certain-inadvertent NE for a known leak fraction gamma in [0, 1). Total:
// the two branch conditions cover every positive sigma.
EquilibriumResult solve_ne_inadvertent(const GameParameters& params,
                                       double gamma);

// Certain-corrupt NE (theta2 = 1 edge). Requires C_AI > C_I.
EquilibriumResult solve_ne_corrupt(const GameParameters& params);

enum class BenefitModel { Bayesian, Malicious, Inadvertent, Corrupt };

const char* to_string(BenefitModel model);

struct BenefitPoint {
  double sigma = 0.0;
  std::optional<double> value;  // empty: no branch defined at this sigma
  std::string note;             // branch id, "no-branch", or "ambiguous"
};

// Equilibrium defender benefit at the parameters' current sigma, by solving
// the model's game and evaluating the defender benefit at the profile (the
// piecewise closed forms 0 / 1 - 1/sigma / 1 - gamma - 1/sigma, exactly).
// Malicious mode requires 1/2 < C_I < 1; Bayesian-mode existence-strip
// violations are computed anyway (callers may warn).
BenefitPoint equilibrium_defender_benefit(const GameParameters& params,
                                          BenefitModel model,
                                          std::optional<double> gamma = {});

// Existence-strip checks for the Bayesian corollaries:
// 0 < (th+1) C_I - th C_AI < 1/2 and -1 < (th-1) C_I - th C_AI < -1/2.
bool bne_existence_strip_holds(const GameParameters& params);

// D = (2 th - 2) C_I - 2 th C_AI + 2, the printed fast-branch bound.
double bne_fast_bound(const GameParameters& params);

}  // namespace flipin
