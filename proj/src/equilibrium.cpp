#include "flipin/equilibrium.hpp"

#include <cmath>

#include "flipin/benefits.hpp"

namespace flipin {

const char* branch_id(EquilibriumBranch branch) {
  switch (branch) {
    case EquilibriumBranch::BneSlowGammaZero:
      return "bne-slow-gamma0";
    case EquilibriumBranch::BneSlowGammaMax:
      return "bne-slow-gamma-max";
    case EquilibriumBranch::BneFastGammaZero:
      return "bne-fast-gamma0";
    case EquilibriumBranch::BneFastGammaMax:
      return "bne-fast-gamma-max";
    case EquilibriumBranch::NeMaliciousSlowZero:
      return "ne-malicious-slow-gamma0";
    case EquilibriumBranch::NeMaliciousSlowMax:
      return "ne-malicious-slow-gamma-max";
    case EquilibriumBranch::NeMaliciousFastZero:
      return "ne-malicious-fast-gamma0";
    case EquilibriumBranch::NeMaliciousFastMax:
      return "ne-malicious-fast-gamma-max";
    case EquilibriumBranch::NeInadvertentSlow:
      return "ne-inadvertent-slow";
    case EquilibriumBranch::NeInadvertentFast:
      return "ne-inadvertent-fast";
    case EquilibriumBranch::NeCorruptSlow:
      return "ne-corrupt-slow";
    case EquilibriumBranch::NeCorruptFast:
      return "ne-corrupt-fast";
  }
  return "?";
}

const char* to_string(BenefitModel model) {
  switch (model) {
    case BenefitModel::Bayesian:
      return "bayesian";
    case BenefitModel::Malicious:
      return "malicious";
    case BenefitModel::Inadvertent:
      return "inadvertent";
    case BenefitModel::Corrupt:
      return "corrupt";
  }
  return "?";
}

AuxiliaryQuantities auxiliary_quantities(const StrategyProfile& profile,
                                         const GameParameters& params) {
  AuxiliaryQuantities aux;
  if (!(profile.beta > 0.0))
    throw DomainError("marginal defender value F needs beta > 0");
  if (!(profile.alpha > 0.0))
    throw DomainError("marginal attacker value K needs alpha > 0");
  const double x = control_fraction(profile.alpha, profile.beta);
  aux.marginal_defender =
      (1.0 - profile.gamma) / (2.0 * profile.beta) - params.c_defender;
  aux.marginal_insider =
      params.theta1 * (x - params.c_insider) +
      params.theta2 * (params.c_attacker_to_insider - params.c_insider);
  aux.marginal_attacker = 1.0 / (2.0 * profile.alpha) - params.c_attacker;
  return aux;
}

double bne_fast_bound(const GameParameters& params) {
  const double theta = params.theta_ratio();
  return (2.0 * theta - 2.0) * params.c_insider -
         2.0 * theta * params.c_attacker_to_insider + 2.0;
}

bool bne_existence_strip_holds(const GameParameters& params) {
  const double theta = params.theta_ratio();
  const double first = (theta + 1.0) * params.c_insider -
                       theta * params.c_attacker_to_insider;
  const double second = (theta - 1.0) * params.c_insider -
                        theta * params.c_attacker_to_insider;
  return first > 0.0 && first < 0.5 && second > -1.0 && second < -0.5;
}

namespace {

// The four tuple forms shared by the BNE and the edge-case NEs.
StrategyProfile slow_profile(const GameParameters& p, double gamma) {
  const double one_m = 1.0 - gamma;
  return {p.c_attacker * one_m * one_m / (2.0 * p.c_defender * p.c_defender),
          one_m / (2.0 * p.c_defender), gamma};
}

StrategyProfile fast_profile(const GameParameters& p, double gamma) {
  const double one_m = 1.0 - gamma;
  return {1.0 / (2.0 * p.c_attacker),
          p.c_defender / (2.0 * one_m * p.c_attacker * p.c_attacker), gamma};
}

struct BranchCandidate {
  EquilibriumBranch branch;
  Regime regime;
  StrategyProfile profile;
  bool satisfied;
  std::vector<ConditionFlag> conditions;
};

EquilibriumResult finish(const GameParameters& params,
                         const BranchCandidate& chosen, double sigma,
                         std::vector<ConditionFlag> audit) {
  EquilibriumResult result;
  result.profile = chosen.profile;
  result.branch = chosen.branch;
  result.sigma = sigma;
  result.regime = chosen.regime;
  result.conditions = std::move(audit);
  const bool regime_ok = chosen.regime == Regime::Slow
                             ? chosen.profile.alpha <= chosen.profile.beta
                             : chosen.profile.alpha > chosen.profile.beta;
  result.conditions.push_back(
      {"regime", regime_ok, chosen.profile.alpha - chosen.profile.beta});
  // Insider-marginal sign consistency is diagnostic only: the printed branch
  // conditions do not imply it everywhere (see the verification oracle).
  const AuxiliaryQuantities aux =
      auxiliary_quantities(chosen.profile, params);
  const bool wants_max = chosen.profile.gamma > 0.0;
  const bool h_ok = wants_max ? aux.marginal_insider > 0.0
                              : aux.marginal_insider < 0.0;
  result.conditions.push_back({"insider-marginal-sign", h_ok,
                               aux.marginal_insider});
  const bool bounds_ok = chosen.profile.alpha <= params.alpha_max &&
                         chosen.profile.beta <= params.beta_max &&
                         chosen.profile.gamma <= params.gamma_max;
  result.conditions.push_back({"within-bounds", bounds_ok, 0.0});
  return result;
}

std::optional<EquilibriumResult> pick_unique(
    const GameParameters& params, std::vector<BranchCandidate>& candidates,
    double sigma) {
  std::vector<ConditionFlag> audit;
  const BranchCandidate* chosen = nullptr;
  int hits = 0;
  for (const auto& cand : candidates) {
    for (const auto& flag : cand.conditions) audit.push_back(flag);
    if (cand.satisfied) {
      ++hits;
      chosen = &cand;
    }
  }
  if (hits == 0) return std::nullopt;
  if (hits > 1) {
    std::string ids;
    for (const auto& cand : candidates)
      if (cand.satisfied) ids += std::string(" ") + branch_id(cand.branch);
    throw DomainError("ambiguous branch conditions: more than one holds at "
                      "sigma=" + std::to_string(sigma) + ":" + ids);
  }
  return finish(params, *chosen, sigma, std::move(audit));
}

}  // namespace

std::optional<EquilibriumResult> solve_bne(const GameParameters& params) {
  params.validate();
  if (params.theta1 == 0.0 && params.theta2 == 0.0)
    throw DomainError("theta1 = theta2 = 0: use solve_ne_inadvertent");
  if (params.theta1 == 0.0 || params.theta2 == 0.0 ||
      params.theta1 + params.theta2 >= 1.0) {
    if (params.theta1 >= 1.0)
      throw DomainError("theta1 = 1: use solve_ne_malicious");
    if (params.theta2 >= 1.0)
      throw DomainError("theta2 = 1: use solve_ne_corrupt");
    throw DomainError(
        "belief pair outside the interior-belief hypothesis (theta1, theta2 > 0, "
        "theta1 + theta2 < 1): at most two insider preferences remain; "
        "use the edge-case solvers");
  }

  const double sigma = params.adcr();
  const double inv_sigma = 1.0 / sigma;
  const double gm = params.gamma_max;
  const double one_m = 1.0 - gm;
  const double theta = params.theta_ratio();
  const double slow_bound = (2.0 * theta + 2.0) * params.c_insider -
                            2.0 * theta * params.c_attacker_to_insider;
  const double fast_bound = bne_fast_bound(params);

  std::vector<BranchCandidate> candidates;
  {
    const bool c1 = sigma <= 1.0;
    const bool c2 = sigma < slow_bound;
    candidates.push_back({EquilibriumBranch::BneSlowGammaZero, Regime::Slow,
                          slow_profile(params, 0.0), c1 && c2,
                          {{"slow0:sigma<=1", c1, sigma},
                           {"slow0:sigma<slow-bound", c2, slow_bound}}});
  }
  {
    const bool c1 = sigma > slow_bound / one_m;
    const bool c2 = sigma <= 1.0 / one_m;
    candidates.push_back({EquilibriumBranch::BneSlowGammaMax, Regime::Slow,
                          slow_profile(params, gm), c1 && c2,
                          {{"slowm:sigma>slow-bound/(1-gm)", c1,
                            slow_bound / one_m},
                           {"slowm:sigma<=1/(1-gm)", c2, 1.0 / one_m}}});
  }
  {
    const bool c1 = sigma > 1.0;
    const bool c2 = inv_sigma > fast_bound;  // reciprocal form
    candidates.push_back({EquilibriumBranch::BneFastGammaZero, Regime::Fast,
                          fast_profile(params, 0.0), c1 && c2,
                          {{"fast0:sigma>1", c1, sigma},
                           {"fast0:1/sigma>D", c2, fast_bound}}});
  }
  {
    const bool c1 = sigma > 1.0 / one_m;
    const bool c2 = inv_sigma < one_m * fast_bound;  // reciprocal form
    candidates.push_back({EquilibriumBranch::BneFastGammaMax, Regime::Fast,
                          fast_profile(params, gm), c1 && c2,
                          {{"fastm:sigma>1/(1-gm)", c1, 1.0 / one_m},
                           {"fastm:1/sigma<(1-gm)D", c2,
                            one_m * fast_bound}}});
  }
  return pick_unique(params, candidates, sigma);
}

std::optional<EquilibriumResult> solve_ne_malicious(
    const GameParameters& params) {
  params.validate();
  const double sigma = params.adcr();
  const double inv_sigma = 1.0 / sigma;
  const double gm = params.gamma_max;
  const double one_m = 1.0 - gm;
  const double ci = params.c_insider;

  std::vector<BranchCandidate> candidates;
  {
    const bool c1 = sigma <= 1.0;
    const bool c2 = sigma < 2.0 * ci;
    candidates.push_back({EquilibriumBranch::NeMaliciousSlowZero, Regime::Slow,
                          slow_profile(params, 0.0), c1 && c2,
                          {{"m-slow0:sigma<=1", c1, sigma},
                           {"m-slow0:sigma<2CI", c2, 2.0 * ci}}});
  }
  {
    const bool c1 = sigma > 2.0 * ci / one_m;
    const bool c2 = sigma <= 1.0 / one_m;
    candidates.push_back({EquilibriumBranch::NeMaliciousSlowMax, Regime::Slow,
                          slow_profile(params, gm), c1 && c2,
                          {{"m-slowm:sigma>2CI/(1-gm)", c1, 2.0 * ci / one_m},
                           {"m-slowm:sigma<=1/(1-gm)", c2, 1.0 / one_m}}});
  }
  {
    const bool c1 = sigma > 1.0;
    const bool c2 = inv_sigma > 2.0 * (1.0 - ci);
    candidates.push_back({EquilibriumBranch::NeMaliciousFastZero, Regime::Fast,
                          fast_profile(params, 0.0), c1 && c2,
                          {{"m-fast0:sigma>1", c1, sigma},
                           {"m-fast0:1/sigma>2(1-CI)", c2,
                            2.0 * (1.0 - ci)}}});
  }
  {
    const bool c1 = sigma > 1.0 / one_m;
    const bool c2 = inv_sigma < 2.0 * (1.0 - ci) * one_m;
    candidates.push_back({EquilibriumBranch::NeMaliciousFastMax, Regime::Fast,
                          fast_profile(params, gm), c1 && c2,
                          {{"m-fastm:sigma>1/(1-gm)", c1, 1.0 / one_m},
                           {"m-fastm:1/sigma<2(1-CI)(1-gm)", c2,
                            2.0 * (1.0 - ci) * one_m}}});
  }
  return pick_unique(params, candidates, sigma);
}

EquilibriumResult solve_ne_inadvertent(const GameParameters& params,
                                       double gamma) {
  params.validate();
  if (!(gamma >= 0.0) || gamma >= 1.0)
    throw DomainError("inadvertent gamma must lie in [0, 1)");
  const double sigma = params.adcr();
  const double threshold = 1.0 / (1.0 - gamma);
  const bool slow = sigma <= threshold;

  BranchCandidate cand{slow ? EquilibriumBranch::NeInadvertentSlow
                            : EquilibriumBranch::NeInadvertentFast,
                       slow ? Regime::Slow : Regime::Fast,
                       slow ? slow_profile(params, gamma)
                            : fast_profile(params, gamma),
                       true,
                       {{"i:sigma<=1/(1-gamma)", slow, threshold}}};
  return finish(params, cand, sigma, cand.conditions);
}

EquilibriumResult solve_ne_corrupt(const GameParameters& params) {
  params.validate();  // rejects C_AI <= C_I
  const double sigma = params.adcr();
  const double gm = params.gamma_max;
  const double threshold = 1.0 / (1.0 - gm);
  const bool slow = sigma <= threshold;

  BranchCandidate cand{slow ? EquilibriumBranch::NeCorruptSlow
                            : EquilibriumBranch::NeCorruptFast,
                       slow ? Regime::Slow : Regime::Fast,
                       slow ? slow_profile(params, gm)
                            : fast_profile(params, gm),
                       true,
                       {{"c:sigma<=1/(1-gm)", slow, threshold}}};
  return finish(params, cand, sigma, cand.conditions);
}

BenefitPoint equilibrium_defender_benefit(const GameParameters& params,
                                          BenefitModel model,
                                          std::optional<double> gamma) {
  BenefitPoint point;
  point.sigma = params.adcr();

  std::optional<EquilibriumResult> result;
  try {
    switch (model) {
      case BenefitModel::Bayesian:
        result = solve_bne(params);
        break;
      case BenefitModel::Malicious:
        if (!(params.c_insider > 0.5 && params.c_insider < 1.0))
          throw DomainError(
              "malicious benefit guidance requires 1/2 < c_insider < 1");
        result = solve_ne_malicious(params);
        break;
      case BenefitModel::Inadvertent:
        if (!gamma)
          throw DomainError("inadvertent model needs a known gamma");
        result = solve_ne_inadvertent(params, *gamma);
        break;
      case BenefitModel::Corrupt:
        result = solve_ne_corrupt(params);
        break;
    }
  } catch (const DomainError& err) {
    const std::string what = err.what();
    if (what.rfind("ambiguous", 0) == 0) {
      point.note = "ambiguous";
      return point;
    }
    throw;
  }

  if (!result) {
    point.note = "no-branch";
    return point;
  }
  // Piecewise closed forms: exactly 0 in the slow regime, 1 - 1/sigma and
  // 1 - gamma - 1/sigma in the fast ones. Algebraically identical to
  // defender_benefit at the profile, but exact.
  point.value = result->regime == Regime::Slow
                    ? 0.0
                    : 1.0 - result->profile.gamma - 1.0 / point.sigma;
  point.note = branch_id(result->branch);
  return point;
}

}  // namespace flipin
