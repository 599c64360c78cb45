#include "flipin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flipin/benefits.hpp"

namespace flipin {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool SigmaInterval::empty() const {
  if (lower > upper) return true;
  if (lower == upper) return lower_strict || upper_strict;
  return false;
}

bool SigmaInterval::contains(double sigma) const {
  if (empty()) return false;
  const bool above = lower_strict ? sigma > lower : sigma >= lower;
  const bool below = upper_strict ? sigma < upper : sigma <= upper;
  return above && below;
}

SigmaInterval SigmaInterval::intersect(const SigmaInterval& a,
                                       const SigmaInterval& b) {
  SigmaInterval out;
  if (a.lower > b.lower) {
    out.lower = a.lower;
    out.lower_strict = a.lower_strict;
  } else if (b.lower > a.lower) {
    out.lower = b.lower;
    out.lower_strict = b.lower_strict;
  } else {
    out.lower = a.lower;
    out.lower_strict = a.lower_strict || b.lower_strict;
  }
  if (a.upper < b.upper) {
    out.upper = a.upper;
    out.upper_strict = a.upper_strict;
  } else if (b.upper < a.upper) {
    out.upper = b.upper;
    out.upper_strict = b.upper_strict;
  } else {
    out.upper = a.upper;
    out.upper_strict = a.upper_strict || b.upper_strict;
  }
  return out;
}

std::string SigmaInterval::str() const {
  if (empty()) return "{}";
  std::ostringstream out;
  out.precision(10);
  out << (lower_strict ? '(' : '[') << lower << ", ";
  if (upper == kInf)
    out << "inf)";
  else
    out << upper << (upper_strict ? ')' : ']');
  return out.str();
}

bool SigmaSet::contains(double sigma) const {
  return std::any_of(pieces.begin(), pieces.end(),
                     [&](const SigmaInterval& p) { return p.contains(sigma); });
}

bool SigmaSet::empty() const {
  return std::all_of(pieces.begin(), pieces.end(),
                     [](const SigmaInterval& p) { return p.empty(); });
}

SigmaSet SigmaSet::intersect(const SigmaSet& other) const {
  SigmaSet out;
  for (const auto& a : pieces)
    for (const auto& b : other.pieces) {
      const SigmaInterval piece = SigmaInterval::intersect(a, b);
      if (!piece.empty()) out.pieces.push_back(piece);
    }
  return out;
}

std::string SigmaSet::str() const {
  if (empty()) return "{}";
  std::string out;
  for (const auto& piece : pieces) {
    if (piece.empty()) continue;
    if (!out.empty()) out += " u ";
    out += piece.str();
  }
  return out;
}

GameParameters params_at_sigma(const GameParameters& params, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  GameParameters p = params;
  p.c_defender = p.c_attacker / sigma;
  return p;
}

AdvantageIntervals advantage_intervals(const GameParameters& params) {
  params.validate();
  AdvantageIntervals out;
  const double theta = params.theta_ratio();
  const double gm = params.gamma_max;
  const double one_m = 1.0 - gm;
  const double ci = params.c_insider;
  const double slow_bound = (2.0 * theta + 2.0) * ci -
                            2.0 * theta * params.c_attacker_to_insider;
  const double d = bne_fast_bound(params);
  out.fast_bound = d;

  if (!(ci > 0.5 && ci < 1.0))
    out.warnings.push_back("hypothesis violated: c_insider outside (1/2, 1)");
  if (!bne_existence_strip_holds(params))
    out.warnings.push_back("hypothesis violated: BNE existence strip");

  // Upper bounds of shape 1/D in reciprocal form: vacuous (infinite) for
  // D <= 0. Lower bounds clamp at 0.
  const double upper = d > 0.0 ? 1.0 / d : kInf;

  SigmaInterval m1{std::max(0.0, slow_bound / one_m), 1.0, true, false};
  SigmaInterval m2{1.0 / (2.0 * (1.0 - ci) * one_m), upper, true, true};
  out.t_malicious.pieces = {m1, m2};

  out.t_inadvertent.pieces = {{1.0 / one_m, upper, true, true}};
  out.t_corrupt.pieces = {{1.0, upper, true, true}};

  out.intersection =
      out.t_malicious.intersect(out.t_inadvertent).intersect(out.t_corrupt);
  return out;
}

namespace {

// Fast-branch thresholds for the deterrence analysis: the fast-gamma0 branch
// lives on (1, 1/E) and the fast-gamma_max branch on (1/((1-gm)E), inf),
// with E = 2(1-C_I) for the malicious game and E = D for the Bayesian one.
double fast_zero_bound(const GameParameters& params, BenefitModel model) {
  if (model == BenefitModel::Malicious) return 2.0 * (1.0 - params.c_insider);
  return bne_fast_bound(params);
}

void check_hypothesis(const GameParameters& params, BenefitModel model) {
  if (model == BenefitModel::Malicious) {
    if (!(params.c_insider > 0.5 && params.c_insider < 1.0))
      throw DomainError("hypothesis violated: need 1/2 < c_insider < 1");
    return;
  }
  if (model == BenefitModel::Bayesian) {
    if (!bne_existence_strip_holds(params))
      throw DomainError("hypothesis violated: BNE existence strip "
                        "0 < (th+1)CI - th CAI < 1/2, "
                        "-1 < (th-1)CI - th CAI < -1/2");
    return;
  }
  throw DomainError("key points are defined for malicious and bayesian modes");
}

}  // namespace

KeyPoints key_points(const GameParameters& params, BenefitModel model,
                     double sigma_max) {
  params.validate();
  check_hypothesis(params, model);
  const double e = fast_zero_bound(params, model);
  const double one_m = 1.0 - params.gamma_max;

  KeyPoints points;
  points.a = {1.0 / e, 1.0 - e};
  points.b = {1.0 / (one_m * e), one_m * (1.0 - e)};
  const BenefitPoint at_max = equilibrium_defender_benefit(
      params_at_sigma(params, sigma_max), model);
  if (!at_max.value)
    throw DomainError("sigma_max falls where no branch is defined (" +
                      at_max.note + ")");
  points.c = {sigma_max, *at_max.value};
  return points;
}

SigmaRecommendation recommend_sigma(const GameParameters& params,
                                    BenefitModel model, double sigma_max,
                                    std::optional<double> gamma) {
  params.validate();
  if (model == BenefitModel::Inadvertent || model == BenefitModel::Corrupt) {
    (void)gamma;
    return {sigma_max, SigmaRationale::IncreasingInSigma};
  }
  const KeyPoints points = key_points(params, model, sigma_max);
  if (points.c.benefit > points.b.benefit)
    return {sigma_max, SigmaRationale::PointCAboveB};
  return {points.a.sigma, SigmaRationale::PointCBelowB};
}

GdtWitness gdt_witness(const GameParameters& params, BenefitModel model) {
  params.validate();
  check_hypothesis(params, model);
  const double e = fast_zero_bound(params, model);
  const double sup1 = 1.0 / e;                              // fast-gamma0 sup
  const double inf2 = 1.0 / ((1.0 - params.gamma_max) * e); // fast-gm inf

  // 5% offsets work on well-conditioned inputs but can cross sigma=1 or lose
  // the inequality near the hypothesis boundary; halve until valid.
  for (double offset = 0.05; offset > 1e-12; offset *= 0.5) {
    const double sigma1 = (1.0 - offset) * sup1;
    const double sigma2 = (1.0 + offset) * inf2;
    if (!(sigma1 > 1.0)) continue;
    const BenefitPoint b1 =
        equilibrium_defender_benefit(params_at_sigma(params, sigma1), model);
    const BenefitPoint b2 =
        equilibrium_defender_benefit(params_at_sigma(params, sigma2), model);
    if (!b1.value || !b2.value) continue;
    if (*b1.value > *b2.value)
      return {sigma1, sigma2, *b1.value, *b2.value, offset};
  }
  throw DomainError("no deterrence witness found (hypothesis boundary)");
}

StrategyCatalog strategy_catalog(const GameParameters& params, double gamma) {
  params.validate();
  if (!(gamma >= 0.0) || gamma >= 1.0)
    throw DomainError("catalog gamma must lie in [0, 1)");
  const double cd = params.c_defender;
  const double ca = params.c_attacker;
  const double one_m = 1.0 - gamma;
  StrategyCatalog cat;
  cat.slow_unscaled = {ca / (2.0 * cd * cd), 1.0 / (2.0 * cd)};
  cat.slow_scaled = {ca * one_m * one_m / (2.0 * cd * cd),
                     one_m / (2.0 * cd)};
  cat.fast_unscaled = {1.0 / (2.0 * ca), cd / (2.0 * ca * ca)};
  cat.fast_inflated = {1.0 / (2.0 * ca), cd / (2.0 * one_m * ca * ca)};
  return cat;
}

DominanceCheck dominance_check(const GameParameters& params, double gamma,
                               double gamma0) {
  const StrategyCatalog cat = strategy_catalog(params, gamma);
  if (gamma0 < 0.0 || gamma0 > params.gamma_max)
    throw DomainError("gamma0 must lie in [0, gamma_max]");

  const auto value = [&](const RateTuple& tuple) {
    return defender_benefit({tuple.alpha, tuple.beta, gamma0}, params);
  };

  DominanceCheck check;
  check.slow_scaled_value = value(cat.slow_scaled);
  check.slow_unscaled_value = value(cat.slow_unscaled);
  check.fast_unscaled_value = value(cat.fast_unscaled);
  check.fast_inflated_value = value(cat.fast_inflated);
  check.strict = gamma > 0.0;
  if (check.strict) {
    check.slow_holds = check.slow_scaled_value > check.slow_unscaled_value;
    check.fast_holds = check.fast_unscaled_value > check.fast_inflated_value;
  } else {
    check.slow_holds = check.slow_scaled_value >= check.slow_unscaled_value;
    check.fast_holds = check.fast_unscaled_value >= check.fast_inflated_value;
  }
  return check;
}

std::vector<CurvePoint> benefit_curve(const GameParameters& params,
                                      BenefitModel model,
                                      const std::vector<double>& sigma_grid,
                                      std::optional<double> gamma) {
  params.validate();
  if (sigma_grid.empty()) throw DomainError("sigma grid must be non-empty");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] > 0.0))
      throw DomainError("sigma grid values must be positive");
    if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1]))
      throw DomainError("sigma grid must be strictly increasing");
  }

  std::vector<CurvePoint> curve(sigma_grid.size());
  // Order-independent: each point is a pure function of its sigma.
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    const double sigma = sigma_grid[i];
    const GameParameters at = params_at_sigma(params, sigma);
    CurvePoint& point = curve[i];
    point.sigma = sigma;
    // No-insider baseline: two-player periodic NE benefit.
    point.baseline = sigma <= 1.0 ? 0.0 : 1.0 - 1.0 / sigma;
    const BenefitPoint bp = equilibrium_defender_benefit(at, model, gamma);
    point.benefit = bp.value;
    point.note = bp.note;
  }
  return curve;
}

}  // namespace flipin
