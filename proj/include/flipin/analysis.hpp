#pragma once
// Decision-guidance layer: benefit curves over sigma, key points, the
// deterrence witness, the four-tuple strategy catalog with its dominance
// comparisons, and the advantage intervals T_M / T_I / T_C.

#include <optional>
#include <string>
#include <vector>

#include "flipin/equilibrium.hpp"

namespace flipin {

// Half-open/closed interval of sigma values; upper may be +infinity.
struct SigmaInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool lower_strict = true;
  bool upper_strict = true;

  bool empty() const;
  bool contains(double sigma) const;
  static SigmaInterval intersect(const SigmaInterval& a,
                                 const SigmaInterval& b);
  std::string str() const;
};

// Union of at most two disjoint pieces (T_M has two).
struct SigmaSet {
  std::vector<SigmaInterval> pieces;

  bool contains(double sigma) const;
  bool empty() const;
  SigmaSet intersect(const SigmaSet& other) const;
  std::string str() const;
};

struct AdvantageIntervals {
  SigmaSet t_malicious;
  SigmaSet t_inadvertent;
  SigmaSet t_corrupt;
  SigmaSet intersection;
  double fast_bound = 0.0;  // printed D; upper bounds are 1/D, +inf for D<=0
  std::vector<std::string> warnings;
};

// Advantage-interval sets. Hypothesis violations (C_I outside (1/2,1), the
// existence strip) are reported as warnings, never hard errors.
AdvantageIntervals advantage_intervals(const GameParameters& params);

struct SigmaBenefitPoint {
  double sigma = 0.0;
  double benefit = 0.0;
};

struct KeyPoints {
  SigmaBenefitPoint a;  // fast-gamma0 branch supremum
  SigmaBenefitPoint b;  // fast-gamma_max branch infimum
  SigmaBenefitPoint c;  // (sigma_max, benefit(sigma_max))
};

// Malicious mode requires 1/2 < C_I < 1; Bayesian mode the existence strip.
KeyPoints key_points(const GameParameters& params, BenefitModel model,
                     double sigma_max);

enum class SigmaRationale {
  PointCAboveB,        // use sigma_max
  PointCBelowB,        // use the interior threshold
  IncreasingInSigma,   // inadvertent/corrupt: benefit monotone, use sigma_max
};

struct SigmaRecommendation {
  double sigma = 0.0;
  SigmaRationale rationale{};
};

SigmaRecommendation recommend_sigma(const GameParameters& params,
                                    BenefitModel model, double sigma_max,
                                    std::optional<double> gamma = {});

struct GdtWitness {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double benefit1 = 0.0;
  double benefit2 = 0.0;
  double offset = 0.0;  // relative distance from the branch thresholds
};

// Deterrence witness: sigma1 < sigma2 with benefit(sigma1) > benefit(sigma2),
// taken just inside the fast-gamma0 branch and just above the fast-gamma_max
// infimum. Starts at a 5% relative offset and halves it until the inequality
// and branch membership hold.
GdtWitness gdt_witness(const GameParameters& params, BenefitModel model);

struct RateTuple {
  double alpha = 0.0;
  double beta = 0.0;
};

// The four defender/attacker tuple forms every equilibrium reduces to.
struct StrategyCatalog {
  RateTuple slow_unscaled;  // (C_A/(2 C_D^2), 1/(2 C_D))
  RateTuple slow_scaled;    // ((1-g)^2 C_A/(2 C_D^2), (1-g)/(2 C_D))
  RateTuple fast_unscaled;  // (1/(2 C_A), C_D/(2 C_A^2))
  RateTuple fast_inflated;  // (1/(2 C_A), C_D/(2 (1-g) C_A^2))
};

StrategyCatalog strategy_catalog(const GameParameters& params, double gamma);

struct DominanceCheck {
  double slow_scaled_value = 0.0;
  double slow_unscaled_value = 0.0;
  double fast_unscaled_value = 0.0;
  double fast_inflated_value = 0.0;
  bool slow_holds = false;  // scaled beats unscaled (non-strict at gamma=0)
  bool fast_holds = false;  // unscaled beats inflated
  bool strict = false;      // comparisons strict (gamma > 0)
};

// Defender benefit at the four catalog tuples against insider play gamma0.
DominanceCheck dominance_check(const GameParameters& params, double gamma,
                               double gamma0);

struct CurvePoint {
  double sigma = 0.0;
  std::optional<double> benefit;
  double baseline = 0.0;  // no-insider benefit at this sigma
  std::string note;
};

// Per-sigma equilibrium defender benefit, varying sigma by C_D = C_A/sigma
// with C_A fixed. Grid must be strictly increasing and positive.
std::vector<CurvePoint> benefit_curve(const GameParameters& params,
                                      BenefitModel model,
                                      const std::vector<double>& sigma_grid,
                                      std::optional<double> gamma = {});

// Copy of params with sigma realized via C_D = C_A / sigma.
GameParameters params_at_sigma(const GameParameters& params, double sigma);

}  // namespace flipin
