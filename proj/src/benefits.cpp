#include "flipin/benefits.hpp"

namespace flipin {

double control_fraction(double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw DomainError("control_fraction: rates must be non-negative");
  if (beta == 0.0) return 1.0;  // attacker never moves; defender owns at t=0
  if (alpha == 0.0) return 0.0;
  if (alpha <= beta) return alpha / (2.0 * beta);
  return 1.0 - beta / (2.0 * alpha);
}

double defender_benefit(const StrategyProfile& profile,
                        const GameParameters& params) {
  const double x = control_fraction(profile.alpha, profile.beta);
  return x * (1.0 - profile.gamma) - params.c_defender * profile.alpha;
}

double attacker_benefit(const StrategyProfile& profile,
                        const GameParameters& params, InsiderType insider) {
  const double x = control_fraction(profile.alpha, profile.beta);
  double benefit = 1.0 - x - params.c_attacker * profile.beta;
  if (insider == InsiderType::Corrupt)
    benefit -= params.c_attacker_to_insider * profile.gamma;
  return benefit;
}

double insider_benefit(const StrategyProfile& profile,
                       const GameParameters& params, InsiderType insider) {
  switch (insider) {
    case InsiderType::Malicious: {
      const double x = control_fraction(profile.alpha, profile.beta);
      return profile.gamma * (x - params.c_insider);
    }
    case InsiderType::Inadvertent:
      return 0.0;  // non-strategic player, zero benefit by definition
    case InsiderType::Corrupt:
      return profile.gamma * (params.c_attacker_to_insider - params.c_insider);
  }
  return 0.0;
}

ExpectedBenefits expected_benefits(const StrategyProfile& profile,
                                   const GameParameters& params) {
  const double x = control_fraction(profile.alpha, profile.beta);
  ExpectedBenefits out;
  out.defender = x - params.c_defender * profile.alpha - x * profile.gamma;
  out.attacker = 1.0 - x - params.c_attacker * profile.beta -
                 params.theta2 * params.c_attacker_to_insider * profile.gamma;
  out.insider =
      params.theta1 * profile.gamma * (x - params.c_insider) +
      params.theta2 * profile.gamma *
          (params.c_attacker_to_insider - params.c_insider);
  return out;
}

}  // namespace flipin
