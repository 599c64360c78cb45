#pragma once
// Model parameters, strategy/type domains, and the flat key-value config
// format they travel in.

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace flipin {

// Parse/usage problems with config documents or CLI arguments.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition and hypothesis violations (invalid rates, edge-case routing,
// ambiguous branch conditions).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested strategy has no closed-form equilibrium at these parameters.
struct NoEquilibriumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InsiderType { Malicious, Inadvertent, Corrupt };

const char* to_string(InsiderType type);
InsiderType insider_type_from_string(const std::string& name);

// Full model instance: flip costs, insider costs/reward, beliefs, bounds.
struct GameParameters {
  double c_defender = 0.0;            // C_D, cost per defender flip
  double c_attacker = 0.0;            // C_A
  double c_insider = 0.0;             // C_I, unit insider effort cost
  double c_attacker_to_insider = 0.0; // C_AI, unit reward to a corrupt insider
  double theta1 = 0.0;                // P(insider malicious)
  double theta2 = 0.0;                // P(insider corrupt)
  double alpha_max = 0.0;             // defender rate bound
  double beta_max = 0.0;              // attacker rate bound
  double gamma_max = 0.0;             // theft-fraction bound, in (0,1)

  // Throws DomainError when an invariant is broken (C_AI <= C_I, beliefs
  // outside the simplex, gamma_max outside (0,1), non-positive costs/bounds).
  void validate() const;

  // Attack-defense cost ratio sigma = C_A / C_D. Requires c_defender > 0.
  double adcr() const;

  // theta = theta1 / theta2; defined only for theta2 > 0.
  double theta_ratio() const;

  double inadvertent_probability() const { return 1.0 - theta1 - theta2; }
};

// Defender/attacker move rates and insider theft fraction.
struct StrategyProfile {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Flat key-value document, one scalar per line: "key = value".
GameParameters parse_parameters(std::istream& in);
GameParameters load_parameters(const std::string& path);
std::string format_parameters(const GameParameters& params);

}  // namespace flipin
