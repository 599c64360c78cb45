#include "flipin/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace flipin {

const char* to_string(InsiderType type) {
  switch (type) {
    case InsiderType::Malicious:
      return "malicious";
    case InsiderType::Inadvertent:
      return "inadvertent";
    case InsiderType::Corrupt:
      return "corrupt";
  }
  return "?";
}

InsiderType insider_type_from_string(const std::string& name) {
  if (name == "malicious") return InsiderType::Malicious;
  if (name == "inadvertent") return InsiderType::Inadvertent;
  if (name == "corrupt") return InsiderType::Corrupt;
  throw ConfigError("unknown insider type: " + name);
}

void GameParameters::validate() const {
  if (!(c_defender > 0.0) || !std::isfinite(c_defender))
    throw DomainError("c_defender must be a positive real");
  if (!(c_attacker > 0.0) || !std::isfinite(c_attacker))
    throw DomainError("c_attacker must be a positive real");
  if (!(c_insider > 0.0) || !std::isfinite(c_insider))
    throw DomainError("c_insider must be a positive real");
  if (!(c_attacker_to_insider > c_insider))
    throw DomainError(
        "c_attacker_to_insider must exceed c_insider (corrupt insider needs "
        "an incentive)");
  if (theta1 < 0.0 || theta2 < 0.0 || theta1 + theta2 > 1.0)
    throw DomainError("beliefs must satisfy theta1, theta2 >= 0 and "
                      "theta1 + theta2 <= 1");
  if (!(alpha_max > 0.0) || !(beta_max > 0.0))
    throw DomainError("strategy bounds alpha_max, beta_max must be positive");
  if (!(gamma_max > 0.0) || !(gamma_max < 1.0))
    throw DomainError("gamma_max must lie strictly inside (0, 1)");
}

double GameParameters::adcr() const {
  if (!(c_defender > 0.0))
    throw DomainError("adcr undefined: c_defender must be positive");
  return c_attacker / c_defender;
}

double GameParameters::theta_ratio() const {
  if (!(theta2 > 0.0))
    throw DomainError("theta ratio undefined: theta2 is zero; "
                      "use an edge-case solver");
  return theta1 / theta2;
}

namespace {

const char* const kKeys[] = {
    "c_defender", "c_attacker",  "c_insider", "c_attacker_to_insider",
    "theta1",     "theta2",      "alpha_max", "beta_max",
    "gamma_max",
};

double& field(GameParameters& p, const std::string& key) {
  if (key == "c_defender") return p.c_defender;
  if (key == "c_attacker") return p.c_attacker;
  if (key == "c_insider") return p.c_insider;
  if (key == "c_attacker_to_insider") return p.c_attacker_to_insider;
  if (key == "theta1") return p.theta1;
  if (key == "theta2") return p.theta2;
  if (key == "alpha_max") return p.alpha_max;
  if (key == "beta_max") return p.beta_max;
  if (key == "gamma_max") return p.gamma_max;
  throw ConfigError("unknown config key: " + key);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

GameParameters parse_parameters(std::istream& in) {
  GameParameters params;
  std::map<std::string, bool> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    double parsed = 0.0;
    try {
      std::size_t used = 0;
      parsed = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": cannot parse value for key '" + key + "'");
    }
    field(params, key) = parsed;
    seen[key] = true;
  }
  for (const char* key : kKeys) {
    if (!seen.count(key))
      throw ConfigError(std::string("config missing key: ") + key);
  }
  return params;
}

GameParameters load_parameters(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_parameters(in);
}

std::string format_parameters(const GameParameters& p) {
  std::ostringstream out;
  out.precision(17);
  out << "c_defender = " << p.c_defender << '\n'
      << "c_attacker = " << p.c_attacker << '\n'
      << "c_insider = " << p.c_insider << '\n'
      << "c_attacker_to_insider = " << p.c_attacker_to_insider << '\n'
      << "theta1 = " << p.theta1 << '\n'
      << "theta2 = " << p.theta2 << '\n'
      << "alpha_max = " << p.alpha_max << '\n'
      << "beta_max = " << p.beta_max << '\n'
      << "gamma_max = " << p.gamma_max << '\n';
  return out.str();
}

}  // namespace flipin
