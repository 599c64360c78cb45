#include "flipin/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace flipin {

using nlohmann::json;

const char* const kArtifactVersion = "0.1.0";

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

namespace {

json params_json(const GameParameters& p) {
  return json{{"c_defender", p.c_defender},
              {"c_attacker", p.c_attacker},
              {"c_insider", p.c_insider},
              {"c_attacker_to_insider", p.c_attacker_to_insider},
              {"theta1", p.theta1},
              {"theta2", p.theta2},
              {"alpha_max", p.alpha_max},
              {"beta_max", p.beta_max},
              {"gamma_max", p.gamma_max}};
}

}  // namespace

std::string manifest_json(const RunManifest& manifest) {
  json j{{"command", manifest.command},
         {"parameters", params_json(manifest.params)},
         {"master_seed", manifest.master_seed},
         {"artifact_version", manifest.artifact_version},
         {"output_paths", manifest.output_paths}};
  return j.dump(2) + "\n";
}

std::string equilibrium_json(const EquilibriumResult& result) {
  json conditions = json::array();
  for (const auto& flag : result.conditions)
    conditions.push_back(
        {{"id", flag.id}, {"satisfied", flag.satisfied}, {"value", flag.value}});
  json j{{"alpha", result.profile.alpha},
         {"beta", result.profile.beta},
         {"gamma", result.profile.gamma},
         {"branch", branch_id(result.branch)},
         {"sigma", result.sigma},
         {"regime", result.regime == Regime::Slow ? "slow" : "fast"},
         {"conditions", conditions}};
  return j.dump(2) + "\n";
}

std::string verification_json(const VerificationReport& report) {
  json j{{"verified", report.verified},
         {"tolerance", report.tolerance},
         {"grid_step", report.grid_step},
         {"defender", {{"gain", report.defender.gain},
                       {"at", report.defender.strategy}}},
         {"attacker", {{"gain", report.attacker.gain},
                       {"at", report.attacker.strategy}}},
         {"insider", {{"gain", report.insider.gain},
                      {"at", report.insider.strategy}}}};
  return j.dump(2) + "\n";
}

std::string curve_csv(const std::vector<CurvePoint>& curve,
                      const std::string& model) {
  std::string out = "sigma,benefit,model,defined,baseline,note\n";
  for (const auto& point : curve) {
    out += format_double(point.sigma);
    out += ',';
    out += point.benefit ? format_double(*point.benefit) : "";
    out += ',';
    out += model;
    out += ',';
    out += point.benefit ? '1' : '0';
    out += ',';
    out += format_double(point.baseline);
    out += ',';
    out += point.note;
    out += '\n';
  }
  return out;
}

std::string intervals_json(const AdvantageIntervals& intervals) {
  const auto set_json = [](const SigmaSet& set) {
    json pieces = json::array();
    for (const auto& piece : set.pieces) {
      if (piece.empty()) continue;
      pieces.push_back({{"lower", piece.lower},
                        {"upper", piece.upper},
                        {"lower_strict", piece.lower_strict},
                        {"upper_strict", piece.upper_strict}});
    }
    return pieces;
  };
  json j{{"t_malicious", set_json(intervals.t_malicious)},
         {"t_inadvertent", set_json(intervals.t_inadvertent)},
         {"t_corrupt", set_json(intervals.t_corrupt)},
         {"intersection", set_json(intervals.intersection)},
         {"fast_bound", intervals.fast_bound},
         {"warnings", intervals.warnings}};
  return j.dump(2) + "\n";
}

std::string campaign_csv(const std::vector<CampaignResult>& results) {
  std::string out = "run,insider_type,gamma,strategy,benefit,cumulative\n";
  for (const auto& result : results) {
    for (const auto& run : result.runs) {
      out += std::to_string(run.run);
      out += ',';
      out += to_string(run.insider.type);
      out += ',';
      out += format_double(run.insider.gamma);
      out += ',';
      out += to_string(result.strategy);
      out += ',';
      out += format_double(run.benefit);
      out += ',';
      out += format_double(run.cumulative);
      out += '\n';
    }
  }
  return out;
}

std::string timeline_csv(const OwnershipTimeline& timeline) {
  std::string out = "time,mover\n";
  for (const auto& event : timeline.events) {
    out += format_double(event.time);
    out += ',';
    out += to_string(event.mover);
    out += '\n';
  }
  return out;
}

std::string rse_csv(const std::vector<RseExperimentResult>& results) {
  std::string out =
      "sim,insider_type,gamma,strategy,u_d,rmse,cum_u_d,cum_rmse\n";
  for (const auto& result : results) {
    for (const auto& record : result.sims) {
      out += std::to_string(record.sim);
      out += ',';
      out += to_string(record.insider.type);
      out += ',';
      out += format_double(record.insider.gamma);
      out += ',';
      out += to_string(result.kind);
      out += ',';
      out += format_double(record.u_d);
      out += ',';
      out += format_double(record.rmse);
      out += ',';
      out += format_double(record.cum_u_d);
      out += ',';
      out += format_double(record.cum_rmse);
      out += '\n';
    }
  }
  return out;
}

std::string rse_totals_json(const std::vector<RseExperimentResult>& results) {
  json j = json::object();
  for (const auto& result : results) {
    json entry{{"experiment", result.experiment_index},
               {"total_u_d", result.total_u_d},
               {"total_rmse", result.total_rmse}};
    j[to_string(result.kind)] = entry;
  }
  if (results.size() == 2) {
    j["difference"] = {
        {"u_d", results[1].total_u_d - results[0].total_u_d},
        {"rmse", results[1].total_rmse - results[0].total_rmse}};
  }
  return j.dump(2) + "\n";
}

}  // namespace flipin
