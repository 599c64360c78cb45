#pragma once
// Output plumbing: full-precision number formatting, CSV/JSON emission for
// the CLI, run manifests, atomic file writes.

#include <cstdint>
#include <string>
#include <vector>

#include "flipin/analysis.hpp"
#include "flipin/flipsim.hpp"
#include "flipin/rse.hpp"
#include "flipin/verify.hpp"

namespace flipin {

// 17 significant digits; round-trips doubles exactly.
std::string format_double(double value);

// Write-then-rename so readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

struct RunManifest {
  std::string command;
  GameParameters params;
  std::uint64_t master_seed = 0;
  std::string artifact_version;
  std::vector<std::string> output_paths;
};

std::string manifest_json(const RunManifest& manifest);

std::string equilibrium_json(const EquilibriumResult& result);
std::string verification_json(const VerificationReport& report);

std::string curve_csv(const std::vector<CurvePoint>& curve,
                      const std::string& model);
std::string intervals_json(const AdvantageIntervals& intervals);

std::string campaign_csv(const std::vector<CampaignResult>& results);
std::string timeline_csv(const OwnershipTimeline& timeline);

std::string rse_csv(const std::vector<RseExperimentResult>& results);
std::string rse_totals_json(const std::vector<RseExperimentResult>& results);

extern const char* const kArtifactVersion;

}  // namespace flipin
