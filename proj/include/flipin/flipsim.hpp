#pragma once
// Continuous-time periodic FlipIt simulator with random phases, insider
// sampling, and the unknown-preference Monte-Carlo campaign.

#include <cstdint>
#include <vector>

#include "flipin/rng.hpp"
#include "flipin/verify.hpp"

namespace flipin {

enum class Player { Defender, Attacker };

const char* to_string(Player player);

struct FlipEvent {
  double time = 0.0;
  Player mover{};
};

struct Segment {
  double begin = 0.0;
  double end = 0.0;
  Player owner{};
};

struct OwnershipTimeline {
  double horizon = 0.0;
  std::vector<FlipEvent> events;    // chronological; ties attacker first
  std::vector<Segment> segments;    // partition of [0, horizon]
  double defender_fraction = 0.0;

  double defender_time() const { return defender_fraction * horizon; }
  Player owner_at(double time) const;
};

// Periodic strategy with random phase: each player flips at phase + k/rate,
// phase uniform on [0, 1/rate]. Ownership starts with the defender; a flip
// by the current owner keeps ownership; simultaneous flips resolve
// attacker-then-defender.
OwnershipTimeline simulate_flipit(double alpha, double beta, double horizon,
                                  std::uint64_t seed);

struct InsiderDraw {
  InsiderType type{};
  double gamma = 0.0;
};

// Type ~ categorical(theta1, 1-theta1-theta2, theta2) over
// (Malicious, Inadvertent, Corrupt). Malicious and corrupt insiders play
// their edge-case NE gamma at the campaign's sigma; inadvertent gamma is
// uniform on the open interval (0, gamma_max).
InsiderDraw sample_insider_type(const GameParameters& params, Rng& rng);

enum class CampaignStrategy {
  Bayesian,
  BasicMalicious,
  BasicInadvertent,
  BasicCorrupt,
};

const char* to_string(CampaignStrategy strategy);

struct CampaignConfig {
  GameParameters params;
  int n_runs = 0;
  CampaignStrategy strategy{};
  std::uint64_t master_seed = 0;
};

struct CampaignRun {
  int run = 0;
  InsiderDraw insider;
  double alpha = 0.0;
  double beta = 0.0;
  double benefit = 0.0;
  double cumulative = 0.0;
};

struct CampaignResult {
  CampaignStrategy strategy{};
  std::vector<CampaignRun> runs;
  double total = 0.0;
};

// Per-run insider draws depend only on (master_seed, run index), so the four
// strategies face identical draws when run with the same seed. Benefits are
// the analytic x(alpha,beta)(1-gamma) - C_D alpha; the timeline simulator is
// exercised separately to validate x. Throws NoEquilibriumError when the
// requested strategy tuple is unresolvable at these parameters.
CampaignResult run_campaign(const CampaignConfig& config,
                            Execution policy = Execution::Parallel);

// The 36-simulation insider assignment of experiment i in 1..4: the first
// 12/i sims of each block carry the block type (malicious / inadvertent /
// corrupt), the rest are uniform between the two non-block types. Alignment
// ratio is exactly 1/i.
std::vector<InsiderDraw> insider_schedule(const GameParameters& params,
                                          int experiment_index,
                                          std::uint64_t master_seed);

}  // namespace flipin
