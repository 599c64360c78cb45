#include "flipin/flipsim.hpp"

#include <algorithm>
#include <cmath>

#include "flipin/equilibrium.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flipin {

namespace {
// Stream tags keep a run's independent random purposes decoupled.
constexpr std::uint64_t kInsiderDrawTag = 0x11;
constexpr std::uint64_t kScheduleTag = 0x22;
}  // namespace

const char* to_string(Player player) {
  return player == Player::Defender ? "defender" : "attacker";
}

const char* to_string(CampaignStrategy strategy) {
  switch (strategy) {
    case CampaignStrategy::Bayesian:
      return "bayesian";
    case CampaignStrategy::BasicMalicious:
      return "basic-malicious";
    case CampaignStrategy::BasicInadvertent:
      return "basic-inadvertent";
    case CampaignStrategy::BasicCorrupt:
      return "basic-corrupt";
  }
  return "?";
}

Player OwnershipTimeline::owner_at(double time) const {
  if (segments.empty()) return Player::Defender;
  if (time >= segments.back().begin) return segments.back().owner;
  // first segment with end > time
  std::size_t lo = 0, hi = segments.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (segments[mid].end > time)
      hi = mid;
    else
      lo = mid + 1;
  }
  return segments[lo].owner;
}

OwnershipTimeline simulate_flipit(double alpha, double beta, double horizon,
                                  std::uint64_t seed) {
  if (alpha < 0.0 || beta < 0.0)
    throw DomainError("simulate_flipit: rates must be non-negative");
  if (!(horizon > 0.0))
    throw DomainError("simulate_flipit: horizon must be positive");

  Rng rng(seed);
  OwnershipTimeline timeline;
  timeline.horizon = horizon;

  auto flips = [&](double rate, Player mover) {
    std::vector<FlipEvent> events;
    if (rate <= 0.0) return events;
    const double period = 1.0 / rate;
    const double phase = rng.uniform01() * period;
    for (long k = 0;; ++k) {
      const double t = phase + static_cast<double>(k) * period;
      if (t >= horizon) break;
      events.push_back({t, mover});
    }
    return events;
  };

  const std::vector<FlipEvent> defender_flips =
      flips(alpha, Player::Defender);
  const std::vector<FlipEvent> attacker_flips =
      flips(beta, Player::Attacker);

  timeline.events.reserve(defender_flips.size() + attacker_flips.size());
  std::merge(attacker_flips.begin(), attacker_flips.end(),
             defender_flips.begin(), defender_flips.end(),
             std::back_inserter(timeline.events),
             [](const FlipEvent& a, const FlipEvent& b) {
               // ties: attacker applies first, defender reclaims
               return a.time < b.time;
             });

  // Ownership starts with the defender; a flip by the current owner keeps
  // ownership (still a costed move).
  Player owner = Player::Defender;
  double segment_begin = 0.0;
  double defender_time = 0.0;
  for (const FlipEvent& event : timeline.events) {
    if (event.mover == owner) continue;
    timeline.segments.push_back({segment_begin, event.time, owner});
    if (owner == Player::Defender) defender_time += event.time - segment_begin;
    owner = event.mover;
    segment_begin = event.time;
  }
  timeline.segments.push_back({segment_begin, horizon, owner});
  if (owner == Player::Defender) defender_time += horizon - segment_begin;
  timeline.defender_fraction = defender_time / horizon;
  return timeline;
}

InsiderDraw sample_insider_type(const GameParameters& params, Rng& rng) {
  params.validate();
  const double u = rng.uniform01();
  InsiderType type;
  if (u < params.theta1)
    type = InsiderType::Malicious;
  else if (u < params.theta1 + params.inadvertent_probability())
    type = InsiderType::Inadvertent;
  else
    type = InsiderType::Corrupt;

  switch (type) {
    case InsiderType::Malicious: {
      // basic-strategy play: the malicious NE gamma at the campaign's sigma
      const auto ne = solve_ne_malicious(params);
      if (!ne)
        throw NoEquilibriumError(
            "malicious insider play unresolvable: no malicious NE branch at "
            "these parameters");
      return {type, ne->profile.gamma};
    }
    case InsiderType::Corrupt:
      return {type, solve_ne_corrupt(params).profile.gamma};
    case InsiderType::Inadvertent:
      return {type, rng.uniform_open(params.gamma_max)};
  }
  return {type, 0.0};
}

namespace {

struct ResolvedTuple {
  double alpha = 0.0;
  double beta = 0.0;
  bool per_run = false;  // basic-inadvertent recomputes from the run's gamma
};

ResolvedTuple resolve_strategy(const GameParameters& params,
                               CampaignStrategy strategy) {
  switch (strategy) {
    case CampaignStrategy::Bayesian: {
      const auto bne = solve_bne(params);
      if (!bne)
        throw NoEquilibriumError(
            "bayesian strategy unresolvable: no BNE branch at these "
            "parameters");
      return {bne->profile.alpha, bne->profile.beta, false};
    }
    case CampaignStrategy::BasicMalicious: {
      const auto ne = solve_ne_malicious(params);
      if (!ne)
        throw NoEquilibriumError(
            "basic-malicious strategy unresolvable: no malicious NE branch");
      return {ne->profile.alpha, ne->profile.beta, false};
    }
    case CampaignStrategy::BasicCorrupt: {
      const auto ne = solve_ne_corrupt(params);
      return {ne.profile.alpha, ne.profile.beta, false};
    }
    case CampaignStrategy::BasicInadvertent:
      return {0.0, 0.0, true};
  }
  throw DomainError("unknown campaign strategy");
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, Execution policy) {
  config.params.validate();
  if (config.n_runs < 1) throw DomainError("campaign needs n_runs >= 1");
  const GameParameters& params = config.params;

  // Resolve upfront so unresolvable strategies fail before the run loop.
  const ResolvedTuple tuple = resolve_strategy(params, config.strategy);
  if (params.theta1 > 0.0 && !solve_ne_malicious(params))
    throw NoEquilibriumError(
        "malicious insider play unresolvable at these parameters");

  CampaignResult result;
  result.strategy = config.strategy;
  result.runs.assign(static_cast<std::size_t>(config.n_runs), {});

  auto evaluate = [&](int run_index) {
    Rng rng = Rng::substream(config.master_seed,
                             static_cast<std::uint64_t>(run_index),
                             kInsiderDrawTag);
    CampaignRun run;
    run.run = run_index + 1;
    run.insider = sample_insider_type(params, rng);
    if (tuple.per_run) {
      // the identified leak fraction feeds the inadvertent NE
      const EquilibriumResult ne =
          solve_ne_inadvertent(params, run.insider.gamma);
      run.alpha = ne.profile.alpha;
      run.beta = ne.profile.beta;
    } else {
      run.alpha = tuple.alpha;
      run.beta = tuple.beta;
    }
    run.benefit =
        defender_benefit({run.alpha, run.beta, run.insider.gamma}, params);
    return run;
  };

#ifdef _OPENMP
  if (policy == Execution::Parallel) {
    #pragma omp parallel for schedule(static)
    for (int r = 0; r < config.n_runs; ++r)
      result.runs[static_cast<std::size_t>(r)] = evaluate(r);
  } else
#endif
  {
    (void)policy;
    for (int r = 0; r < config.n_runs; ++r)
      result.runs[static_cast<std::size_t>(r)] = evaluate(r);
  }

  // serial fold in run order: cumulative series independent of scheduling
  double cumulative = 0.0;
  for (auto& run : result.runs) {
    cumulative += run.benefit;
    run.cumulative = cumulative;
  }
  result.total = cumulative;
  return result;
}

std::vector<InsiderDraw> insider_schedule(const GameParameters& params,
                                          int experiment_index,
                                          std::uint64_t master_seed) {
  params.validate();
  if (experiment_index < 1 || experiment_index > 4)
    throw DomainError("experiment index must lie in 1..4");
  const int aligned = 12 / experiment_index;

  const auto gamma_for = [&](InsiderType type, Rng& rng) {
    switch (type) {
      case InsiderType::Malicious: {
        const auto ne = solve_ne_malicious(params);
        if (!ne)
          throw NoEquilibriumError(
              "malicious insider play unresolvable at these parameters");
        return ne->profile.gamma;
      }
      case InsiderType::Corrupt:
        return solve_ne_corrupt(params).profile.gamma;
      case InsiderType::Inadvertent:
        return rng.uniform_open(params.gamma_max);
    }
    return 0.0;
  };

  constexpr InsiderType kBlockType[3] = {
      InsiderType::Malicious, InsiderType::Inadvertent, InsiderType::Corrupt};

  std::vector<InsiderDraw> schedule(36);
  for (int s = 1; s <= 36; ++s) {
    Rng rng = Rng::substream(master_seed, static_cast<std::uint64_t>(s),
                             kScheduleTag);
    const int block = (s - 1) / 12;
    const int pos = (s - 1) % 12 + 1;
    InsiderType type;
    if (pos <= aligned) {
      type = kBlockType[block];
    } else {
      // randomized sims never carry their own block's type
      const InsiderType other[2] = {kBlockType[(block + 1) % 3],
                                    kBlockType[(block + 2) % 3]};
      type = other[rng.bernoulli(0.5) ? 0 : 1];
    }
    schedule[static_cast<std::size_t>(s - 1)] = {type, gamma_for(type, rng)};
  }
  return schedule;
}

}  // namespace flipin
