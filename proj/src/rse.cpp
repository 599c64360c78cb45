#include "flipin/rse.hpp"

#include <cmath>

#include "flipin/equilibrium.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flipin {

namespace {
constexpr std::uint64_t kPhaseTag = 0x33;
constexpr std::uint64_t kNoiseTag = 0x44;
constexpr std::uint64_t kInsiderActTag = 0x55;
constexpr std::uint64_t kSimTag = 0x66;
}  // namespace

const char* to_string(RseStrategyKind kind) {
  return kind == RseStrategyKind::Bayesian ? "bayesian" : "basic";
}

void LtiSystem::validate() const {
  if (c == 0.0) throw DomainError("lti system needs c != 0 (observability)");
  if (!(q > 0.0) || !(r > 0.0))
    throw DomainError("lti noise variances must be positive");
  if (!(x0_var >= 0.0))
    throw DomainError("initial state variance must be non-negative");
}

KalmanStepResult kalman_step(const KalmanState& state, const LtiSystem& system,
                             double innovation) {
  if (state.variance < 0.0)
    throw DomainError("kalman_step: negative variance");
  KalmanStepResult out;
  out.prior = system.a * state.estimate;
  out.prior_variance = system.a * system.a * state.variance + system.q;
  out.gain = out.prior_variance * system.c /
             (system.c * system.c * out.prior_variance + system.r);
  out.estimate = out.prior + out.gain * innovation;
  out.variance = (1.0 - out.gain * system.c) * out.prior_variance;
  return out;
}

double riccati_prior_fixed_point(const LtiSystem& system, double tol,
                                 int max_iter) {
  system.validate();
  const double a2 = system.a * system.a;
  const double c2 = system.c * system.c;
  double prior = a2 * system.x0_var + system.q;
  for (int i = 0; i < max_iter; ++i) {
    const double next =
        a2 * (prior * system.r / (c2 * prior + system.r)) + system.q;
    if (std::abs(next - prior) < tol) return next;
    prior = next;
  }
  throw DomainError("riccati iteration did not converge");
}

double corrupt_innovation(double z, Player owner, bool insider_active) {
  if (owner == Player::Attacker) return -z;  // stealthy sign-flip attack
  if (insider_active) return -z;             // any insider behavior flips too
  return z;
}

namespace {

long step_count(const RseConfig& config) {
  const double ratio = config.horizon / config.dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9)
    throw DomainError("horizon must be an integer multiple of dt");
  return n;
}

}  // namespace

RseRunResult simulate_rse_run(const RseConfig& config, double alpha,
                              double beta, const InsiderDraw& insider,
                              std::uint64_t seed) {
  config.system.validate();
  config.params.validate();
  const long n = step_count(config);

  const OwnershipTimeline timeline = simulate_flipit(
      alpha, beta, config.horizon, derive_seed(seed, 0, kPhaseTag));
  Rng noise = Rng::substream(seed, 0, kNoiseTag);
  Rng insider_rng = Rng::substream(seed, 0, kInsiderActTag);

  const LtiSystem& sys = config.system;
  const double noise_q = std::sqrt(sys.q);
  const double noise_r = std::sqrt(sys.r);

  double x = sys.x0_mean + noise.gaussian() * std::sqrt(sys.x0_var);
  KalmanState local{0.0, 1.0};  // local (sensor-side) filter
  double remote = 0.0;          // remote estimate fed by the channel
  double squared_error = 0.0;

  for (long k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    const Player owner = timeline.owner_at(t);

    x = sys.a * x + noise_q * noise.gaussian();
    const double y = sys.c * x + noise_r * noise.gaussian();

    // innovation against the local filter's prior; the local chain stays
    // clean, the remote chain consumes whatever the channel delivers
    const double z = y - sys.c * (sys.a * local.estimate);
    const KalmanStepResult step = kalman_step(local, sys, z);
    local.estimate = step.estimate;
    local.variance = step.variance;

    const bool active = owner == Player::Defender &&
                        insider_rng.bernoulli(insider.gamma);
    const double z_tilde = corrupt_innovation(z, owner, active);
    remote = sys.a * remote + step.gain * z_tilde;

    const double err = x - remote;
    squared_error += err * err;
  }

  RseRunResult result;
  result.insider_type = insider.type;
  result.gamma_used = insider.gamma;
  result.t_d_fraction = timeline.defender_fraction;
  result.rmse = std::sqrt(squared_error / static_cast<double>(n));
  result.u_d = result.t_d_fraction * (1.0 - insider.gamma) -
               config.params.c_defender * alpha;
  return result;
}

RseExperimentResult run_rse_experiment(const RseConfig& config,
                                       RseStrategyKind kind,
                                       Execution policy) {
  config.params.validate();
  config.system.validate();
  (void)step_count(config);
  const std::vector<InsiderDraw> schedule = insider_schedule(
      config.params, config.experiment_index, config.master_seed);

  const auto bayes = solve_bne(config.params);
  if (kind == RseStrategyKind::Bayesian && !bayes)
    throw NoEquilibriumError("no BNE branch at the experiment parameters");
  const auto malicious = solve_ne_malicious(config.params);
  if (kind == RseStrategyKind::Basic && !malicious)
    throw NoEquilibriumError(
        "no malicious NE branch at the experiment parameters");
  const EquilibriumResult corrupt = solve_ne_corrupt(config.params);

  RseExperimentResult result;
  result.kind = kind;
  result.experiment_index = config.experiment_index;
  result.sims.assign(schedule.size(), {});

  auto evaluate = [&](int index) {
    const int sim = index + 1;
    const InsiderDraw& insider = schedule[static_cast<std::size_t>(index)];
    double alpha = 0.0, beta = 0.0;
    if (kind == RseStrategyKind::Bayesian) {
      alpha = bayes->profile.alpha;
      beta = bayes->profile.beta;
    } else if (sim <= 12) {
      alpha = malicious->profile.alpha;
      beta = malicious->profile.beta;
    } else if (sim <= 24) {
      const EquilibriumResult ne =
          solve_ne_inadvertent(config.params, insider.gamma);
      alpha = ne.profile.alpha;
      beta = ne.profile.beta;
    } else {
      alpha = corrupt.profile.alpha;
      beta = corrupt.profile.beta;
    }
    const RseRunResult run = simulate_rse_run(
        config, alpha, beta, insider,
        derive_seed(config.master_seed, static_cast<std::uint64_t>(sim),
                    kSimTag));
    RseSimRecord record;
    record.sim = sim;
    record.insider = insider;
    record.alpha = alpha;
    record.beta = beta;
    record.u_d = run.u_d;
    record.rmse = run.rmse;
    return record;
  };

  const int count = static_cast<int>(schedule.size());
#ifdef _OPENMP
  if (policy == Execution::Parallel) {
    #pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i)
      result.sims[static_cast<std::size_t>(i)] = evaluate(i);
  } else
#endif
  {
    (void)policy;
    for (int i = 0; i < count; ++i)
      result.sims[static_cast<std::size_t>(i)] = evaluate(i);
  }

  double cum_u = 0.0, cum_rmse = 0.0;
  for (auto& record : result.sims) {
    cum_u += record.u_d;
    cum_rmse += record.rmse;
    record.cum_u_d = cum_u;
    record.cum_rmse = cum_rmse;
  }
  result.total_u_d = cum_u;
  result.total_rmse = cum_rmse;
  return result;
}

}  // namespace flipin
