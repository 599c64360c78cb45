#pragma once
// Remote-state-estimation scenario: scalar LTI plant, Kalman filter,
// FlipIt-scheduled cloud ownership, innovation sign-flip attack, insider
// corruption, and the four alignment-ratio experiments.

#include <cstdint>
#include <vector>

#include "flipin/flipsim.hpp"

namespace flipin {

struct LtiSystem {
  double a = 0.0;       // state transition
  double c = 0.0;       // observation
  double q = 0.0;       // process noise variance
  double r = 0.0;       // measurement noise variance
  double x0_mean = 0.0;
  double x0_var = 1.0;

  void validate() const;  // c != 0, positive noise variances
  bool stable() const { return a > -1.0 && a < 1.0; }
};

struct KalmanState {
  double estimate = 0.0;
  double variance = 0.0;
};

struct KalmanStepResult {
  double estimate = 0.0;
  double variance = 0.0;
  double gain = 0.0;
  double prior = 0.0;
  double prior_variance = 0.0;
};

// Predict then update with the supplied innovation (which may have been
// tampered with). Throws DomainError on negative variance.
KalmanStepResult kalman_step(const KalmanState& state, const LtiSystem& system,
                             double innovation);

// Steady-state prior variance by iterating p <- a^2 p r / (c^2 p + r) + q.
double riccati_prior_fixed_point(const LtiSystem& system, double tol = 1e-12,
                                 int max_iter = 100000);

// Attacker-owned step, or defender-owned step with an active insider, flips
// the innovation sign; otherwise unchanged.
double corrupt_innovation(double z, Player owner, bool insider_active);

struct RseConfig {
  LtiSystem system{0.8, 1.2, 1.0, 1.0};
  double horizon = 100.0;
  double dt = 0.1;
  GameParameters params;
  int experiment_index = 1;
  std::uint64_t master_seed = 0;
};

struct RseRunResult {
  double u_d = 0.0;
  double rmse = 0.0;
  double t_d_fraction = 0.0;
  InsiderType insider_type{};
  double gamma_used = 0.0;
};

// One simulation: FlipIt ownership over [0, horizon], owner sampled at step
// boundaries; the local filter computes innovations from clean measurements
// while the remote estimate consumes the possibly-flipped channel output.
// Insider activation is an independent Bernoulli(gamma) per defender-owned
// step. u_d = (T_D/T)(1-gamma) - C_D alpha; rmse against the remote estimate.
RseRunResult simulate_rse_run(const RseConfig& config, double alpha,
                              double beta, const InsiderDraw& insider,
                              std::uint64_t seed);

enum class RseStrategyKind { Bayesian, Basic };

const char* to_string(RseStrategyKind kind);

struct RseSimRecord {
  int sim = 0;
  InsiderDraw insider;
  double alpha = 0.0;
  double beta = 0.0;
  double u_d = 0.0;
  double rmse = 0.0;
  double cum_u_d = 0.0;
  double cum_rmse = 0.0;
};

struct RseExperimentResult {
  RseStrategyKind kind{};
  int experiment_index = 0;
  std::vector<RseSimRecord> sims;
  double total_u_d = 0.0;
  double total_rmse = 0.0;
};

// 36 simulations with the experiment's insider schedule. Bayesian runs use
// the BNE tuple throughout; basic runs use the malicious NE tuple for sims
// 1-12, the inadvertent NE at each sim's gamma for 13-24, and the corrupt NE
// tuple for 25-36. Both kinds consume identical per-sim seeds.
RseExperimentResult run_rse_experiment(const RseConfig& config,
                                       RseStrategyKind kind,
                                       Execution policy = Execution::Parallel);

}  // namespace flipin
