// Compares the serial reference and OpenMP paths of the hot kernels: the
// best-response grid sweep, the campaign runner, and the experiment runner.
// Also asserts the two paths agree before timing them.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "flipin/equilibrium.hpp"
#include "flipin/flipsim.hpp"
#include "flipin/rse.hpp"
#include "flipin/verify.hpp"

using namespace flipin;
using Clock = std::chrono::steady_clock;

namespace {

GameParameters bench_params() {
  GameParameters p;
  p.c_defender = 0.2;
  p.c_attacker = 1.0;
  p.c_insider = 0.51;
  p.c_attacker_to_insider = 1.02;
  p.theta1 = 0.1;
  p.theta2 = 0.1;
  p.alpha_max = 20.0;
  p.beta_max = 20.0;
  p.gamma_max = 0.75;
  return p;
}

template <typename F>
double time_ms(F&& work, int repeats) {
  const auto begin = Clock::now();
  for (int i = 0; i < repeats; ++i) work();
  const auto end = Clock::now();
  return std::chrono::duration<double, std::milli>(end - begin).count() /
         repeats;
}

}  // namespace

int main() {
  const GameParameters p = bench_params();
  const StrategyProfile candidate{0.5, 0.1, 0.0};

  const auto serial_report = verify_equilibrium(
      candidate, p, std::nullopt, 2e-4, 1e-6, Execution::Serial);
  const auto parallel_report = verify_equilibrium(
      candidate, p, std::nullopt, 2e-4, 1e-6, Execution::Parallel);
  if (std::memcmp(&serial_report.defender, &parallel_report.defender,
                  sizeof(PlayerDeviation)) != 0 ||
      std::memcmp(&serial_report.attacker, &parallel_report.attacker,
                  sizeof(PlayerDeviation)) != 0 ||
      std::memcmp(&serial_report.insider, &parallel_report.insider,
                  sizeof(PlayerDeviation)) != 0) {
    std::puts("serial and parallel verification reports disagree");
    return 1;
  }

  const double verify_serial = time_ms(
      [&] {
        verify_equilibrium(candidate, p, std::nullopt, 2e-4, 1e-6,
                           Execution::Serial);
      },
      3);
  const double verify_parallel = time_ms(
      [&] {
        verify_equilibrium(candidate, p, std::nullopt, 2e-4, 1e-6,
                           Execution::Parallel);
      },
      3);

  const CampaignConfig campaign{p, 20000, CampaignStrategy::Bayesian, 99};
  const double campaign_serial =
      time_ms([&] { run_campaign(campaign, Execution::Serial); }, 3);
  const double campaign_parallel =
      time_ms([&] { run_campaign(campaign, Execution::Parallel); }, 3);

  RseConfig rse;
  rse.params = bench_params();
  rse.params.c_attacker_to_insider = 1.01;
  rse.params.theta1 = 0.33;
  rse.params.theta2 = 0.33;
  rse.master_seed = 5;
  const double rse_serial = time_ms(
      [&] { run_rse_experiment(rse, RseStrategyKind::Basic, Execution::Serial); },
      3);
  const double rse_parallel = time_ms(
      [&] {
        run_rse_experiment(rse, RseStrategyKind::Basic, Execution::Parallel);
      },
      3);

  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial (ms)",
              "parallel (ms)", "speedup");
  std::printf("%-24s %12.2f %12.2f %7.2fx\n", "verify grid sweep",
              verify_serial, verify_parallel, verify_serial / verify_parallel);
  std::printf("%-24s %12.2f %12.2f %7.2fx\n", "campaign 20k runs",
              campaign_serial, campaign_parallel,
              campaign_serial / campaign_parallel);
  std::printf("%-24s %12.2f %12.2f %7.2fx\n", "rse experiment", rse_serial,
              rse_parallel, rse_serial / rse_parallel);
  return 0;
}
