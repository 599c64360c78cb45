#include <doctest.h>

#include <cmath>
#include <cstring>

#include "flipin/rng.hpp"
#include "flipin/rse.hpp"
#include "test_support.hpp"

using namespace flipin;

namespace {

RseConfig make_config(int experiment = 1, std::uint64_t seed = 42) {
  RseConfig config;
  config.params = testing::rse_params();
  config.experiment_index = experiment;
  config.master_seed = seed;
  return config;
}

}  // namespace

TEST_CASE("riccati fixed point matches the quadratic root") {
  const LtiSystem sys{0.8, 1.2, 1.0, 1.0};
  // closed form for the scalar prior-variance fixed point:
  // c^2 p^2 - (a^2 r + c^2 q - r) p - q r = 0
  const double a2 = 0.64, c2 = 1.44;
  const double b = a2 * 1.0 + c2 * 1.0 - 1.0;
  const double root = (b + std::sqrt(b * b + 4.0 * c2)) / (2.0 * c2);
  const double fixed = riccati_prior_fixed_point(sys, 1e-12);
  CHECK(std::abs(fixed - root) < 1e-10);
  CHECK(fixed == doctest::Approx(1.2888).epsilon(1e-4));
  const double gain = fixed * 1.2 / (1.44 * fixed + 1.0);
  CHECK(gain == doctest::Approx(0.5416).epsilon(1e-4));
}

TEST_CASE("kalman_step behavior") {
  const LtiSystem sys{0.8, 1.2, 1.0, 1.0};
  SUBCASE("no-information limit: gain goes to zero") {
    const LtiSystem deaf{0.8, 1.2, 1e-12, 1e12};
    const auto step = kalman_step({1.0, 0.5}, deaf, 3.0);
    CHECK(std::abs(step.gain) < 1e-9);
    CHECK(step.estimate == doctest::Approx(0.8).epsilon(1e-8));
  }
  SUBCASE("zero innovations leave the homogeneous decay") {
    KalmanState state{2.0, 1.0};
    for (int k = 1; k <= 5; ++k) {
      const auto step = kalman_step(state, sys, 0.0);
      state.estimate = step.estimate;
      state.variance = step.variance;
      CHECK(state.estimate ==
            doctest::Approx(2.0 * std::pow(0.8, k)).epsilon(1e-12));
    }
  }
  SUBCASE("variance recursion is data-independent and converges") {
    KalmanState state{0.0, 1.0};
    double prior = 0.0;
    for (int k = 0; k < 200; ++k) {
      const auto step = kalman_step(state, sys, 1.7);
      prior = step.prior_variance;
      state.estimate = step.estimate;
      state.variance = step.variance;
    }
    CHECK(prior == doctest::Approx(riccati_prior_fixed_point(sys)).epsilon(1e-9));
  }
  SUBCASE("negative variance rejected") {
    CHECK_THROWS_AS(kalman_step({0.0, -1.0}, sys, 0.0), DomainError);
  }
}

TEST_CASE("corrupt_innovation") {
  CHECK(corrupt_innovation(1.7, Player::Attacker, false) == -1.7);
  CHECK(corrupt_innovation(1.7, Player::Attacker, true) == -1.7);
  CHECK(corrupt_innovation(1.7, Player::Defender, false) == 1.7);
  CHECK(corrupt_innovation(1.7, Player::Defender, true) == -1.7);
  CHECK(corrupt_innovation(0.0, Player::Attacker, false) == 0.0);
}

TEST_CASE("clean run: benefit exact, rmse at the steady posterior") {
  const RseConfig config = make_config();
  double rmse_sum = 0.0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    const RseRunResult run =
        simulate_rse_run(config, 0.5, 0.0, {InsiderType::Inadvertent, 0.0},
                         derive_seed(1000, static_cast<std::uint64_t>(s)));
    CHECK(run.u_d == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(run.t_d_fraction == 1.0);
    rmse_sum += run.rmse;
  }
  // steady-state posterior variance p r / (c^2 p + r) = 0.45129 at the
  // fixed point, so the clean error floor is sqrt(0.45129) = 0.6718
  const double fixed = riccati_prior_fixed_point(config.system);
  const double posterior = fixed * 1.0 / (1.44 * fixed + 1.0);
  const double mean = rmse_sum / seeds;
  CHECK(std::abs(mean - std::sqrt(posterior)) < 0.1 * std::sqrt(posterior));
}

TEST_CASE("clean innovations are white") {
  // test-side filter loop; lag-1 autocorrelation of the innovation sequence
  const LtiSystem sys{0.8, 1.2, 1.0, 1.0};
  Rng noise(2718);
  double x = noise.gaussian();
  KalmanState state{0.0, 1.0};
  std::vector<double> innovations;
  for (int k = 0; k < 1000; ++k) {
    x = sys.a * x + noise.gaussian();
    const double y = sys.c * x + noise.gaussian();
    const double z = y - sys.c * (sys.a * state.estimate);
    innovations.push_back(z);
    const auto step = kalman_step(state, sys, z);
    state.estimate = step.estimate;
    state.variance = step.variance;
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k + 1 < innovations.size(); ++k)
    num += innovations[k] * innovations[k + 1];
  for (const double z : innovations) den += z * z;
  CHECK(std::abs(num / den) < 0.1);
}

TEST_CASE("attack strictly degrades estimation on paired seeds") {
  const RseConfig config = make_config();
  for (int s = 0; s < 20; ++s) {
    const std::uint64_t seed = derive_seed(9'000, static_cast<std::uint64_t>(s));
    const RseRunResult clean = simulate_rse_run(
        config, 0.5, 0.0, {InsiderType::Inadvertent, 0.0}, seed);
    const RseRunResult attacked = simulate_rse_run(
        config, 0.5, 0.4, {InsiderType::Inadvertent, 0.0}, seed);
    CHECK(attacked.rmse > clean.rmse);
  }
}

TEST_CASE("benefit identity holds to machine precision") {
  const RseConfig config = make_config();
  Rng rng(5150);
  for (int i = 0; i < 20; ++i) {
    const double alpha = rng.uniform(0.1, 1.0);
    const double beta = rng.uniform(0.0, 1.0);
    const double gamma = rng.uniform(0.0, 0.75);
    const RseRunResult run = simulate_rse_run(
        config, alpha, beta, {InsiderType::Corrupt, gamma}, rng.next_u64());
    CHECK(run.u_d == run.t_d_fraction * (1.0 - gamma) -
                         config.params.c_defender * alpha);
  }
}

TEST_CASE("experiment wiring: tuples per block, pairing, determinism") {
  const RseConfig config = make_config(2, 77);
  const RseExperimentResult basic =
      run_rse_experiment(config, RseStrategyKind::Basic);
  const RseExperimentResult bayes =
      run_rse_experiment(config, RseStrategyKind::Bayesian);
  REQUIRE(basic.sims.size() == 36);
  REQUIRE(bayes.sims.size() == 36);

  for (int i = 0; i < 36; ++i) {
    const auto& b = basic.sims[static_cast<std::size_t>(i)];
    const auto& y = bayes.sims[static_cast<std::size_t>(i)];
    // paired schedules
    CHECK(b.insider.type == y.insider.type);
    CHECK(b.insider.gamma == y.insider.gamma);
    // bayesian tuple constant (0.5, 0.1); basic per block
    CHECK(y.alpha == 0.5);
    CHECK(y.beta == doctest::Approx(0.1).epsilon(1e-15));
    if (b.sim <= 12) {
      CHECK(b.alpha == 0.5);
      CHECK(b.beta == doctest::Approx(0.4).epsilon(1e-15));
    } else if (b.sim <= 24) {
      // inadvertent NE at the sim's gamma: beta = C_D/(2(1-g)C_A^2)
      CHECK(b.beta ==
            doctest::Approx(0.2 / (2.0 * (1.0 - b.insider.gamma)))
                .epsilon(1e-12));
    } else {
      CHECK(b.beta == doctest::Approx(0.4).epsilon(1e-15));
    }
  }

  // cumulative series are exact prefix sums
  double cum = 0.0;
  for (const auto& record : basic.sims) {
    cum += record.u_d;
    CHECK(record.cum_u_d == cum);
  }
  CHECK(basic.total_u_d == cum);

  // determinism across repeats and execution policies
  const RseExperimentResult again =
      run_rse_experiment(config, RseStrategyKind::Basic, Execution::Serial);
  for (std::size_t i = 0; i < 36; ++i)
    CHECK(std::memcmp(&basic.sims[i], &again.sims[i], sizeof(RseSimRecord)) ==
          0);
}

TEST_CASE("experiment directional comparison at a pinned seed") {
  const RseConfig config = make_config(1, 42);
  const RseExperimentResult basic =
      run_rse_experiment(config, RseStrategyKind::Basic);
  const RseExperimentResult bayes =
      run_rse_experiment(config, RseStrategyKind::Bayesian);
  CHECK(bayes.total_u_d > basic.total_u_d);
  CHECK(bayes.total_rmse < basic.total_rmse);
}

TEST_CASE("rse config validation") {
  RseConfig config = make_config();
  config.dt = 0.3;  // horizon/dt not integral
  CHECK_THROWS_AS(
      simulate_rse_run(config, 0.5, 0.1, {InsiderType::Corrupt, 0.75}, 1),
      DomainError);
  LtiSystem bad{0.8, 0.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
