// Command-line front end: parameter files in, equilibria / curves /
// intervals / campaign / experiment data out.
//
// Exit codes: 0 success, 2 usage or config parse error, 3 domain or
// hypothesis error, 4 no closed-form equilibrium.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flipin/analysis.hpp"
#include "flipin/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNoEquilibrium = 4;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FLIPIN_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

flipin::BenefitModel model_from_string(const std::string& name) {
  if (name == "bne" || name == "bayesian") return flipin::BenefitModel::Bayesian;
  if (name == "malicious") return flipin::BenefitModel::Malicious;
  if (name == "inadvertent") return flipin::BenefitModel::Inadvertent;
  if (name == "corrupt") return flipin::BenefitModel::Corrupt;
  throw CLI::ValidationError("--model", "unknown model: " + name);
}

struct Outputs {
  std::string prefix;  // empty: stdout only
  std::vector<std::string> written;

  void emit(const std::string& suffix, const std::string& content) {
    if (prefix.empty()) {
      std::cout << content;
      return;
    }
    const std::string path = prefix + suffix;
    flipin::atomic_write_file(path, content);
    written.push_back(path);
    std::cerr << "wrote " << path << "\n";
  }

  void finish(const std::string& command, const flipin::GameParameters& params,
              std::uint64_t seed) {
    if (prefix.empty() || written.empty()) return;
    flipin::RunManifest manifest{command, params, seed,
                                 flipin::kArtifactVersion, written};
    const std::string path = prefix + "_manifest.json";
    flipin::atomic_write_file(path, flipin::manifest_json(manifest));
    std::cerr << "wrote " << path << "\n";
  }
};

std::optional<flipin::EquilibriumResult> solve_model(
    const flipin::GameParameters& params, flipin::BenefitModel model,
    std::optional<double> gamma) {
  switch (model) {
    case flipin::BenefitModel::Bayesian:
      return flipin::solve_bne(params);
    case flipin::BenefitModel::Malicious:
      return flipin::solve_ne_malicious(params);
    case flipin::BenefitModel::Inadvertent:
      if (!gamma)
        throw flipin::ConfigError("--model inadvertent requires --gamma");
      return flipin::solve_ne_inadvertent(params, *gamma);
    case flipin::BenefitModel::Corrupt:
      return flipin::solve_ne_corrupt(params);
  }
  return std::nullopt;
}

std::vector<double> sigma_grid(double lo, double hi, int steps) {
  if (steps < 1) throw flipin::ConfigError("--sigma-steps must be >= 1");
  if (!(lo > 0.0) || hi < lo)
    throw flipin::ConfigError("need 0 < --sigma-min <= --sigma-max");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < steps; ++i)
    grid.push_back(lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(steps - 1));
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BG-FlipIn solver and simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string model_name = "bne";
  std::string out_prefix;
  double gamma_flag = -1.0;
  bool verify_flag = false;
  bool serial_flag = false;
  double grid_step = 1e-3;
  double tolerance = 1e-6;
  std::uint64_t seed = default_seed();

  auto* solve = app.add_subcommand("solve", "closed-form equilibria");
  solve->add_option("--config", config_path, "parameter file")->required();
  solve->add_option("--model", model_name, "bne|malicious|inadvertent|corrupt");
  solve->add_option("--gamma", gamma_flag, "known inadvertent leak fraction");
  solve->add_flag("--verify", verify_flag, "append best-response oracle report");
  solve->add_option("--grid-step", grid_step, "oracle grid step");
  solve->add_option("--tolerance", tolerance, "oracle tolerance");
  solve->add_flag("--serial", serial_flag, "disable the parallel sweep");

  auto* analyze = app.add_subcommand("analyze", "decision guidance over sigma");
  analyze->require_subcommand(1);
  double sigma_min = 0.5, sigma_max = 10.0;
  int sigma_steps = 0;
  for (const char* name : {"curve", "points", "intervals", "gdt", "recommend"}) {
    auto* sub = analyze->add_subcommand(name);
    sub->add_option("--config", config_path)->required();
    sub->add_option("--model", model_name);
    sub->add_option("--gamma", gamma_flag);
    sub->add_option("--sigma-min", sigma_min);
    sub->add_option("--sigma-max", sigma_max);
    sub->add_option("--sigma-steps", sigma_steps);
    sub->add_option("--out", out_prefix, "output path prefix");
  }

  auto* simulate = app.add_subcommand("simulate", "FlipIt timelines and campaigns");
  simulate->require_subcommand(1);
  double alpha = 0.0, beta = 0.0, horizon = 10000.0;
  int runs = 100;
  std::string strategy_name = "all";
  auto* sim_flipit = simulate->add_subcommand("flipit", "one ownership timeline");
  sim_flipit->add_option("--alpha", alpha)->required();
  sim_flipit->add_option("--beta", beta)->required();
  sim_flipit->add_option("--horizon", horizon);
  sim_flipit->add_option("--seed", seed);
  sim_flipit->add_option("--out", out_prefix);
  auto* sim_campaign = simulate->add_subcommand("campaign", "unknown-preference runs");
  sim_campaign->add_option("--config", config_path)->required();
  sim_campaign->add_option("--runs", runs);
  sim_campaign->add_option("--seed", seed);
  sim_campaign->add_option("--strategy", strategy_name,
                           "all|bayesian|basic-malicious|basic-inadvertent|basic-corrupt");
  sim_campaign->add_option("--out", out_prefix);
  sim_campaign->add_flag("--serial", serial_flag);

  auto* rse = app.add_subcommand("rse", "remote-state-estimation experiments");
  int experiment = 1;
  std::string rse_strategy = "both";
  rse->add_option("--config", config_path)->required();
  rse->add_option("--experiment", experiment, "alignment experiment 1..4")
      ->check(CLI::Range(1, 4));
  rse->add_option("--strategy", rse_strategy, "both|bayesian|basic");
  rse->add_option("--seed", seed);
  rse->add_option("--out", out_prefix);
  rse->add_flag("--serial", serial_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  const flipin::Execution policy =
      serial_flag ? flipin::Execution::Serial : flipin::Execution::Parallel;
  std::optional<double> gamma;
  if (gamma_flag >= 0.0) gamma = gamma_flag;

  try {
    if (solve->parsed()) {
      const auto params = flipin::load_parameters(config_path);
      const auto model = model_from_string(model_name);
      const auto result = solve_model(params, model, gamma);
      if (!result)
        throw flipin::NoEquilibriumError(
            "no closed-form equilibrium: no branch condition holds at "
            "sigma=" + flipin::format_double(params.adcr()));
      std::cout << flipin::equilibrium_json(*result);
      if (verify_flag) {
        std::optional<flipin::InsiderType> mode;  // bayesian
        if (model == flipin::BenefitModel::Malicious)
          mode = flipin::InsiderType::Malicious;
        else if (model == flipin::BenefitModel::Inadvertent)
          mode = flipin::InsiderType::Inadvertent;
        else if (model == flipin::BenefitModel::Corrupt)
          mode = flipin::InsiderType::Corrupt;
        const auto report = flipin::verify_equilibrium(
            result->profile, params, mode, grid_step, tolerance, policy);
        std::cout << flipin::verification_json(report);
      }
      return kExitOk;
    }

    if (analyze->parsed()) {
      const auto params = flipin::load_parameters(config_path);
      const auto model = model_from_string(model_name);
      Outputs out{out_prefix, {}};
      const auto* sub = analyze->get_subcommands().front();
      const std::string name = sub->get_name();
      if (name == "curve") {
        const auto grid = sigma_grid(sigma_min, sigma_max, sigma_steps);
        const auto curve = flipin::benefit_curve(params, model, grid, gamma);
        out.emit("_curve.csv", flipin::curve_csv(curve, model_name));
      } else if (name == "points") {
        const auto points = flipin::key_points(params, model, sigma_max);
        std::string body =
            "point,sigma,benefit\nA," + flipin::format_double(points.a.sigma) +
            "," + flipin::format_double(points.a.benefit) + "\nB," +
            flipin::format_double(points.b.sigma) + "," +
            flipin::format_double(points.b.benefit) + "\nC," +
            flipin::format_double(points.c.sigma) + "," +
            flipin::format_double(points.c.benefit) + "\n";
        out.emit("_points.csv", body);
      } else if (name == "intervals") {
        const auto intervals = flipin::advantage_intervals(params);
        out.emit("_intervals.json", flipin::intervals_json(intervals));
      } else if (name == "gdt") {
        const auto witness = flipin::gdt_witness(params, model);
        std::string body =
            "sigma1,sigma2,benefit1,benefit2,offset\n" +
            flipin::format_double(witness.sigma1) + "," +
            flipin::format_double(witness.sigma2) + "," +
            flipin::format_double(witness.benefit1) + "," +
            flipin::format_double(witness.benefit2) + "," +
            flipin::format_double(witness.offset) + "\n";
        out.emit("_gdt.csv", body);
      } else if (name == "recommend") {
        const auto rec =
            flipin::recommend_sigma(params, model, sigma_max, gamma);
        const char* why =
            rec.rationale == flipin::SigmaRationale::PointCAboveB
                ? "point-C-above-B: use sigma_max"
            : rec.rationale == flipin::SigmaRationale::PointCBelowB
                ? "point-C-below-B: use interior threshold"
                : "benefit increasing in sigma: use sigma_max";
        std::string body = "sigma,rationale\n" +
                           flipin::format_double(rec.sigma) + "," + why + "\n";
        out.emit("_recommend.csv", body);
      }
      out.finish("analyze " + name, params, seed);
      return kExitOk;
    }

    if (sim_flipit->parsed()) {
      const auto timeline = flipin::simulate_flipit(alpha, beta, horizon, seed);
      Outputs out{out_prefix, {}};
      std::cout << "defender_fraction "
                << flipin::format_double(timeline.defender_fraction) << "\n"
                << "events " << timeline.events.size() << "\n";
      if (!out_prefix.empty()) {
        out.emit("_timeline.csv", flipin::timeline_csv(timeline));
        out.finish("simulate flipit", {}, seed);
      }
      return kExitOk;
    }

    if (sim_campaign->parsed()) {
      if (runs < 1) throw flipin::ConfigError("--runs must be >= 1");
      const auto params = flipin::load_parameters(config_path);
      std::vector<flipin::CampaignStrategy> strategies;
      if (strategy_name == "all")
        strategies = {flipin::CampaignStrategy::Bayesian,
                      flipin::CampaignStrategy::BasicMalicious,
                      flipin::CampaignStrategy::BasicInadvertent,
                      flipin::CampaignStrategy::BasicCorrupt};
      else if (strategy_name == "bayesian")
        strategies = {flipin::CampaignStrategy::Bayesian};
      else if (strategy_name == "basic-malicious")
        strategies = {flipin::CampaignStrategy::BasicMalicious};
      else if (strategy_name == "basic-inadvertent")
        strategies = {flipin::CampaignStrategy::BasicInadvertent};
      else if (strategy_name == "basic-corrupt")
        strategies = {flipin::CampaignStrategy::BasicCorrupt};
      else
        throw flipin::ConfigError("unknown --strategy: " + strategy_name);

      std::vector<flipin::CampaignResult> results;
      for (const auto strategy : strategies)
        results.push_back(flipin::run_campaign(
            {params, runs, strategy, seed}, policy));
      Outputs out{out_prefix, {}};
      out.emit("_campaign.csv", flipin::campaign_csv(results));
      for (const auto& result : results)
        std::cerr << flipin::to_string(result.strategy) << " total "
                  << flipin::format_double(result.total) << "\n";
      out.finish("simulate campaign", params, seed);
      return kExitOk;
    }

    if (rse->parsed()) {
      const auto params = flipin::load_parameters(config_path);
      flipin::RseConfig config;
      config.params = params;
      config.experiment_index = experiment;
      config.master_seed = seed;
      std::vector<flipin::RseExperimentResult> results;
      if (rse_strategy == "both" || rse_strategy == "basic")
        results.push_back(flipin::run_rse_experiment(
            config, flipin::RseStrategyKind::Basic, policy));
      if (rse_strategy == "both" || rse_strategy == "bayesian")
        results.push_back(flipin::run_rse_experiment(
            config, flipin::RseStrategyKind::Bayesian, policy));
      if (results.empty())
        throw flipin::ConfigError("unknown --strategy: " + rse_strategy);
      Outputs out{out_prefix, {}};
      out.emit("_rse.csv", flipin::rse_csv(results));
      out.emit("_totals.json", flipin::rse_totals_json(results));
      out.finish("rse", params, seed);
      return kExitOk;
    }
  } catch (const flipin::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const flipin::NoEquilibriumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoEquilibrium;
  } catch (const flipin::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
