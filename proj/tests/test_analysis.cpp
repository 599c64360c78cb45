#include <doctest.h>

#include <cmath>

#include "flipin/analysis.hpp"
#include "flipin/benefits.hpp"
#include "flipin/rng.hpp"
#include "test_support.hpp"

using namespace flipin;

namespace {

GameParameters malicious_params(double ci, double gm) {
  GameParameters p;
  p.c_defender = 0.5;
  p.c_attacker = 1.0;
  p.c_insider = ci;
  p.c_attacker_to_insider = ci + 0.1;
  p.theta1 = 0.1;
  p.theta2 = 0.1;
  p.alpha_max = 50.0;
  p.beta_max = 50.0;
  p.gamma_max = gm;
  return p;
}

}  // namespace

TEST_CASE("sigma interval algebra") {
  const SigmaInterval a{1.0, 4.0, true, false};
  CHECK(a.contains(2.0));
  CHECK(a.contains(4.0));
  CHECK_FALSE(a.contains(1.0));
  CHECK_FALSE(a.contains(4.5));
  const SigmaInterval b{3.0, 10.0, false, true};
  const SigmaInterval c = SigmaInterval::intersect(a, b);
  CHECK(c.contains(3.5));
  CHECK(c.contains(4.0));
  CHECK_FALSE(c.contains(10.0));
  const SigmaInterval empty{5.0, 5.0, true, true};
  CHECK(empty.empty());
}

TEST_CASE("advantage intervals at the first campaign set") {
  const AdvantageIntervals iv = advantage_intervals(testing::fig6_params());
  // T_M = (0, 1] u (4.0816..., inf)
  REQUIRE(iv.t_malicious.pieces.size() == 2);
  CHECK(iv.t_malicious.pieces[0].lower == 0.0);
  CHECK(iv.t_malicious.pieces[0].upper == 1.0);
  CHECK_FALSE(iv.t_malicious.pieces[0].upper_strict);
  CHECK(iv.t_malicious.pieces[1].lower ==
        doctest::Approx(4.081632653061225).epsilon(1e-12));
  CHECK(std::isinf(iv.t_malicious.pieces[1].upper));
  // T_I = (4, inf), T_C = (1, inf)
  CHECK(iv.t_inadvertent.pieces[0].lower == doctest::Approx(4.0));
  CHECK(iv.t_corrupt.pieces[0].lower == 1.0);
  // intersection = (4.0816..., inf) and contains sigma = 5
  REQUIRE(iv.intersection.pieces.size() == 1);
  CHECK(iv.intersection.pieces[0].lower ==
        doctest::Approx(4.081632653061225).epsilon(1e-12));
  CHECK(iv.intersection.contains(5.0));
  CHECK_FALSE(iv.intersection.contains(4.0));
  // parameters sit on the existence-strip boundary: warning expected
  CHECK_FALSE(iv.warnings.empty());
}

TEST_CASE("advantage intervals with positive fast bound") {
  // theta = 1, C_AI = 0.6, C_I = 0.51: D = 2 - 2*0.6 + ... = 0.8 exactly
  GameParameters p = testing::fig6_params();
  p.c_attacker_to_insider = 0.6;
  const AdvantageIntervals iv = advantage_intervals(p);
  CHECK(iv.fast_bound == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(iv.t_corrupt.pieces[0].lower == 1.0);
  CHECK(iv.t_corrupt.pieces[0].upper == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("key points in the malicious game") {
  const GameParameters p = malicious_params(0.75, 0.5);
  const KeyPoints points = key_points(p, BenefitModel::Malicious, 10.0);
  CHECK(points.a.sigma == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(points.a.benefit == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(points.b.sigma == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(points.b.benefit == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(points.c.sigma == 10.0);
  CHECK(points.c.benefit == doctest::Approx(0.4).epsilon(1e-13));
  // B's benefit is (1 - gamma_max) times A's
  CHECK(points.b.benefit ==
        doctest::Approx((1.0 - p.gamma_max) * points.a.benefit));
  CHECK_THROWS_AS(key_points(malicious_params(0.3, 0.5),
                             BenefitModel::Malicious, 10.0),
                  DomainError);
}

TEST_CASE("key points in the bayesian game use the fast-bound analogue") {
  // theta = 1, C_I = 0.45, C_AI = 0.8: D = 0.4, strip satisfied
  GameParameters p = testing::fig6_params();
  p.c_insider = 0.45;
  p.c_attacker_to_insider = 0.8;
  p.gamma_max = 0.1;
  REQUIRE(bne_existence_strip_holds(p));
  CHECK(bne_fast_bound(p) == doctest::Approx(0.4).epsilon(1e-12));
  const KeyPoints points = key_points(p, BenefitModel::Bayesian, 10.0);
  CHECK(points.a.sigma == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(points.a.benefit == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(points.b.sigma == doctest::Approx(1.0 / 0.36).epsilon(1e-12));
  CHECK(points.b.benefit == doctest::Approx(0.54).epsilon(1e-12));
  CHECK(points.c.benefit == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(points.b.benefit < points.a.benefit);

  SUBCASE("recommendation follows the C-vs-B comparison") {
    CHECK(recommend_sigma(p, BenefitModel::Bayesian, 10.0).sigma == 10.0);
    const SigmaRecommendation interior =
        recommend_sigma(p, BenefitModel::Bayesian, 2.0);
    CHECK(interior.rationale == SigmaRationale::PointCBelowB);
    CHECK(interior.sigma == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("point ordering holds across the hypothesis strip") {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double ci = rng.uniform(0.51, 0.99);
    const double gm = rng.uniform(0.05, 0.95);
    const GameParameters p = malicious_params(ci, gm);
    // pick a sigma_max inside the fast-gamma-max branch so C is defined
    const double sigma_max = 1.2 / (2.0 * (1.0 - ci) * (1.0 - gm));
    const KeyPoints points =
        key_points(p, BenefitModel::Malicious, sigma_max);
    CHECK(points.b.benefit < points.a.benefit);
  }
}

TEST_CASE("sigma recommendation") {
  SUBCASE("low cost: C above B, use sigma_max") {
    const GameParameters p = malicious_params(0.6, 0.5);
    // at sigma_max = 20, U* = 1 - 0.5 - 0.05 = 0.45 > B = 0.5*0.2 = 0.1
    const SigmaRecommendation rec =
        recommend_sigma(p, BenefitModel::Malicious, 20.0);
    CHECK(rec.sigma == 20.0);
    CHECK(rec.rationale == SigmaRationale::PointCAboveB);
  }
  SUBCASE("high cost: C below B, use the interior threshold") {
    // A = (10, 0.9), B = (12.5, 0.72); sigma_max = 3 sits on the first fast
    // branch with benefit 2/3 < 0.72
    const GameParameters q = malicious_params(0.95, 0.2);
    const SigmaRecommendation rec =
        recommend_sigma(q, BenefitModel::Malicious, 3.0);
    CHECK(rec.sigma == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(rec.rationale == SigmaRationale::PointCBelowB);
  }
  SUBCASE("inadvertent and corrupt: benefit increases in sigma") {
    const GameParameters p = malicious_params(0.6, 0.5);
    CHECK(recommend_sigma(p, BenefitModel::Corrupt, 7.0).sigma == 7.0);
    CHECK(recommend_sigma(p, BenefitModel::Inadvertent, 7.0, 0.3).sigma == 7.0);
    CHECK(recommend_sigma(p, BenefitModel::Corrupt, 7.0).rationale ==
          SigmaRationale::IncreasingInSigma);
  }
  SUBCASE("recommendation sits in (or on the closure of) the benefit domain") {
    Rng rng(63);
    for (int i = 0; i < 50; ++i) {
      const double ci = rng.uniform(0.55, 0.95);
      const double gm = rng.uniform(0.1, 0.9);
      const GameParameters p = malicious_params(ci, gm);
      // sigma_max placed inside one of the two fast branches
      const double sigma_max =
          rng.bernoulli(0.5)
              ? rng.uniform(1.05, 0.99 / (2.0 * (1.0 - ci)))
              : rng.uniform(1.05, 3.0) / (2.0 * (1.0 - ci) * (1.0 - gm));
      const SigmaRecommendation rec =
          recommend_sigma(p, BenefitModel::Malicious, sigma_max);
      if (rec.rationale == SigmaRationale::PointCAboveB) {
        CHECK(rec.sigma == sigma_max);
        CHECK(equilibrium_defender_benefit(params_at_sigma(p, rec.sigma),
                                           BenefitModel::Malicious)
                  .value.has_value());
      } else {
        // interior threshold: left-closure point of the fast-gamma0 branch
        CHECK(equilibrium_defender_benefit(
                  params_at_sigma(p, rec.sigma * (1.0 - 1e-9)),
                  BenefitModel::Malicious)
                  .value.has_value());
      }
    }
  }
}

TEST_CASE("deterrence witness in the malicious game") {
  const GameParameters p = malicious_params(0.75, 0.5);
  const GdtWitness w = gdt_witness(p, BenefitModel::Malicious);
  CHECK(w.sigma1 == doctest::Approx(1.9).epsilon(1e-12));
  CHECK(w.sigma2 == doctest::Approx(4.2).epsilon(1e-12));
  CHECK(w.benefit1 == doctest::Approx(1.0 - 1.0 / 1.9).epsilon(1e-12));
  CHECK(w.benefit2 == doctest::Approx(0.5 - 1.0 / 4.2).epsilon(1e-12));
  CHECK(w.benefit1 > w.benefit2);
  CHECK(w.sigma1 < w.sigma2);
  // threshold benefits obey 2CI - 1 > (1-gm)(2CI - 1)
  CHECK(2.0 * 0.75 - 1.0 > (1.0 - 0.5) * (2.0 * 0.75 - 1.0));
}

TEST_CASE("deterrence witness survives awkward corners via smaller offsets") {
  // 5% offsets push sigma1 below 1 or lose the inequality here
  const GameParameters tight = malicious_params(0.52, 0.15);
  const GdtWitness w = gdt_witness(tight, BenefitModel::Malicious);
  CHECK(w.sigma1 > 1.0);
  CHECK(w.benefit1 > w.benefit2);
  CHECK(w.offset < 0.05);
}

TEST_CASE("deterrence witness in the bayesian game") {
  GameParameters p = testing::fig6_params();
  p.c_insider = 0.45;
  p.c_attacker_to_insider = 0.8;
  p.gamma_max = 0.1;  // keep the fast-gamma0 region unambiguous
  const GdtWitness w = gdt_witness(p, BenefitModel::Bayesian);
  CHECK(w.sigma1 < w.sigma2);
  CHECK(w.benefit1 > w.benefit2);
  // outside the existence strip the witness is not guaranteed
  CHECK_THROWS_AS(gdt_witness(testing::fig6_params(), BenefitModel::Bayesian),
                  DomainError);
}

TEST_CASE("strategy catalog tuples") {
  GameParameters p = testing::fig6_params();
  const StrategyCatalog fast = strategy_catalog(p, 0.75);
  CHECK(fast.fast_unscaled.alpha == 0.5);
  CHECK(fast.fast_unscaled.beta == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(fast.fast_inflated.alpha == 0.5);
  CHECK(fast.fast_inflated.beta == doctest::Approx(0.4).epsilon(1e-15));

  p.c_defender = 1.0;
  const StrategyCatalog slow = strategy_catalog(p, 0.5);
  CHECK(slow.slow_unscaled.alpha == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(slow.slow_unscaled.beta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(slow.slow_scaled.alpha == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(slow.slow_scaled.beta == doctest::Approx(0.25).epsilon(1e-15));

  // gamma = 0: scaled and unscaled coincide
  const StrategyCatalog zero = strategy_catalog(p, 0.0);
  CHECK(zero.slow_scaled.alpha == zero.slow_unscaled.alpha);
  CHECK(zero.fast_inflated.beta == zero.fast_unscaled.beta);
  CHECK_THROWS_AS(strategy_catalog(p, 1.0), DomainError);
}

TEST_CASE("dominance comparisons") {
  const GameParameters p = testing::fig6_params();
  SUBCASE("worked fast comparison") {
    const DominanceCheck check = dominance_check(p, 0.75, 0.75);
    CHECK(check.fast_unscaled_value == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(check.fast_inflated_value == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(check.fast_holds);
    CHECK(check.slow_holds);
    CHECK(check.strict);
  }
  SUBCASE("gamma = 0 degenerates to non-strict equality") {
    const DominanceCheck check = dominance_check(p, 0.0, 0.3);
    CHECK_FALSE(check.strict);
    CHECK(check.slow_holds);
    CHECK(check.fast_holds);
    CHECK(check.slow_scaled_value == check.slow_unscaled_value);
  }
  SUBCASE("random sweep: strict whenever gamma > 0") {
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
      GameParameters q = p;
      q.c_defender = rng.uniform(0.1, 2.0);
      const double gamma = rng.uniform(1e-3, q.gamma_max);
      const double gamma0 = rng.uniform(0.0, q.gamma_max);
      const DominanceCheck check = dominance_check(q, gamma, gamma0);
      CHECK(check.slow_holds);
      CHECK(check.fast_holds);
    }
  }
}

TEST_CASE("advantage-interval dominance across random hypothesis sets") {
  // Sample parameter sets inside both hypotheses (C_I strip and existence
  // strip) until 50 of them carry a non-empty intersection; inside each,
  // the Bayesian tuple strictly beats all three basic tuples against all
  // three insider plays. Note: the hypotheses alone do not force a
  // non-empty intersection (gamma_max near 1 empties T_M), hence the
  // filtering step.
  Rng rng(404);
  int nonempty = 0, sampled = 0;
  while (nonempty < 50 && sampled < 20000) {
    ++sampled;
    GameParameters p = testing::fig6_params();
    const double theta = rng.uniform(0.4, 2.5);
    p.theta2 = rng.uniform(0.1, 0.4);
    p.theta1 = theta * p.theta2;
    if (p.theta1 + p.theta2 >= 0.99) continue;
    p.c_insider = rng.uniform(0.51, 0.95);
    // strip: (th+1)CI - th CAI in (0, 1/2) and (th-1)CI - th CAI in (-1,-1/2)
    const double th = p.theta1 / p.theta2;
    const double lo = std::max({((th + 1.0) * p.c_insider - 0.5) / th,
                                ((th - 1.0) * p.c_insider + 0.5) / th,
                                p.c_insider * 1.0001});
    const double hi = std::min((th + 1.0) * p.c_insider / th,
                               ((th - 1.0) * p.c_insider + 1.0) / th);
    if (!(lo < hi)) continue;
    p.c_attacker_to_insider = rng.uniform(lo, hi);
    if (!bne_existence_strip_holds(p)) continue;
    p.gamma_max = rng.uniform(0.1, 0.9);
    const AdvantageIntervals iv = advantage_intervals(p);
    if (iv.intersection.empty()) continue;
    ++nonempty;

    const SigmaInterval piece = iv.intersection.pieces.front();
    const double width = std::isinf(piece.upper)
                             ? piece.lower
                             : piece.upper - piece.lower;
    for (int k = 0; k < 10; ++k) {
      const double sigma =
          piece.lower + width * (static_cast<double>(k) + 0.5) / 10.0;
      if (!iv.intersection.contains(sigma)) continue;
      const GameParameters at = params_at_sigma(p, sigma);
      const auto bayes = solve_bne(at);
      const auto mal = solve_ne_malicious(at);
      REQUIRE(bayes.has_value());
      REQUIRE(mal.has_value());
      const auto cor = solve_ne_corrupt(at);
      const double plays[3] = {mal->profile.gamma, at.gamma_max / 2.0,
                               cor.profile.gamma};
      for (const double play : plays) {
        const double bayes_value = defender_benefit(
            {bayes->profile.alpha, bayes->profile.beta, play}, at);
        const auto inad = solve_ne_inadvertent(at, play);
        CHECK(bayes_value >
              defender_benefit({mal->profile.alpha, mal->profile.beta, play},
                               at));
        CHECK(bayes_value >
              defender_benefit({inad.profile.alpha, inad.profile.beta, play},
                               at));
        CHECK(bayes_value >
              defender_benefit({cor.profile.alpha, cor.profile.beta, play},
                               at));
      }
    }
  }
  CHECK(nonempty == 50);
}

TEST_CASE("benefit curve over sigma") {
  SUBCASE("malicious worked values") {
    GameParameters p = malicious_params(0.8, 0.5);
    const auto curve =
        benefit_curve(p, BenefitModel::Malicious, {0.5, 2.0, 10.0});
    REQUIRE(curve.size() == 3);
    REQUIRE(curve[0].benefit.has_value());
    CHECK(*curve[0].benefit == 0.0);
    REQUIRE(curve[1].benefit.has_value());
    CHECK(*curve[1].benefit == doctest::Approx(0.5).epsilon(1e-13));
    REQUIRE(curve[2].benefit.has_value());
    CHECK(*curve[2].benefit == doctest::Approx(0.4).epsilon(1e-13));
    // baseline is the no-insider trace
    CHECK(curve[0].baseline == 0.0);
    CHECK(curve[2].baseline == doctest::Approx(0.9).epsilon(1e-13));
  }
  SUBCASE("corrupt slow prefix is zero") {
    const GameParameters p = malicious_params(0.6, 0.5);
    const auto curve =
        benefit_curve(p, BenefitModel::Corrupt, {0.5, 1.0, 1.5, 2.0});
    for (int i = 0; i < 4; ++i) {
      REQUIRE(curve[static_cast<std::size_t>(i)].benefit.has_value());
      CHECK(*curve[static_cast<std::size_t>(i)].benefit == 0.0);
    }
  }
  SUBCASE("bayesian at the first campaign set") {
    const auto curve =
        benefit_curve(testing::fig6_params(), BenefitModel::Bayesian, {5.0});
    REQUIRE(curve[0].benefit.has_value());
    CHECK(*curve[0].benefit == doctest::Approx(0.8).epsilon(1e-13));
  }
  SUBCASE("inadvertent model carries the known gamma through") {
    const GameParameters p = malicious_params(0.8, 0.5);
    const auto curve =
        benefit_curve(p, BenefitModel::Inadvertent, {1.0, 4.0}, 0.5);
    REQUIRE(curve[0].benefit.has_value());
    CHECK(*curve[0].benefit == 0.0);  // sigma = 1 <= 1/(1-gamma) = 2
    REQUIRE(curve[1].benefit.has_value());
    CHECK(*curve[1].benefit == doctest::Approx(0.25).epsilon(1e-13));
    CHECK_THROWS_AS(benefit_curve(p, BenefitModel::Inadvertent, {1.0}),
                    DomainError);  // gamma required
  }
  SUBCASE("monotone within each defined branch") {
    const GameParameters p = malicious_params(0.8, 0.5);
    std::vector<double> grid;
    for (int i = 1; i <= 60; ++i) grid.push_back(0.2 * i);
    const auto curve = benefit_curve(p, BenefitModel::Malicious, grid);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (!curve[i].benefit || !curve[i - 1].benefit) continue;
      if (curve[i].note != curve[i - 1].note) continue;
      CHECK(*curve[i].benefit >= *curve[i - 1].benefit);
    }
  }
  SUBCASE("input validation") {
    const GameParameters p = malicious_params(0.8, 0.5);
    CHECK_THROWS_AS(benefit_curve(p, BenefitModel::Malicious, {}), DomainError);
    CHECK_THROWS_AS(benefit_curve(p, BenefitModel::Malicious, {2.0, 1.0}),
                    DomainError);
    CHECK_THROWS_AS(benefit_curve(p, BenefitModel::Malicious, {-1.0, 1.0}),
                    DomainError);
  }
}
