#include <gtest/gtest.h>

#include <cmath>

#include "zeno/constants.hpp"
#include "zeno/design.hpp"

using namespace zeno;

namespace {
const double pi = constants::pi;

void expect_certified(const DesignPoint& d) {
  const ErrorPair e = exact_errors(GateGeometry::make(3, d.N), AbsorberRates{d.xi1, Decay{d.xi2, false}, 0.0});
  EXPECT_LE(std::max(e.p1, e.p2), d.p_target) << "N=" << d.N;
}
}  // namespace

TEST(SegmentProbabilities, TableValues) {
  const SegmentProbabilities a = segment_probabilities(8, 22);
  EXPECT_EQ(std::round(a.p2 * 100), 99);
  EXPECT_EQ(std::round(a.p1 * 100), 21);
  const SegmentProbabilities b = segment_probabilities(160, 440);
  EXPECT_EQ(std::round(b.p2 * 100), 69);
  EXPECT_NEAR(b.p1, 0.003, 0.0005);
  const SegmentProbabilities c = segment_probabilities(10, 1e12);
  EXPECT_NEAR(c.p2, 1.0, 1e-12);
  EXPECT_NEAR(c.p1, 0.0, 1e-5);
}

TEST(MinimalKappa, CertifiedAndTight) {
  const DesignConfig cfg;
  const auto d = minimal_kappa(0.5, 10, cfg);
  ASSERT_TRUE(d.has_value());
  expect_certified(*d);
  EXPECT_GT(rated_error(10, d->kappa / (1 + 2 * cfg.kappa_rel_tol), cfg).max_error, 0.5);
  EXPECT_NEAR(d->kappa, 12.0, 0.5);
}

TEST(MinimalKappa, InfeasibleReturnsEmpty) {
  DesignConfig cfg;
  cfg.kappa_max = 100;
  EXPECT_FALSE(minimal_kappa(0.1, 5, cfg).has_value());
  EXPECT_THROW(minimal_kappa(1.5, 5, cfg), std::invalid_argument);
}

TEST(MinimalKappa, NonIncreasingInN) {
  const DesignConfig cfg;
  for (double P : {0.5, 0.25, 0.1}) {
    double prev = INFINITY;
    for (std::uint64_t N : {60ULL, 70ULL, 80ULL, 100ULL, 130ULL, 160ULL, 200ULL, 300ULL}) {
      const auto d = minimal_kappa(P, N, cfg);
      ASSERT_TRUE(d.has_value());
      EXPECT_LE(d->kappa, prev * (1 + cfg.kappa_rel_tol)) << "P=" << P << " N=" << N;
      prev = d->kappa;
    }
  }
}

TEST(MinimalKappa, MinimaxRuleNeverNeedsMore) {
  DesignConfig a, b;
  b.rule = RateRule::minimax_scale;
  for (std::uint64_t N : {10ULL, 40ULL}) {
    const double ka = minimal_kappa(0.5, N, a)->kappa, kb = minimal_kappa(0.5, N, b)->kappa;
    EXPECT_LE(kb, ka * (1 + a.kappa_rel_tol));
    expect_certified(*minimal_kappa(0.5, N, b));
  }
}

TEST(MinimaxScale, ApproachesClosedFormRates) {
  EXPECT_NEAR(minimax_scale(1000, 1000.0, 2).scale, 1.0, 0.05);
  EXPECT_NEAR(minimax_scale(1000, 1000.0, 3).scale, 1.0, 0.05);
}

TEST(Sweep, ParallelMatchesSerial) {
  const std::vector<std::uint64_t> ns{8, 9, 10, 20, 40, 80};
  const DesignConfig cfg;
  const auto a = kappa_sweep(0.5, ns, cfg), b = kappa_sweep_serial(0.5, ns, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].has_value(), b[i].has_value());
    if (a[i]) EXPECT_EQ(a[i]->kappa, b[i]->kappa);
  }
}

TEST(Search, StrategiesAtHalfError) {
  const auto pts = search_feasible_nk(0.5);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0].strategy, "min_N");
  EXPECT_EQ(pts[0].N, 8u);
  EXPECT_NEAR(pts[0].kappa, 22.0, 0.2 * 22.0);
  EXPECT_EQ(pts[1].strategy, "balanced");
  EXPECT_EQ(pts[2].strategy, "min_kappa");
  EXPECT_LE(pts[2].kappa, pts[1].kappa);
  for (const auto& d : pts) expect_certified(d);
  EXPECT_EQ(search_feasible_nk(0.5, Strategy::min_N).N, 8u);
}

TEST(Search, Infeasible) {
  DesignConfig cfg;
  cfg.n_max = 20;
  EXPECT_THROW(search_feasible_nk(0.01, cfg), InfeasibleDesign);
}

TEST(Enhancement, TableAtom) {
  const AtomSpec a = table_atom();
  const double k0 = absorption_ratio(a, {true, true});
  EXPECT_EQ(required_enhancement(k0, a), 1u);
  EXPECT_NEAR(static_cast<double>(required_enhancement(22.0, a)), 471.0, 47.1);
  EXPECT_NEAR(static_cast<double>(required_enhancement(120.0, a)), 2567.0, 256.7);
  // equal-frequency idealization for comparison
  EXPECT_EQ(static_cast<std::uint64_t>(std::ceil(120.0 / (3.0 / (2.0 * pi * pi * pi)))), 2481u);
}

TEST(Enhancement, UnboundedRatioNeedsNone) {
  // equal detunings for both photons and a mass that cancels the bracket: no scattering at all
  AtomSpec a = AtomSpec::optical(1e-3 * 2.0 * pi, 0.01, 0.01, 1e-2, 1.0);
  a.m = a.detuning() / (a.E12 * a.E12 * a.ell * a.ell);
  EXPECT_LT(one_photon_scattering_prob(a, true, true), 1e-20);
  EXPECT_EQ(required_enhancement(1e6, a), 1u);
}

TEST(Tables, RowsCertifiedAndReproducible) {
  const TableSet a = generate_tables(), b = generate_tables();
  ASSERT_EQ(a.overview.size(), 9u);
  for (std::size_t i = 0; i < a.overview.size(); ++i) {
    expect_certified(a.overview[i]);
    EXPECT_EQ(a.overview[i].kappa, b.overview[i].kappa);
    EXPECT_EQ(a.overview[i].enhancement, b.overview[i].enhancement);
  }
  EXPECT_EQ(a.balanced[0].N, 10u);
  EXPECT_NEAR(static_cast<double>(a.balanced[0].enhancement), 257.0, 25.7);
  EXPECT_EQ(std::round(a.small_N[2].p2_seg * 1000) / 10, 99.9);
}

TEST(Curve, EndpointsAndParallel) {
  const auto c = error_curve(1000.0, 1000, 0.0, 0.14, 15);
  ASSERT_EQ(c.size(), 15u);
  EXPECT_NEAR(c.front().p2_exact, 1.0, 1e-12);
  EXPECT_NEAR(c.front().p1_exact, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(c.back().xi2, 0.14);
  const auto s = error_curve_serial(1000.0, 1000, 0.0, 0.14, 15);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].p1_exact, s[i].p1_exact);
  EXPECT_THROW(error_curve(1000.0, 1000, 0.0, 0.14, 1), std::invalid_argument);
}

TEST(Curve, CrossingNearOptimalRate) {
  const Crossing x = curve_crossing(1000.0, 1000, 1e-3, 0.14);
  EXPECT_NEAR(x.xi2, optimal_rates(1000.0, 1000, 2).xi2, 0.001);
}

TEST(SplitterAngle, DefaultNearlyOptimal) {
  EXPECT_NEAR(optimal_eps_ratio(100.0, 100, 2), 1.0, 0.02);
  EXPECT_NEAR(optimal_eps_ratio(100.0, 100, 3), 1.0, 0.02);
}
