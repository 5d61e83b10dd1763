#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "clogfuse/data/synthesize.hpp"
#include "clogfuse/fusion/assimilate.hpp"
#include "clogfuse/fusion/bmu.hpp"
#include "clogfuse/fusion/enks.hpp"
#include "clogfuse/fusion/isotonic.hpp"
#include "clogfuse/fusion/observation_operator.hpp"
#include "clogfuse/fusion/windows.hpp"
#include "clogfuse/sim/simulator.hpp"
#include "clogfuse/util/error.hpp"
#include "support/generators.hpp"

using namespace clogfuse;
using namespace clogfuse::fusion;

namespace {

const sim::TimeGrid& two_points() {
  static const sim::TimeGrid g({0.0, 1.0});
  return g;
}

/// y(x) = x at both grid times.
Eigen::MatrixXd identity_forward(std::span<const InputVector> xs) {
  Eigen::MatrixXd y(2, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) y.col(static_cast<Eigen::Index>(i)).setConstant(xs[i][0]);
  return y;
}

data::Dataset single(double t, double y, double sigma) {
  return data::Dataset{{{"TVE", {t}, {y}, sigma}}};
}

/// Gaussian two-point ensemble with the given mean and covariance.
sim::Ensemble gaussian_ensemble(const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov, std::size_t n,
                                std::uint64_t seed) {
  auto g = rng::substream(seed, {});
  std::normal_distribution<double> n01;
  const Eigen::Matrix2d L = cov.llt().matrixL();
  sim::Ensemble e;
  e.grid = two_points();
  e.values.resize(2, static_cast<Eigen::Index>(n));
  e.pre_cleaning.resize(0, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < e.values.cols(); ++i) {
    const Eigen::Vector2d z(n01(g), n01(g));
    e.values.col(i) = mean + L * z;
  }
  return e;
}

Eigen::Matrix2d sample_cov(const Eigen::MatrixXd& v) {
  const Eigen::MatrixXd a = v.colwise() - v.rowwise().mean();
  return a * a.transpose() / static_cast<double>(v.cols() - 1);
}

}  // namespace

TEST(Bmu, EmptyDatasetGivesUniformWeights) {
  const auto xs = sim::sample_prior({{{0.0, 1.0}}, {}}, 200, 1);
  const auto w = importance_weights(xs, two_points(), identity_forward, {}, 200, 2);
  EXPECT_NEAR(w.ess, 200.0, 1e-9);
  const auto nw = w.normalized_weights();
  for (Eigen::Index i = 0; i < nw.size(); ++i) EXPECT_NEAR(nw[i], 1.0 / 200.0, 1e-15);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(w.resampled_indices[i], i);
}

TEST(Bmu, HugeNoiseGivesNearlyUniformWeights) {
  const auto xs = sim::sample_prior({{{0.0, 1.0}}, {}}, 500, 3);
  const auto w = importance_weights(xs, two_points(), identity_forward, single(0.5, 0.9, 1e6), 500, 4);
  const auto nw = w.normalized_weights();
  for (Eigen::Index i = 0; i < nw.size(); ++i) EXPECT_NEAR(nw[i] * 500.0, 1.0, 1e-6);
}

TEST(Bmu, QuadratureOracle) {
  // Posterior of U[0,1] under y = x + N(0, 0.1^2), y* = 0.5.
  double z = 0.0, m1 = 0.0, m2 = 0.0;
  const int K = 200000;
  for (int k = 0; k < K; ++k) {
    const double x = (k + 0.5) / K;
    const double w = std::exp(-(x - 0.5) * (x - 0.5) / (2 * 0.01));
    z += w;
    m1 += w * x;
    m2 += w * x * x;
  }
  const double mean = m1 / z;
  const double sd = std::sqrt(m2 / z - mean * mean);
  EXPECT_NEAR(sd, 0.0999, 1e-4);

  const auto xs = sim::sample_prior({{{0.0, 1.0}}, {}}, 40000, 5);
  const auto w = importance_weights(xs, two_points(), identity_forward, single(0.5, 0.5, 0.1), 40000, 6);
  EXPECT_NEAR(w.weighted_mean()[0], mean, 0.01);
  EXPECT_NEAR(w.weighted_std()[0] / sd, 1.0, 0.1);
  EXPECT_GE(w.ess, 1.0);
  EXPECT_LE(w.ess, 40000.0);
}

TEST(Bmu, AllWeightsImpossibleReportsMisfit) {
  const auto xs = sim::sample_prior({{{0.0, 0.4}}, {}}, 10, 7);
  try {
    importance_weights(xs, two_points(), identity_forward, single(0.5, 0.9, 0.0), 10, 8);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("misfit"), std::string::npos) << e.what();
  }
}

TEST(Bmu, LowEssWarns) {
  const auto xs = sim::sample_prior({{{0.0, 1.0}}, {}}, 100, 9);
  BmuOptions opts;
  opts.ess_floor_fraction = 0.5;
  const auto w = importance_weights(xs, two_points(), identity_forward, single(0.5, 0.5, 0.01), 100, 10, opts);
  EXPECT_LT(w.ess, 50.0);
  ASSERT_FALSE(w.warnings.empty());
}

TEST(Bmu, PosteriorRequiresMatchingBounds) {
  const sim::PriorSpec p{{{0.0, 1.0}}, {}};
  const auto xs = sim::sample_prior(p, 10, 1);
  const auto s = surrogate::fit_vpce(xs, identity_forward(xs), p, 1);
  const sim::PriorSpec other{{{0.0, 2.0}}, {}};
  EXPECT_THROW(bmu_posterior(other, s, two_points(), {}, 10, 1), ConfigError);
  EXPECT_NO_THROW(bmu_posterior(p, s, two_points(), {}, 10, 1));
}

TEST(BmuProperty, TruthSurrogateConcentrates) {
  auto g = rng::substream(121, {});
  for (int trial = 0; trial < 20; ++trial) {
    const double y = gen::uniform(g, 0.1, 0.9);
    const double sigma = gen::uniform(g, 0.02, 0.2);  // below the prior output std 0.289
    const auto xs = sim::sample_prior({{{0.0, 1.0}}, {}}, 2000, static_cast<std::uint64_t>(trial));
    const auto w = importance_weights(xs, two_points(), identity_forward, single(1.0, y, sigma), 2000, 1);
    if (w.ess > 2.0) {
      EXPECT_LT(w.weighted_std()[0], 1.0 / std::sqrt(12.0));
    }
  }
}

TEST(SystematicResample, Counts) {
  Eigen::VectorXd w(4);
  w << 0.1, 0.2, 0.3, 0.4;
  const auto idx = systematic_resample(w, 1000, 3);
  std::vector<int> counts(4, 0);
  for (auto i : idx) ++counts[i];
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(counts[static_cast<std::size_t>(k)], 1000 * w[k], 1.0);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
}

TEST(Isotonic, PoolAdjacentViolators) {
  std::vector<double> a{3, 1, 2};
  pool_adjacent_violators(a);
  EXPECT_EQ(a, (std::vector<double>{2, 2, 2}));
  std::vector<double> b{1, 3, 2, 4};
  pool_adjacent_violators(b);
  EXPECT_EQ(b, (std::vector<double>{1, 2.5, 2.5, 4}));
  std::vector<double> c{0.1, 0.2, 0.3};
  pool_adjacent_violators(c);
  EXPECT_EQ(c, (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(IsotonicProperty, MonotoneMeanPreservingAndOptimal) {
  auto g = rng::substream(222, {});
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform_int(g, 1, 30);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = gen::uniform(g, -1.0, 1.0);
    auto fit = y;
    pool_adjacent_violators(fit);
    ASSERT_TRUE(std::is_sorted(fit.begin(), fit.end()));
    EXPECT_NEAR(std::accumulate(fit.begin(), fit.end(), 0.0), std::accumulate(y.begin(), y.end(), 0.0), 1e-12);
    auto again = fit;
    pool_adjacent_violators(again);
    EXPECT_EQ(again, fit);
    double sse = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sse += (fit[i] - y[i]) * (fit[i] - y[i]);
    // Any other monotone candidate (a sorted random vector) does no better.
    for (int k = 0; k < 5; ++k) {
      std::vector<double> cand(y.size());
      for (auto& v : cand) v = gen::uniform(g, -1.0, 1.0);
      std::sort(cand.begin(), cand.end());
      double other = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) other += (cand[i] - y[i]) * (cand[i] - y[i]);
      EXPECT_LE(sse, other + 1e-12);
    }
  }
}

TEST(IsotonicProperty, ProjectionRestoresInvariants) {
  auto g = rng::substream(333, {});
  const auto grid = sim::default_grid();
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen::random_schedule(g, grid);
    auto traj = sim::simulate_trajectory(gen::random_input(g), s, grid);
    for (Eigen::Index j = 0; j < traj.values.size(); ++j) traj.values[j] += noise(g);
    for (Eigen::Index c = 0; c < traj.pre_cleaning.size(); ++c) traj.pre_cleaning[c] += noise(g);
    project_physical(traj.values, traj.pre_cleaning, traj.marks);
    const auto v = sim::invariant_violations(traj);
    ASSERT_TRUE(v.empty()) << v.front();
  }
}

TEST(Windows, BoundaryObservationBelongsToEarlierWindow) {
  const auto ws = windows_from_boundaries({0.0, 15.0, 28.0, 40.0});
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_TRUE(ws[0].contains(0.0));
  EXPECT_TRUE(ws[0].contains(15.0));
  EXPECT_FALSE(ws[1].contains(15.0));
  EXPECT_TRUE(ws[1].contains(15.0001));
  EXPECT_TRUE(ws[2].contains(40.0));
  const data::Dataset ds{{{"TVE", {0.0, 15.0, 28.0, 30.0}, {0.1, 0.2, 0.1, 0.2}, 0.02}}};
  EXPECT_EQ(window_observations(ws[0], ds).size(), 2u);
  EXPECT_EQ(window_observations(ws[1], ds).size(), 1u);
  EXPECT_EQ(window_observations(ws[2], ds).size(), 1u);
}

TEST(Windows, DefaultBoundariesAreCleanings) {
  const auto ws = windows_at_cleanings(sim::default_schedule(), sim::default_grid());
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[0].t_start, 0.0);
  EXPECT_EQ(ws[0].t_end, 15.0);
  EXPECT_EQ(ws[1].t_end, 28.0);
  EXPECT_EQ(ws[2].t_end, 40.0);
}

TEST(Windows, Validation) {
  EXPECT_NO_THROW(validate_windows(windows_from_boundaries({0, 10, 40}), 0, 40));
  EXPECT_THROW(validate_windows(windows_from_boundaries({0, 10, 30}), 0, 40), ConfigError);
  EXPECT_THROW(windows_from_boundaries({0, 10, 10, 40}), ConfigError);
  EXPECT_THROW(windows_from_boundaries({0}), ConfigError);
  auto ws = windows_from_boundaries({0, 10, 40});
  ws[1].t_start = 11;
  EXPECT_THROW(validate_windows(ws, 0, 40), ConfigError);
}

TEST(Enks, NoObservationsLeavesEnsembleUnchanged) {
  const auto e = gaussian_ensemble({0.3, 0.5}, Eigen::Matrix2d::Identity() * 0.01, 50, 1);
  const auto out = enks_window(e, {0.0, 1.0, 0}, {}, 1);
  EXPECT_TRUE((out.values.array() == e.values.array()).all());
}

TEST(Enks, ZeroSpreadGivesZeroGain) {
  sim::Ensemble e;
  e.grid = two_points();
  e.values = Eigen::MatrixXd::Constant(2, 30, 0.4);
  e.pre_cleaning.resize(0, 30);
  const auto out = enks_window(e, {0.0, 1.0, 0}, single(1.0, 0.8, 0.05), 3);
  EXPECT_TRUE((out.values.array() == e.values.array()).all());
  EXPECT_EQ(out.provenance, sim::Provenance::enks);
  EXPECT_FALSE(out.member_inputs);
}

TEST(Enks, RefusesZeroNoiseAndTinyEnsembles) {
  const auto e = gaussian_ensemble({0.3, 0.5}, Eigen::Matrix2d::Identity() * 0.01, 50, 2);
  EXPECT_THROW(enks_window(e, {0.0, 1.0, 0}, single(1.0, 0.5, 0.0), 1), ConfigError);
  const auto one = gaussian_ensemble({0.3, 0.5}, Eigen::Matrix2d::Identity() * 0.01, 1, 2);
  EXPECT_THROW(enks_window(one, {0.0, 1.0, 0}, single(1.0, 0.5, 0.1), 1), ConfigError);
}

TEST(Enks, MatchesExactKalmanConditioning) {
  const Eigen::Vector2d m(0.3, 0.5);
  Eigen::Matrix2d C;
  C << 0.01, 0.006, 0.006, 0.02;
  const double sigma = 0.05, y = 0.6;
  const Eigen::Vector2d K = C.col(1) / (C(1, 1) + sigma * sigma);
  const Eigen::Vector2d m_post = m + K * (y - m[1]);
  const Eigen::Matrix2d C_post = C - K * C.row(1);

  const std::size_t N = 10000;
  const auto e = gaussian_ensemble(m, C, N, 17);
  EnksOptions opts;
  opts.project = false;
  const auto out = enks_window(e, {0.0, 1.0, 0}, single(1.0, y, sigma), 5, opts);
  const Eigen::Vector2d mean = out.values.rowwise().mean();
  const double tol = 5.0 / std::sqrt(static_cast<double>(N));
  EXPECT_LT((mean - m_post).norm() / m_post.norm(), tol);
  EXPECT_LT((sample_cov(out.values) - C_post).norm() / C_post.norm(), tol);
}

TEST(Enks, DeterministicPerSeed) {
  const auto e = gaussian_ensemble({0.3, 0.5}, Eigen::Matrix2d::Identity() * 0.01, 100, 4);
  const auto a = enks_window(e, {0.0, 1.0, 0}, single(1.0, 0.6, 0.05), 9);
  const auto b = enks_window(e, {0.0, 1.0, 0}, single(1.0, 0.6, 0.05), 9);
  const auto c = enks_window(e, {0.0, 1.0, 0}, single(1.0, 0.6, 0.05), 10);
  EXPECT_TRUE((a.values.array() == b.values.array()).all());
  EXPECT_FALSE((a.values.array() == c.values.array()).all());
}

namespace {

AssimilationConfig small_config() {
  AssimilationConfig c;
  c.ensemble_size = 80;
  c.surrogate.degree = 2;
  c.present_time = 35.0;
  return c;
}

}  // namespace

TEST(Assimilate, EmptyDatasetReturnsPrior) {
  const auto r = assimilate(sim::default_prior(), sim::default_schedule(), sim::default_grid(), {},
                            small_config(), 3);
  EXPECT_TRUE((r.final_ensemble().values.array() == r.prior.values.array()).all());
  EXPECT_EQ(r.enks.size(), 3u);
}

TEST(Assimilate, SyntheticScenarioStaysPhysicalAndImproves) {
  const auto prior = sim::default_prior();
  const auto schedule = sim::default_schedule();
  const auto grid = sim::default_grid();
  const auto truth = sim::simulate_trajectory(sim::sample_prior(prior, 1, 77)[0], schedule, grid);
  const auto ds = data::synthesize_scenario(truth, {}, 78);
  for (auto forward : {ForwardMode::surrogate, ForwardMode::simulator}) {
    auto cfg = small_config();
    cfg.forward = forward;
    const auto r = assimilate(prior, schedule, grid, ds, cfg, 79);
    for (std::size_t i = 0; i < r.final_ensemble().size(); ++i) {
      const auto v = sim::invariant_violations(r.final_ensemble().member(i), 1e-10);
      ASSERT_TRUE(v.empty()) << v.front();
    }
    const auto obs = flatten(ds);
    Eigen::VectorXd ref(static_cast<Eigen::Index>(obs.size()));
    for (std::size_t k = 0; k < obs.size(); ++k) ref[static_cast<Eigen::Index>(k)] = truth.value_at(obs[k].time);
    EXPECT_LT(mean_rmse(r.final_ensemble(), obs, ref), mean_rmse(r.prior, obs, ref));
  }
}

TEST(Assimilate, ErrorsAreStageTagged) {
  const data::Dataset late{{{"TVE", {45.0}, {0.2}, 0.02}}};
  auto cfg = small_config();
  cfg.present_time.reset();
  try {
    assimilate(sim::default_prior(), sim::default_schedule(), sim::default_grid(), late, cfg, 1);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "setup");
  }
  const data::Dataset exact{{{"TVE", {5.0}, {0.9}, 0.0}}};
  try {
    assimilate(sim::default_prior(), sim::default_schedule(), sim::default_grid(), exact, cfg, 1);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "bmu");
  }
}
