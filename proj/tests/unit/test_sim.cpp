#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "clogfuse/sim/ensemble_io.hpp"
#include "clogfuse/sim/prior.hpp"
#include "clogfuse/sim/simulator.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"
#include "support/generators.hpp"

using namespace clogfuse;
using namespace clogfuse::sim;

namespace {

InputVector input(double k, double a, double tau0, double m1 = 1.0, double m2 = 1.0) {
  InputVector x(5);
  x << k, a, tau0, m1, m2;
  return x;
}

MaintenanceSchedule no_events() { return {}; }

}  // namespace

TEST(TimeGrid, MonthlyGridEndsExactlyAtHorizon) {
  const auto g = default_grid();
  EXPECT_EQ(g.size(), 481u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 40.0);
  EXPECT_EQ(g[12], 1.0);
}

TEST(TimeGrid, RejectsNonIncreasingTimes) {
  EXPECT_THROW(TimeGrid({0.0, 1.0, 1.0}), ConfigError);
  EXPECT_THROW(TimeGrid(std::vector<double>{}), ConfigError);
  EXPECT_THROW(TimeGrid({-1.0, 0.0}), ConfigError);
}

TEST(TimeGrid, Lookup) {
  const TimeGrid g({0.0, 1.0, 2.0, 3.0});
  EXPECT_EQ(g.first_at_or_after(1.0), 1u);
  EXPECT_EQ(g.first_at_or_after(1.2), 2u);
  EXPECT_EQ(g.first_at_or_after(3.5), 4u);
  EXPECT_EQ(g.interval_of(2.5), 2u);
  EXPECT_EQ(g.interval_of(3.0), 2u);
}

TEST(Schedule, ValidationRejectsBadEvents) {
  const auto g = default_grid();
  auto s = default_schedule();
  EXPECT_NO_THROW(s.validate(g));

  auto late = s;
  late.cleanings.push_back({45.0, 0.5, CleaningKind::curative});
  EXPECT_THROW(late.validate(g), ConfigError);

  auto eff = s;
  eff.cleanings[0].efficiency = 1.5;
  EXPECT_THROW(eff.validate(g), ConfigError);

  auto order = s;
  std::swap(order.cleanings[0], order.cleanings[1]);
  EXPECT_THROW(order.validate(g), ConfigError);

  auto gap = s;
  gap.regimes[1].start = 21.0;
  EXPECT_THROW(gap.validate(g), ConfigError);

  auto overlap = s;
  overlap.regimes[1].start = 19.0;
  EXPECT_THROW(overlap.validate(g), ConfigError);

  auto short_cover = s;
  short_cover.regimes[1].end = 39.0;
  EXPECT_THROW(short_cover.validate(g), ConfigError);

  auto neg = s;
  neg.regimes[0].rate_multiplier = 0.0;
  EXPECT_THROW(neg.validate(g), ConfigError);

  auto same_point = s;
  same_point.cleanings = {{15.01, 0.5, CleaningKind::preventive}, {15.02, 0.5, CleaningKind::preventive}};
  EXPECT_THROW(same_point.validate(g), ConfigError);
}

TEST(Simulator, ZeroRateFreezesState) {
  const auto g = default_grid();
  const auto traj = simulate_trajectory(input(0.0, 1.5, 0.2), no_events(), g);
  for (Eigen::Index j = 0; j < traj.values.size(); ++j) EXPECT_EQ(traj.values[j], 0.2);
}

TEST(Simulator, FullCleaningResetsAtFirstGridPointAfterEvent) {
  const auto g = default_grid();
  MaintenanceSchedule s;
  s.cleanings.push_back({10.0, 1.0, CleaningKind::curative});
  const auto traj = simulate_trajectory(input(0.05, 1.0, 0.1), s, g);
  const auto j = g.first_at_or_after(10.0);
  EXPECT_EQ(traj.values[static_cast<Eigen::Index>(j)], 0.0);
  EXPECT_GT(traj.values[static_cast<Eigen::Index>(j - 1)], 0.1);
  EXPECT_GT(traj.pre_cleaning[0], traj.values[static_cast<Eigen::Index>(j - 1)]);
}

TEST(Simulator, OffGridCleaningSnapsForward) {
  const auto g = default_grid();
  MaintenanceSchedule s;
  s.cleanings.push_back({10.01, 0.5, CleaningKind::preventive});
  const auto traj = simulate_trajectory(input(0.05, 1.0, 0.1), s, g);
  ASSERT_EQ(traj.marks.size(), 1u);
  EXPECT_EQ(traj.marks[0].index, g.first_at_or_after(10.01));
  EXPECT_DOUBLE_EQ(traj.values[static_cast<Eigen::Index>(traj.marks[0].index)], 0.5 * traj.pre_cleaning[0]);
}

TEST(Simulator, MatchesClosedFormForLinearKinetics) {
  const auto g = default_grid();
  const auto traj = simulate_trajectory(input(0.1, 1.0, 0.0), no_events(), g);
  for (std::size_t j = 0; j < g.size(); ++j)
    EXPECT_NEAR(traj.values[static_cast<Eigen::Index>(j)], 1.0 - std::exp(-0.1 * g[j]), 1e-6) << "t=" << g[j];
}

TEST(Simulator, MatchesClosedFormForQuadraticKinetics) {
  // a = 2: 1/(1-tau) = 1/(1-tau0) + k t.
  const auto g = default_grid();
  const double k = 0.04, tau0 = 0.05;
  const auto traj = simulate_trajectory(input(k, 2.0, tau0), no_events(), g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double expected = 1.0 - 1.0 / (1.0 / (1.0 - tau0) + k * g[j]);
    EXPECT_NEAR(traj.values[static_cast<Eigen::Index>(j)], expected, 1e-9);
  }
}

TEST(Simulator, DoublingMultiplierDoublesLogIncrement) {
  const auto g = default_grid();
  auto base = default_schedule();
  base.cleanings.clear();
  auto doubled = base;
  doubled.regimes[1].rate_multiplier *= 2.0;
  const auto x = input(0.03, 1.0, 0.0);
  const auto t1 = simulate_trajectory(x, base, g);
  const auto t2 = simulate_trajectory(x, doubled, g);
  const auto i20 = static_cast<Eigen::Index>(g.first_at_or_after(20.0));
  const auto i40 = static_cast<Eigen::Index>(g.size() - 1);
  auto increment = [&](const DegradationTrajectory& t) {
    return -std::log(1.0 - t.values[i40]) + std::log(1.0 - t.values[i20]);
  };
  EXPECT_NEAR(increment(t2) / increment(t1), 2.0, 1e-9);
  // The regime's input multiplier acts the same way as the schedule's.
  const auto t3 = simulate_trajectory(input(0.03, 1.0, 0.0, 1.0, 2.0), base, g);
  EXPECT_NEAR(increment(t3) / increment(t1), 2.0, 1e-9);
}

TEST(Simulator, RejectsEventsOutsideGrid) {
  const TimeGrid g = TimeGrid::uniform(0.0, 10.0, 0.5);
  auto s = default_schedule();  // cleanings at 15 and 28
  EXPECT_THROW(simulate_trajectory(input(0.02, 1.0, 0.0), s, g), ConfigError);
}

TEST(Simulator, RejectsShortOrInvalidInputs) {
  const auto g = default_grid();
  EXPECT_THROW(simulate_trajectory(InputVector::Constant(2, 0.1), no_events(), g), ConfigError);
  EXPECT_THROW(simulate_trajectory(input(-0.1, 1.0, 0.0), no_events(), g), ConfigError);
  EXPECT_THROW(simulate_trajectory(input(0.1, 1.0, 1.5), no_events(), g), ConfigError);
}

TEST(Simulator, NonFiniteDynamicsReportTime) {
  const auto g = default_grid();
  try {
    simulate_trajectory(input(std::numeric_limits<double>::max(), 1.0, 0.0), no_events(), g);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("t="), std::string::npos) << e.what();
  }
}

TEST(Simulator, BitIdenticalAcrossRuns) {
  const auto g = default_grid();
  const auto x = input(0.03, 1.4, 0.02, 0.9, 1.5);
  const auto a = simulate_trajectory(x, default_schedule(), g);
  const auto b = simulate_trajectory(x, default_schedule(), g);
  EXPECT_TRUE((a.values.array() == b.values.array()).all());
}

TEST(Prior, EmptyDraw) { EXPECT_TRUE(sample_prior(default_prior(), 0, 1).empty()); }

TEST(Prior, DegenerateSupport) {
  PriorSpec p{{{0.3, 0.3}, {0.3, 0.3}, {0.3, 0.3}}, {}};
  for (const auto& x : sample_prior(p, 50, 9))
    for (Eigen::Index j = 0; j < x.size(); ++j) EXPECT_EQ(x[j], 0.3);
}

TEST(Prior, UniformMeanWithinThreeSigma) {
  PriorSpec p{{{0, 1}, {0, 1}, {0, 1}}, {}};
  const auto xs = sample_prior(p, 10000, 2024);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
  for (const auto& x : xs) mean += x;
  mean /= 10000.0;
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(mean[j], 0.5, 0.0087);
}

TEST(Prior, DrawDependsOnlyOnSeedAndIndex) {
  const auto a = sample_prior(default_prior(), 5, 77);
  const auto b = sample_prior(default_prior(), 50, 77);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE((a[i].array() == b[i].array()).all());
  EXPECT_FALSE((sample_prior(default_prior(), 1, 78)[0].array() == a[0].array()).all());
}

TEST(Prior, DrawsWithinBounds) {
  const auto p = default_prior();
  for (const auto& x : sample_prior(p, 1000, 3)) EXPECT_TRUE(p.contains(x));
}

TEST(Prior, ValidationRejectsMalformedSpec) {
  EXPECT_THROW((PriorSpec{{}, {}}.validate()), ConfigError);
  EXPECT_THROW((PriorSpec{{{1.0, 0.0}}, {}}.validate()), ConfigError);
  EXPECT_THROW((PriorSpec{{{0.0, 1.0}}, {"a", "b"}}.validate()), ConfigError);
}

TEST(Ensemble, SingletonEqualsTrajectory) {
  const auto g = default_grid();
  const std::vector<InputVector> xs{input(0.02, 1.2, 0.01)};
  const auto ens = run_ensemble(xs, default_schedule(), g);
  const auto t = simulate_trajectory(xs[0], default_schedule(), g);
  ASSERT_EQ(ens.size(), 1u);
  EXPECT_TRUE((ens.values.col(0).array() == t.values.array()).all());
  EXPECT_EQ(ens.provenance, Provenance::prior);
}

TEST(Ensemble, DuplicatedInputsGiveIdenticalMembers) {
  const auto g = default_grid();
  const std::vector<InputVector> xs{input(0.02, 1.2, 0.01), input(0.02, 1.2, 0.01)};
  const auto ens = run_ensemble(xs, default_schedule(), g);
  EXPECT_TRUE((ens.values.col(0).array() == ens.values.col(1).array()).all());
}

TEST(Ensemble, EnvelopeContainsMeanInputTrajectory) {
  // Only k varies, so trajectories are ordered by k and the mean-input
  // trajectory must lie inside the min/max envelope at every time.
  PriorSpec p{{{0.01, 0.05}, {1.5, 1.5}, {0.02, 0.02}, {1.0, 1.0}, {1.4, 1.4}}, {}};
  const auto g = default_grid();
  const auto ens = run_ensemble(sample_prior(p, 200, 5), default_schedule(), g);
  const auto mid = simulate_trajectory(p.mean(), default_schedule(), g);
  for (Eigen::Index j = 0; j < ens.values.rows(); ++j) {
    EXPECT_LE(ens.values.row(j).minCoeff(), mid.values[j]);
    EXPECT_GE(ens.values.row(j).maxCoeff(), mid.values[j]);
  }
}

TEST(Ensemble, ErrorNamesMember) {
  const auto g = default_grid();
  std::vector<InputVector> xs{input(0.02, 1.0, 0.0), input(-1.0, 1.0, 0.0)};
  try {
    run_ensemble(xs, default_schedule(), g);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("member 1"), std::string::npos) << e.what();
  }
}

TEST(Ensemble, IndependentOfThreadCount) {
  const auto g = default_grid();
  const auto xs = sample_prior(default_prior(), 64, 11);
  set_max_threads(1);
  const auto a = run_ensemble(xs, default_schedule(), g);
  set_max_threads(4);
  const auto b = run_ensemble(xs, default_schedule(), g);
  set_max_threads(0);
  EXPECT_TRUE((a.values.array() == b.values.array()).all());
  EXPECT_TRUE((a.pre_cleaning.array() == b.pre_cleaning.array()).all());
}

TEST(Ensemble, CsvHasTimeAndOneColumnPerMember) {
  const auto g = TimeGrid::uniform(0.0, 2.0, 0.5);
  const std::vector<InputVector> xs{input(0.1, 1.0, 0.0), input(0.2, 1.0, 0.0), input(0.0, 1.0, 0.3)};
  const auto ens = run_ensemble(xs, {}, g);
  std::ostringstream out;
  write_ensemble_csv(out, ens);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "time,member_0,member_1,member_2");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
  }
  EXPECT_EQ(rows, g.size());
}

TEST(SimProperty, RandomTrajectoriesSatisfyInvariants) {
  auto g = rng::substream(20240101, {1});
  for (int trial = 0; trial < 300; ++trial) {
    const auto grid = gen::random_grid(g);
    const auto schedule = gen::random_schedule(g, grid);
    const auto x = gen::random_input(g);
    const auto traj = simulate_trajectory(x, schedule, grid);
    const auto v = invariant_violations(traj);
    ASSERT_TRUE(v.empty()) << "trial " << trial << ": " << v.front();
  }
}

TEST(Trajectory, InvariantCheckerCatchesViolations) {
  const auto g = default_grid();
  auto traj = simulate_trajectory(input(0.03, 1.0, 0.0), default_schedule(), g);
  ASSERT_TRUE(invariant_violations(traj).empty());
  auto bad = traj;
  bad.values[5] = bad.values[4] - 0.01;
  EXPECT_FALSE(invariant_violations(bad).empty());
  bad = traj;
  bad.values[static_cast<Eigen::Index>(bad.marks[0].index)] += 0.01;
  EXPECT_FALSE(invariant_violations(bad).empty());
  bad = traj;
  bad.values[3] = 1.2;
  EXPECT_FALSE(invariant_violations(bad).empty());
}

TEST(Trajectory, InterpolationIsLinearAndChecksSpan) {
  const TimeGrid g({0.0, 1.0, 2.0});
  Eigen::VectorXd v(3);
  v << 0.0, 0.2, 0.6;
  EXPECT_DOUBLE_EQ(interpolate(g, v, 1.5), 0.4);
  EXPECT_DOUBLE_EQ(interpolate(g, v, 2.0), 0.6);
  EXPECT_THROW(interpolate(g, v, 2.5), ConfigError);
}
