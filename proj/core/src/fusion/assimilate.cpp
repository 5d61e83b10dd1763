#include "clogfuse/fusion/assimilate.hpp"

#include "clogfuse/fusion/isotonic.hpp"
#include "clogfuse/surrogate/multi_index.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::fusion {

sim::Ensemble ensemble_from_predictions(const sim::TimeGrid& grid,
                                        const std::vector<sim::CleaningMark>& marks,
                                        const Eigen::MatrixXd& values,
                                        std::vector<InputVector> inputs,
                                        sim::Provenance provenance) {
  const auto C = static_cast<Eigen::Index>(marks.size());
  const auto N = values.cols();
  sim::Ensemble ens{grid, marks, values, Eigen::MatrixXd(C, N), std::move(inputs), provenance};
  for (Eigen::Index c = 0; c < C; ++c) {
    const auto& mk = marks[static_cast<std::size_t>(c)];
    const auto j = static_cast<Eigen::Index>(mk.index);
    if (mk.efficiency < 1.0)
      ens.pre_cleaning.row(c) = values.row(j) / (1.0 - mk.efficiency);
    else
      ens.pre_cleaning.row(c) = values.row(j > 0 ? j - 1 : j);
  }
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    const auto col = static_cast<Eigen::Index>(i);
    Eigen::VectorXd v = ens.values.col(col);
    Eigen::VectorXd pre = ens.pre_cleaning.col(col);
    project_physical(v, pre, ens.marks);
    ens.values.col(col) = v;
    ens.pre_cleaning.col(col) = pre;
  });
  return ens;
}

namespace {

template <typename F>
auto run_stage(const std::string& stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

AssimilationResult assimilate(const sim::PriorSpec& prior, const sim::MaintenanceSchedule& schedule,
                              const sim::TimeGrid& grid, const data::Dataset& ds,
                              const AssimilationConfig& config, std::uint64_t seed) {
  AssimilationResult result;

  const data::Dataset used = run_stage("setup", [&] {
    prior.validate();
    schedule.validate(grid);
    if (config.ensemble_size < 2) throw ConfigError("ensemble size must be >= 2");
    result.windows = config.windows.empty() ? windows_at_cleanings(schedule, grid) : config.windows;
    const double span_end = config.present_time ? std::min(*config.present_time, grid.back()) : grid.back();
    validate_windows(result.windows, grid.front(), span_end);
    data::Dataset d = config.present_time ? ds.up_to(*config.present_time) : ds;
    for (const auto& g : d.groups) {
      g.validate();
      for (double t : g.times)
        if (!grid.contains(t))
          throw ConfigError("observation at t=" + std::to_string(t) + " in group '" + g.label +
                            "' lies outside the grid span");
    }
    return d;
  });

  const auto marks = schedule.marks(grid);
  ForwardModel forward;
  std::function<sim::Ensemble(std::vector<InputVector>, sim::Provenance)> build;

  result.prior = run_stage("prior", [&] {
    if (config.forward == ForwardMode::surrogate) {
      const std::size_t P = surrogate::total_degree_size(prior.dim(), config.surrogate.degree);
      const std::size_t n_design = config.surrogate.design_size ? config.surrogate.design_size : 2 * P;
      const auto xd = sim::sample_prior(prior, n_design, rng::derive(seed, "design"));
      const auto yd = sim::run_ensemble(xd, schedule, grid, config.simulator);
      result.surrogate = surrogate::fit_vpce(xd, yd, prior, config.surrogate.degree);
      const auto* s = &*result.surrogate;
      forward = [s](std::span<const InputVector> xs) { return surrogate::predict_many(*s, xs); };
      build = [&grid, &marks, forward](std::vector<InputVector> xs, sim::Provenance p) {
        const Eigen::MatrixXd v = forward(xs);
        return ensemble_from_predictions(grid, marks, v, std::move(xs), p);
      };
    } else {
      forward = [&](std::span<const InputVector> xs) {
        return sim::run_ensemble(xs, schedule, grid, config.simulator).values;
      };
      build = [&](std::vector<InputVector> xs, sim::Provenance p) {
        auto e = sim::run_ensemble(xs, schedule, grid, config.simulator);
        e.provenance = p;
        return e;
      };
    }
    auto xs = sim::sample_prior(prior, config.ensemble_size, rng::derive(seed, "prior"));
    return build(std::move(xs), sim::Provenance::prior);
  });

  result.bmu_sample = run_stage("bmu", [&] {
    return importance_weights(*result.prior.member_inputs, grid, forward, used, config.ensemble_size,
                              rng::derive(seed, "bmu-resample"), config.bmu);
  });
  for (const auto& w : result.bmu_sample.warnings) result.warnings.push_back(w);
  result.bmu = run_stage("bmu", [&] { return build(result.bmu_sample.resampled, sim::Provenance::bmu); });

  const std::uint64_t enks_seed = rng::derive(seed, "enks");
  const sim::Ensemble* current = &result.bmu;
  result.enks.reserve(result.windows.size());
  for (const auto& w : result.windows) {
    result.enks.push_back(run_stage("enks_w" + std::to_string(w.index), [&] {
      auto e = enks_window(*current, w, used, enks_seed, config.enks);
      e.provenance = sim::Provenance::enks;
      e.member_inputs.reset();
      return e;
    }));
    current = &result.enks.back();
  }
  return result;
}

}  // namespace clogfuse::fusion
