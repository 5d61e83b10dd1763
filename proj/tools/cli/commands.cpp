#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "clogfuse/data/observation_io.hpp"
#include "clogfuse/data/synthesize.hpp"
#include "clogfuse/data/validate.hpp"
#include "clogfuse/fusion/observation_operator.hpp"
#include "clogfuse/prognostics/rul.hpp"
#include "clogfuse/prognostics/rul_io.hpp"
#include "clogfuse/sim/ensemble_io.hpp"
#include "clogfuse/sim/simulator.hpp"
#include "clogfuse/surrogate/serialize.hpp"
#include "clogfuse/util/csv.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::cli {

using csv::format_double;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::uint64_t seed_for(const Context& ctx, const std::string& stage) {
  const auto s = rng::derive(ctx.config.seed, stage);
  ctx.manifest.record_seed(stage, s);
  return s;
}

void write_inputs_csv(const std::filesystem::path& path, const sim::PriorSpec& prior,
                      const std::vector<sim::InputVector>& xs) {
  auto out = open_out(path);
  out << "member";
  for (std::size_t j = 0; j < prior.dim(); ++j)
    out << ',' << (prior.names.empty() ? "x" + std::to_string(j) : prior.names[j]);
  out << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < xs[i].size(); ++j) out << ',' << format_double(xs[i][j]);
    out << '\n';
  }
}

void write_truth_csv(const std::filesystem::path& path, const sim::DegradationTrajectory& truth) {
  auto out = open_out(path);
  out << "time,value\n";
  for (std::size_t j = 0; j < truth.grid.size(); ++j)
    out << format_double(truth.grid[j]) << ',' << format_double(truth.values[static_cast<Eigen::Index>(j)]) << '\n';
}

/// Per-stage RMSE of the ensemble mean against observations and, when known,
/// against the synthetic truth at the observation times.
json stage_diagnostics(const sim::Ensemble& ens, const Observed& observed,
                       const data::Dataset& used) {
  const auto obs = fusion::flatten(used);
  Eigen::VectorXd y(static_cast<Eigen::Index>(obs.size()));
  for (std::size_t k = 0; k < obs.size(); ++k) y[static_cast<Eigen::Index>(k)] = obs[k].value;
  json d;
  d["rmse_vs_observations"] = number_or_null(fusion::mean_rmse(ens, obs, y));
  if (observed.truth) {
    Eigen::VectorXd truth(y.size());
    for (std::size_t k = 0; k < obs.size(); ++k)
      truth[static_cast<Eigen::Index>(k)] = observed.truth->value_at(obs[k].time);
    d["rmse_vs_truth"] = number_or_null(fusion::mean_rmse(ens, obs, truth));
  }
  return d;
}

json summary_json(const prognostics::RulSummary& s, const prognostics::RulQuery& q,
                  std::optional<double> present) {
  return json::parse(prognostics::summary_to_json(s, q, present));
}

}  // namespace

Observed obtain_observations(const Context& ctx) {
  const auto& c = ctx.config;
  Observed o;
  if (c.data.path) {
    try {
      o.dataset = data::load_observations(*c.data.path);
    } catch (const std::exception& e) {
      throw fusion::StageError("data", e.what());
    }
    ctx.manifest["data"] = {{"source", "file"}, {"path", c.data.path->generic_string()}};
  } else {
    const auto truth_input = sim::sample_prior(c.prior, 1, seed_for(ctx, "truth")).front();
    o.truth = sim::simulate_trajectory(truth_input, c.schedule, c.grid, c.assimilation.simulator);
    o.dataset = data::synthesize_scenario(*o.truth, c.data.synthetic, seed_for(ctx, "observations"));
    json x = json::array();
    for (Eigen::Index j = 0; j < truth_input.size(); ++j) x.push_back(truth_input[j]);
    ctx.manifest["data"] = {{"source", "synthetic"}, {"truth_input", x}};
  }
  const auto report = data::validate_dataset(o.dataset, c.grid);
  for (const auto& issue : report.issues) ctx.manifest.warn("data: " + issue.message);
  json sizes = json::object();
  for (const auto& g : o.dataset.groups) sizes[g.label] = g.size();
  ctx.manifest["data"]["group_sizes"] = sizes;
  return o;
}

SurrogateStudyResult run_surrogate_study(const Context& ctx) {
  const auto& c = ctx.config;
  const auto& st = c.surrogate;
  const std::size_t P = surrogate::total_degree_size(c.prior.dim(), st.degree);
  const std::size_t n_design = st.design_size ? st.design_size : 2 * P;
  auto simulate = [&](const std::vector<sim::InputVector>& xs) {
    return sim::run_ensemble(xs, c.schedule, c.grid, c.assimilation.simulator).values;
  };

  SurrogateStudyResult r;
  const auto xd = sim::sample_prior(c.prior, n_design, seed_for(ctx, "design"));
  r.surrogate = std::make_shared<const surrogate::Surrogate>(
      surrogate::fit_vpce(xd, simulate(xd), c.prior, st.degree));

  const auto xt = sim::sample_prior(c.prior, st.test_size, seed_for(ctx, "surrogate-test"));
  r.q2 = surrogate::q2(*r.surrogate, xt, simulate(xt));

  const auto xc = sim::sample_prior(c.prior, st.calibration_size, seed_for(ctx, "surrogate-calibration"));
  r.conformal = surrogate::calibrate_conformal(r.surrogate, xc, simulate(xc), st.alpha);
  if (!r.conformal.bounded())
    ctx.manifest.warn("surrogate: conformal radius is infinite (calibration set too small for alpha)");

  const auto xa = sim::sample_prior(c.prior, st.audit_size, seed_for(ctx, "surrogate-audit"));
  const Eigen::MatrixXd ya = simulate(xa);
  r.coverage = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.grid.size()));
  for (std::size_t i = 0; i < xa.size(); ++i) {
    const auto iv = surrogate::predict_interval(r.conformal, xa[i]);
    const auto y = ya.col(static_cast<Eigen::Index>(i));
    r.coverage += ((y.array() >= iv.lo.array()) && (y.array() <= iv.hi.array())).cast<double>().matrix();
  }
  r.coverage /= static_cast<double>(xa.size());

  ctx.manifest["surrogate"] = {
      {"degree", st.degree},
      {"basis_size", P},
      {"design_size", n_design},
      {"test_size", st.test_size},
      {"mean_q2", number_or_null(r.q2.mean_q2)},
      {"min_q2", number_or_null(r.q2.per_time.array().isNaN().select(1.0, r.q2.per_time.array()).minCoeff())},
      {"degenerate_times", r.q2.n_degenerate},
      {"alpha", st.alpha},
      {"calibration_size", st.calibration_size},
      {"audit_size", st.audit_size},
      {"mean_coverage", r.coverage.mean()},
      {"min_coverage", r.coverage.minCoeff()}};
  return r;
}

fusion::AssimilationResult run_assimilation(const Context& ctx, const Observed& observed) {
  const auto& c = ctx.config;
  const auto master = c.seed;
  auto result = fusion::assimilate(c.prior, c.schedule, c.grid, observed.dataset, c.assimilation, master);
  for (const auto& w : result.warnings) ctx.manifest.warn(w);

  const auto used = c.present_time ? observed.dataset.up_to(*c.present_time) : observed.dataset;
  json windows = json::array();
  for (const auto& w : result.windows)
    windows.push_back({{"index", w.index},
                       {"t_start", w.t_start},
                       {"t_end", w.t_end},
                       {"observations", fusion::window_observations(w, used).size()}});
  json stages = json::object();
  stages["prior"] = stage_diagnostics(result.prior, observed, used);
  stages["bmu"] = stage_diagnostics(result.bmu, observed, used);
  for (std::size_t k = 0; k < result.enks.size(); ++k)
    stages["enks_w" + std::to_string(k)] = stage_diagnostics(result.enks[k], observed, used);
  ctx.manifest["assimilation"] = {{"ensemble_size", c.assimilation.ensemble_size},
                                  {"forward", c.assimilation.forward == fusion::ForwardMode::surrogate
                                                  ? "surrogate" : "simulator"},
                                  {"present_time", c.present_time ? json(*c.present_time) : json(nullptr)},
                                  {"observations_used", used.total_observations()},
                                  {"ess", result.bmu_sample.ess},
                                  {"windows", windows},
                                  {"stages", stages}};
  return result;
}

void cmd_simulate(const Context& ctx) {
  const auto& c = ctx.config;
  StageTimer timer(ctx.manifest, "simulate");
  const auto xs = sim::sample_prior(c.prior, c.simulate_size, seed_for(ctx, "prior"));
  const auto ens = sim::run_ensemble(xs, c.schedule, c.grid, c.assimilation.simulator);
  sim::write_ensemble_csv(ctx.out_dir / "prior_ensemble.csv", ens);
  write_inputs_csv(ctx.out_dir / "prior_inputs.csv", c.prior, xs);
  ctx.manifest["simulate"] = {{"ensemble_size", ens.size()}, {"grid_points", c.grid.size()}};
  ctx.log << "simulate: " << ens.size() << " members x " << c.grid.size() << " grid points\n";
}

void cmd_surrogate(const Context& ctx) {
  StageTimer timer(ctx.manifest, "surrogate");
  const auto r = run_surrogate_study(ctx);
  surrogate::save(*r.surrogate, ctx.out_dir / "surrogate.json");
  auto out = open_out(ctx.out_dir / "surrogate_q2.csv");
  out << "time,q2,degenerate,radius,coverage\n";
  for (std::size_t j = 0; j < ctx.config.grid.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out << format_double(ctx.config.grid[j]) << ','
        << (r.q2.degenerate[j] ? std::string() : format_double(r.q2.per_time[jj])) << ','
        << (r.q2.degenerate[j] ? 1 : 0) << ','
        << (std::isfinite(r.conformal.radius[jj]) ? format_double(r.conformal.radius[jj]) : "inf") << ','
        << format_double(r.coverage[jj]) << '\n';
  }
  ctx.log << "surrogate: mean Q2 " << r.q2.mean_q2 << ", mean coverage " << r.coverage.mean() << '\n';
}

void cmd_assimilate(const Context& ctx) {
  StageTimer timer(ctx.manifest, "assimilate");
  const auto observed = obtain_observations(ctx);
  data::save_observations(ctx.out_dir / "observations.csv", observed.dataset);
  if (observed.truth) write_truth_csv(ctx.out_dir / "truth.csv", *observed.truth);

  const auto result = run_assimilation(ctx, observed);
  sim::write_ensemble_csv(ctx.out_dir / "ensemble_prior.csv", result.prior);
  sim::write_ensemble_csv(ctx.out_dir / "ensemble_bmu.csv", result.bmu);
  for (std::size_t k = 0; k < result.enks.size(); ++k)
    sim::write_ensemble_csv(ctx.out_dir / ("ensemble_enks_w" + std::to_string(k) + ".csv"), result.enks[k]);

  auto out = open_out(ctx.out_dir / "bmu_weights.csv");
  out << "sample,log_weight,times_resampled\n";
  std::vector<std::size_t> hits(result.bmu_sample.inputs.size(), 0);
  for (std::size_t idx : result.bmu_sample.resampled_indices) ++hits[idx];
  for (std::size_t i = 0; i < hits.size(); ++i)
    out << i << ',' << format_double(result.bmu_sample.log_weights[static_cast<Eigen::Index>(i)]) << ','
        << hits[i] << '\n';
  ctx.log << "assimilate: ESS " << result.bmu_sample.ess << ", " << result.enks.size() << " windows\n";
}

void cmd_rul(const Context& ctx) {
  StageTimer timer(ctx.manifest, "rul");
  const auto q = ctx.config.rul_query();
  const auto observed = obtain_observations(ctx);
  const auto result = run_assimilation(ctx, observed);

  json summaries = json::object();
  auto emit = [&](const std::string& stage, const sim::Ensemble& ens) {
    const auto rd = prognostics::rul_distribution(ens, q);
    prognostics::write_rul_csv(ctx.out_dir / ("rul_" + stage + ".csv"), rd);
    summaries[stage] = summary_json(prognostics::rul_summary(rd, ctx.config.rul.quantiles), q,
                                    ctx.config.present_time);
  };
  emit("prior", result.prior);
  emit("bmu", result.bmu);
  emit("posterior", result.final_ensemble());
  auto out = open_out(ctx.out_dir / "rul_summary.json");
  out << summaries.dump(2) << '\n';
  ctx.manifest["rul"] = summaries;
  ctx.log << "rul: prior std " << summaries["prior"]["std"] << ", posterior std "
          << summaries["posterior"]["std"] << '\n';
}

void cmd_report(const Context& ctx) {
  const auto& c = ctx.config;
  StageTimer timer(ctx.manifest, "report");
  const auto q = c.rul_query();

  const auto study = run_surrogate_study(ctx);
  const auto observed = obtain_observations(ctx);
  const auto result = run_assimilation(ctx, observed);

  {
    auto out = open_out(ctx.out_dir / "report_trajectories.csv");
    out << "stage,series,time,value\n";
    auto emit = [&](const std::string& stage, const sim::Ensemble& ens) {
      const std::size_t shown = std::min(c.report_members, ens.size());
      for (std::size_t i = 0; i < shown; ++i)
        for (std::size_t j = 0; j < ens.grid.size(); ++j)
          out << stage << ",member_" << i << ',' << format_double(ens.grid[j]) << ','
              << format_double(ens.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i))) << '\n';
      const Eigen::VectorXd mean = ens.mean();
      for (std::size_t j = 0; j < ens.grid.size(); ++j)
        out << stage << ",mean," << format_double(ens.grid[j]) << ','
            << format_double(mean[static_cast<Eigen::Index>(j)]) << '\n';
    };
    emit("prior", result.prior);
    emit("bmu", result.bmu);
    emit("posterior", result.final_ensemble());
    if (observed.truth)
      for (std::size_t j = 0; j < c.grid.size(); ++j)
        out << "truth,truth," << format_double(c.grid[j]) << ','
            << format_double(observed.truth->values[static_cast<Eigen::Index>(j)]) << '\n';
  }

  data::save_observations(ctx.out_dir / "report_observations.csv", observed.dataset);

  {
    auto out = open_out(ctx.out_dir / "report_q2.csv");
    out << "time,q2,degenerate\n";
    for (std::size_t j = 0; j < c.grid.size(); ++j)
      out << format_double(c.grid[j]) << ','
          << (study.q2.degenerate[j] ? std::string() : format_double(study.q2.per_time[static_cast<Eigen::Index>(j)]))
          << ',' << (study.q2.degenerate[j] ? 1 : 0) << '\n';
  }

  std::vector<std::pair<std::string, prognostics::RulDistribution>> dists;
  dists.emplace_back("prior", prognostics::rul_distribution(result.prior, q));
  dists.emplace_back("bmu", prognostics::rul_distribution(result.bmu, q));
  dists.emplace_back("posterior", prognostics::rul_distribution(result.final_ensemble(), q));
  {
    auto out = open_out(ctx.out_dir / "report_rul_samples.csv");
    out << "stage,member,duration_years,censored\n";
    for (const auto& [stage, rd] : dists)
      for (std::size_t i = 0; i < rd.per_member.size(); ++i)
        out << stage << ',' << i << ',' << (rd.per_member[i] ? format_double(*rd.per_member[i]) : std::string())
            << ',' << (rd.per_member[i] ? 0 : 1) << '\n';
  }
  {
    const double span = q.horizon_end - q.t_start;
    const double width = span > 0.0 ? span / static_cast<double>(c.report_bins) : 1.0;
    auto out = open_out(ctx.out_dir / "report_rul_hist.csv");
    out << "stage,bin_start,bin_end,count,density\n";
    for (const auto& [stage, rd] : dists) {
      std::vector<std::size_t> counts(c.report_bins, 0);
      for (double d : rd.samples)
        ++counts[std::min(c.report_bins - 1, static_cast<std::size_t>(d / width))];
      for (std::size_t b = 0; b < c.report_bins; ++b)
        out << stage << ',' << format_double(static_cast<double>(b) * width) << ','
            << format_double(static_cast<double>(b + 1) * width) << ',' << counts[b] << ','
            << format_double(static_cast<double>(counts[b]) / (static_cast<double>(rd.n_total) * width)) << '\n';
    }
  }
  json summaries = json::object();
  for (const auto& [stage, rd] : dists)
    summaries[stage] = summary_json(prognostics::rul_summary(rd, c.rul.quantiles), q, c.present_time);
  ctx.manifest["rul"] = summaries;
  ctx.log << "report: wrote long-format CSVs to " << ctx.out_dir.string() << '\n';
}

}  // namespace clogfuse::cli
