#include "qbm/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbm/measurement.hpp"
#include "qbm/scenarios.hpp"

namespace qbm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

void write_row(std::ostringstream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << fmt(v);
    first = false;
  }
  out << '\n';
}

std::string fig1(const RunConfig& cfg, bool variances) {
  const TimeGrid grid = cfg.time_grid();
  const SystemTables tables = build_system_tables(cfg.bath, cfg.osc, grid, cfg.quadrature());
  const PreparationSpec prep{cfg.scenario.x0, cfg.scenario.squeeze};
  const CorrelatedPrepScenario corr(tables, prep);
  const FactorizedScenario fact(tables, prep);

  std::ostringstream out;
  out << (variances ? "t,sx_corr,sp_corr,sx_uncorr,sp_uncorr\n"
                    : "t,x_corr,p_corr,x_uncorr,p_uncorr\n");
  for (std::size_t i = 0; i < grid.size; ++i) {
    const GaussianState a = corr.at(i);
    const GaussianState b = fact.at(i);
    if (variances)
      write_row(out, {grid.time(i), a.var_x, a.var_p, b.var_x, b.var_p});
    else
      write_row(out, {grid.time(i), a.mean_x, a.mean_p, b.mean_x, b.mean_p});
  }
  return out.str();
}

std::string fig2(const RunConfig& cfg) {
  const TimeGrid grid = cfg.time_grid();
  const SystemTables tables = build_system_tables(cfg.bath, cfg.osc, grid, cfg.quadrature());
  const CorrelatedPrepScenario s10(tables, PreparationSpec{cfg.scenario.x0, 10.0});
  const CorrelatedPrepScenario s1(tables, PreparationSpec{cfg.scenario.x0, 1.0});
  const CorrelatedPrepScenario s01(tables, PreparationSpec{cfg.scenario.x0, 0.1});

  std::ostringstream out;
  out << "t,purity_l10,purity_l1,purity_l01\n";
  for (std::size_t i = 0; i < grid.size; ++i)
    write_row(out, {grid.time(i), purity(s10.at(i)), purity(s1.at(i)), purity(s01.at(i))});
  return out.str();
}

std::string fig3(const RunConfig& cfg, bool variances) {
  const TimeGrid grid = cfg.time_grid();
  const QuadratureSpec spec = cfg.quadrature();
  const QuenchSpec quench{cfg.scenario.k_old, cfg.scenario.k_new};
  const QuenchScenario q(cfg.bath, quench, grid, spec);
  // Uncorrelated comparison: a factorized Gaussian with the old Gibbs
  // marginal variances, evolved under the new dynamics.
  const SystemTables tables_new =
      build_system_tables(cfg.bath, OscillatorParams(quench.k_new), grid, spec);
  const GaussianState init{0.0, 0.0, q.old_correlation().x2, 0.0, q.old_correlation().p2};
  const FactorizedScenario fact(tables_new, init);

  std::ostringstream out;
  out << (variances ? "t,sx_quench,sp_quench,sx_uncorr,sp_uncorr\n"
                    : "t,purity_quench,purity_uncorr\n");
  for (std::size_t i = 0; i < grid.size; ++i) {
    const GaussianState a = q.at(i);
    const GaussianState b = fact.at(i);
    if (variances)
      write_row(out, {grid.time(i), a.var_x, a.var_p, b.var_x, b.var_p});
    else
      write_row(out, {grid.time(i), purity(a), purity(b)});
  }
  return out.str();
}

std::vector<double> default_tau_sweep() {
  std::vector<double> taus = {0.01};
  for (int i = 1; i <= 100; ++i) taus.push_back(0.05 * i);
  return taus;
}

std::string fig4(const RunConfig& cfg) {
  const std::vector<double> taus =
      cfg.scenario.taus.empty() ? default_tau_sweep() : cfg.scenario.taus;
  double tau_max = 0.0;
  for (double t : taus) tau_max = std::max(tau_max, t);
  const TimeGrid grid = TimeGrid::from_range(cfg.grid.dt, 2.0 * tau_max);
  const QuadratureSpec spec = cfg.quadrature();

  auto make_lane = [&](double eta) {
    const BathSpectrum bath{eta, cfg.bath.cutoff_lambda, cfg.bath.temperature};
    auto prop = build_propagator(bath, cfg.osc, grid, spec);
    auto corr = build_correlation(bath, cfg.osc, grid, spec);
    auto weak = weak_coupling_coefficients(bath, cfg.osc, grid, spec);
    return std::tuple{std::move(prop), std::move(corr), std::move(weak)};
  };
  auto [prop05, corr05, weak05] = make_lane(0.5);
  auto [prop01, corr01, weak01] = make_lane(0.1);
  const MeasurementEngine eng05(prop05, corr05);
  const MeasurementEngine eng01(prop01, corr01);
  const WeakZenoModel zen05(weak05, cfg.osc);
  const WeakZenoModel zen01(weak01, cfg.osc);

  std::ostringstream out;
  out << "tau,R_exact_e05,R_weak_e05,R_exact_e01,R_weak_e01\n";
  for (double tau : taus) {
    write_row(out, {tau, eng05.survival_ratio(tau).ratio, zen05.survival_ratio(tau).ratio,
                    eng01.survival_ratio(tau).ratio, zen01.survival_ratio(tau).ratio});
  }
  return out.str();
}

}  // namespace

FigureId parse_figure_id(const std::string& name) {
  if (name == "fig1a") return FigureId::fig1a;
  if (name == "fig1b") return FigureId::fig1b;
  if (name == "fig2") return FigureId::fig2;
  if (name == "fig3a") return FigureId::fig3a;
  if (name == "fig3b") return FigureId::fig3b;
  if (name == "fig4") return FigureId::fig4;
  throw config_error("unknown figure id '" + name +
                     "' (expected fig1a, fig1b, fig2, fig3a, fig3b or fig4)");
}

std::string figure_csv(FigureId id, const RunConfig& cfg) {
  switch (id) {
    case FigureId::fig1a: return fig1(cfg, true);
    case FigureId::fig1b: return fig1(cfg, false);
    case FigureId::fig2: return fig2(cfg);
    case FigureId::fig3a: return fig3(cfg, true);
    case FigureId::fig3b: return fig3(cfg, false);
    case FigureId::fig4: return fig4(cfg);
  }
  throw std::logic_error("figure_csv: unreachable");
}

void run_figure(FigureId id, const RunConfig& cfg, const std::string& out_path) {
  const std::string csv = figure_csv(id, cfg);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("run_figure: cannot open output file '" + out_path + "'");
  out << csv;
  if (!out) throw std::runtime_error("run_figure: write failed for '" + out_path + "'");
}

ShortTimePurityFit measure_short_time_purity(const BathSpectrum& bath, const OscillatorParams& osc,
                                             double squeeze, const QuadratureSpec& spec) {
  const double t_end = 0.1 * std::sqrt(squeeze) / bath.cutoff_lambda;
  const TimeGrid grid(t_end / 64.0, 65);
  const SystemTables tables = build_system_tables(bath, osc, grid, spec);
  const FactorizedScenario fact(tables, PreparationSpec{0.0, squeeze});

  // Least squares for y = c t^2 and the matching R^2.
  double stt = 0.0, sty = 0.0;
  std::vector<double> y(grid.size);
  for (std::size_t i = 0; i < grid.size; ++i) {
    y[i] = 1.0 - purity(fact.at(i));
    const double t2 = grid.time(i) * grid.time(i);
    stt += t2 * t2;
    sty += t2 * y[i];
  }
  ShortTimePurityFit fit;
  fit.coefficient = sty / stt;
  double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  for (std::size_t i = 0; i < grid.size; ++i) {
    const double t2 = grid.time(i) * grid.time(i);
    ss_res += (y[i] - fit.coefficient * t2) * (y[i] - fit.coefficient * t2);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  fit.reference = bath.cutoff_lambda * bath.cutoff_lambda / (2.0 * std::numbers::pi * squeeze);
  fit.ratio = fit.coefficient / fit.reference;
  return fit;
}

std::string report_scalars(const RunConfig& cfg) {
  const TimeGrid grid = cfg.time_grid();
  const QuadratureSpec spec = cfg.quadrature();
  const CorrelationTable corr = build_correlation(cfg.bath, cfg.osc, grid, spec);
  const PropagatorTable prop = build_propagator(cfg.bath, cfg.osc, grid, spec);
  const LocalCoefficients local = local_coefficients(prop);

  const QuenchSpec quench{cfg.scenario.k_old, cfg.scenario.k_new};
  const CorrelationTable corr_old =
      cfg.scenario.k_old == cfg.osc.spring_k
          ? corr
          : build_correlation(cfg.bath, OscillatorParams(cfg.scenario.k_old), grid, spec);
  const double quench_purity = 1.0 / (2.0 * std::sqrt(corr_old.x2 * corr_old.p2));

  const ShortTimePurityFit fit =
      measure_short_time_purity(cfg.bath, cfg.osc, cfg.scenario.squeeze, spec);

  nlohmann::json j;
  j["equilibrium_purity"] = 1.0 / (2.0 * std::sqrt(corr.x2 * corr.p2));
  j["quench_initial_purity"] = quench_purity;
  j["mu0"] = cfg.bath.memory_kernel(0.0);
  j["x2"] = corr.x2;
  j["p2"] = corr.p2;
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& [lo, hi] : local.singular_intervals) intervals.push_back({lo, hi});
  j["gamma_kappa_singular_intervals"] = intervals;
  j["short_time_purity_coefficient"] = fit.coefficient;
  j["short_time_purity_r2"] = fit.r_squared;
  j["short_time_reference"] = fit.reference;
  j["short_time_coefficient_ratio"] = fit.ratio;
  return j.dump(2) + "\n";
}

}  // namespace qbm
