// qbm: exact dynamics of a damped quantum harmonic oscillator.
//
//   qbm run <figure> [--config file.ini] [--out fig.csv] [flag overrides]
//   qbm report [--config file.ini] [--out report.json] [flag overrides]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical convergence
// failure (the message names the quantity that failed).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbm/errors.hpp"
#include "qbm/figures.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  qbm::ConfigOverrides overrides;
};

void add_common_flags(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_path, "INI configuration file");
  app->add_option("--out", flags.out_path, "Output path");
  auto opt = [&](const char* name, std::optional<double>& slot, const char* desc) {
    app->add_option_function<double>(name, [&slot](double v) { slot = v; }, desc);
  };
  opt("--dt", flags.overrides.dt, "Grid step override");
  opt("--tmax", flags.overrides.t_max, "Grid horizon override");
  opt("--eta", flags.overrides.eta, "Coupling strength override");
  opt("--k", flags.overrides.k, "Spring constant override");
  opt("--lambda-cutoff", flags.overrides.lambda_cutoff, "Bath cutoff override");
  opt("--temperature", flags.overrides.temperature, "Bath temperature override");
}

qbm::RunConfig load_config(const CommonFlags& flags) {
  qbm::RunConfig cfg;
  if (!flags.config_path.empty()) cfg = qbm::parse_config_file(flags.config_path);
  qbm::apply_overrides(cfg, flags.overrides);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact non-Markovian dynamics of the damped quantum harmonic oscillator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string figure_name;
  CLI::App* run = app.add_subcommand("run", "Generate figure data as CSV");
  run->add_option("figure", figure_name, "One of fig1a, fig1b, fig2, fig3a, fig3b, fig4")
      ->required();
  add_common_flags(run, run_flags);

  CommonFlags report_flags;
  CLI::App* report = app.add_subcommand("report", "Print the scalar report as JSON");
  add_common_flags(report, report_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      const qbm::FigureId id = qbm::parse_figure_id(figure_name);
      const qbm::RunConfig cfg = load_config(run_flags);
      const std::string out =
          run_flags.out_path.empty() ? figure_name + ".csv" : run_flags.out_path;
      qbm::run_figure(id, cfg, out);
    } else {
      const qbm::RunConfig cfg = load_config(report_flags);
      const std::string text = qbm::report_scalars(cfg);
      if (report_flags.out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(report_flags.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + report_flags.out_path + "'");
        out << text;
      }
    }
  } catch (const qbm::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qbm::convergence_error& e) {
    std::cerr << "error: " << e.what()
              << " (achieved error " << e.achieved_error() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
