// levelspec: level-set filtered spectral clustering from the command line.
//
//   levelspec simulate --n 1900 --seed 7 --out points.csv
//   levelspec cluster  --seed 7 --retain-fraction 0.85 --scale-h 0.25 --out run/
//   levelspec baseline --seed 7 --scale-h 0.25 --out base/
//   levelspec report   --out run/

#include "levelspec/datagen.hpp"
#include "levelspec/errors.hpp"
#include "levelspec/oracle.hpp"
#include "levelspec/pipeline.hpp"
#include "levelspec/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace levelspec;

struct RunFlags
{
  std::string config_path;
  std::string input;
  Eigen::Index n = 0;
  std::uint64_t seed = 0;
  double bandwidth = 0.0;
  std::vector<double> bandwidth_grid;
  double level = 0.0;
  double retain_fraction = 0.0;
  double scale_h = 0.0;
  double zero_tol = 0.0;
  std::string ell;
  int restarts = 0;
  int truth_noise_label = 0;
  std::string out;
  std::string dump_graph;
  bool report_components = false;
};

void
add_run_flags(CLI::App* cmd, RunFlags& f, bool with_level)
{
  cmd->add_option("--config", f.config_path, "JSON manifest; flags override its keys");
  cmd->add_option("--input", f.input, "CSV of points (default: simulate the mixture)");
  cmd->add_option("--n", f.n, "sample size when simulating");
  cmd->add_option("--seed", f.seed, "root seed (simulation and k-means)");
  auto* bw = cmd->add_option("--bandwidth", f.bandwidth, "fixed KDE bandwidth");
  auto* grid = cmd->add_option("--bandwidth-grid", f.bandwidth_grid,
                               "candidate bandwidths for least-squares CV")
                 ->delimiter(',');
  bw->excludes(grid);
  if (with_level) {
    auto* level = cmd->add_option("--level", f.level, "density level t");
    auto* frac = cmd->add_option("--retain-fraction", f.retain_fraction,
                                 "choose t so this fraction of points is kept");
    level->excludes(frac);
  }
  cmd->add_option("--scale-h", f.scale_h, "similarity kernel radius h");
  cmd->add_option("--zero-tol", f.zero_tol, "eigenvalue cutoff for counting clusters");
  cmd->add_option("--ell", f.ell, "embedding dimension (integer or 'auto')");
  cmd->add_option("--restarts", f.restarts, "k-means restarts");
  cmd->add_option("--truth-noise-label", f.truth_noise_label,
                  "ground-truth label excluded from ARI scoring");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--dump-graph", f.dump_graph, "write K as MatrixMarket triplets");
  cmd->add_flag("--report-components", f.report_components,
                "print h-ball component count and d_min");
}

std::string
read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig
make_config(const CLI::App* cmd, const RunFlags& f)
{
  PipelineConfig config;
  if (!f.config_path.empty())
    config.merge_json(read_file(f.config_path));
  auto given = [&](const char* name) { return cmd->count(name) > 0; };

  if (given("--input"))
    config.input_csv = f.input;
  if (given("--n"))
    config.n = f.n;
  if (given("--seed"))
    config.seed = f.seed;
  if (given("--bandwidth")) {
    config.bandwidth = f.bandwidth;
    config.bandwidth_grid.clear();
  }
  if (given("--bandwidth-grid")) {
    config.bandwidth_grid = f.bandwidth_grid;
    config.bandwidth.reset();
  }
  if (cmd->get_option_no_throw("--level") && given("--level")) {
    config.level = f.level;
    config.retain_fraction.reset();
  }
  if (cmd->get_option_no_throw("--retain-fraction") && given("--retain-fraction")) {
    config.retain_fraction = f.retain_fraction;
    config.level.reset();
  }
  if (given("--scale-h"))
    config.scale_h = f.scale_h;
  if (given("--zero-tol"))
    config.zero_tol = f.zero_tol;
  if (given("--ell")) {
    if (f.ell == "auto") {
      config.ell.reset();
    } else {
      try {
        config.ell = std::stoi(f.ell);
      } catch (const std::exception&) {
        throw ValidationError("--ell must be an integer or 'auto'");
      }
    }
  }
  if (given("--restarts"))
    config.restarts = f.restarts;
  if (given("--truth-noise-label"))
    config.truth_noise_label = f.truth_noise_label;
  if (given("--out"))
    config.output_dir = f.out;
  if (given("--dump-graph"))
    config.dump_graph = f.dump_graph;
  return config;
}

void
print_summary(const RunSummary& s, bool report_components)
{
  std::cout << s.mode << ": n=" << s.n << " jn=" << s.jn << " bandwidth=" << s.bandwidth
            << " t=" << s.t << " ell_hat=" << s.ell_hat << " inertia=" << s.inertia;
  if (s.ari)
    std::cout << " ari=" << *s.ari;
  std::cout << '\n';
  if (report_components) {
    std::cout << "components=" << s.component_count << " d_min=";
    if (s.d_min)
      std::cout << *s.d_min;
    else
      std::cout << "undefined";
    std::cout << '\n';
  }
}

int
report(const std::string& dir)
{
  const auto summary = nlohmann::json::parse(read_file(dir + "/summary.json"));
  std::cout << "mode            " << summary.value("mode", std::string("?")) << '\n'
            << "points          " << summary["n"] << '\n'
            << "retained (jn)   " << summary["jn"] << '\n'
            << "level t         " << summary["t"] << '\n'
            << "bandwidth       " << summary["bandwidth"] << '\n'
            << "scale h         " << summary["scale_h"] << '\n'
            << "zero eigenvals  " << summary["ell_hat"] << " (tol " << summary["zero_tol"] << ")\n"
            << "components      " << summary["component_count"] << '\n'
            << "d_min           " << summary["d_min"] << '\n'
            << "k-means inertia " << summary["inertia"] << '\n'
            << "ARI vs truth    " << summary["ari"] << '\n';
  std::cout << "first eigenvalues of I - S:\n";
  const auto& head = summary["eigenvalues_head"];
  for (std::size_t k = 0; k < head.size(); ++k)
    std::cout << "  " << k << '\t' << head[k].get<double>() << '\n';
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{ "Level-set filtered spectral clustering" };
  app.require_subcommand(1);

  Eigen::Index sim_n = 1900;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  std::string sim_config;
  auto* simulate = app.add_subcommand("simulate", "draw the four-component mixture sample");
  simulate->add_option("--config", sim_config, "JSON manifest (n, seed, mixture)");
  simulate->add_option("--n", sim_n, "sample size");
  simulate->add_option("--seed", sim_seed, "root seed");
  simulate->add_option("--out", sim_out, "CSV file to write")->required();

  RunFlags cluster_flags;
  auto* cluster = app.add_subcommand("cluster", "level-set filtered spectral clustering");
  add_run_flags(cluster, cluster_flags, true);

  RunFlags baseline_flags;
  auto* baseline = app.add_subcommand("baseline", "unfiltered spectral clustering (t = 0)");
  add_run_flags(baseline, baseline_flags, false);

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "print a finished run's summary");
  report_cmd->add_option("--out", report_dir, "run output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      PipelineConfig config;
      if (!sim_config.empty())
        config.merge_json(read_file(sim_config));
      if (simulate->count("--n"))
        config.n = sim_n;
      if (simulate->count("--seed"))
        config.seed = sim_seed;
      config.input_csv.reset();
      save_points(sim_out, pipeline_points(config));
      return 0;
    }
    if (cluster->parsed()) {
      const PipelineConfig config = make_config(cluster, cluster_flags);
      print_summary(run_pipeline(config), cluster_flags.report_components);
      return 0;
    }
    if (baseline->parsed()) {
      const PipelineConfig config = make_config(baseline, baseline_flags);
      print_summary(run_baseline(config), baseline_flags.report_components);
      return 0;
    }
    if (report_cmd->parsed())
      return report(report_dir);
  } catch (const EmptyLevelSetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
