#pragma once

#include "levelspec/cluster.hpp"
#include "levelspec/datagen.hpp"
#include "levelspec/spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace levelspec {

//! Seed streams split off the root seed.
enum class SeedStream : std::uint64_t
{
  simulation = 0,
  kmeans = 1,
};

//! Everything the level-set spectral clustering run needs. Either
//! input_csv or the mixture simulation supplies the data; bandwidth is
//! fixed or cross-validated over bandwidth_grid (empty grid: a default grid
//! around the normal-reference bandwidth); exactly one of level and
//! retain_fraction picks the threshold.
struct PipelineConfig
{
  std::optional<std::filesystem::path> input_csv;
  MixtureSpec mixture;
  Eigen::Index n = 1900;

  std::optional<double> bandwidth;
  std::vector<double> bandwidth_grid;

  std::optional<double> level;
  std::optional<double> retain_fraction = 0.85;

  double scale_h = 0.25;
  double zero_tol = kDefaultZeroTolerance;
  std::optional<int> ell;
  int restarts = 10;
  std::uint64_t seed = 0;

  //! Ground-truth label treated as noise when scoring; defaults to the
  //! background component for simulated data.
  std::optional<int> truth_noise_label;

  std::optional<std::filesystem::path> output_dir;
  std::optional<std::filesystem::path> dump_graph;

  void validate() const;

  //! Overlays the keys present in a JSON manifest onto *this.
  void merge_json(const std::string& json_text);
};

struct RunSummary
{
  std::string mode; // "cluster" or "baseline"
  Eigen::Index n = 0;
  Eigen::Index jn = 0;
  double bandwidth = 0.0;
  double t = 0.0;
  double scale_h = 0.0;
  double zero_tol = 0.0;
  Eigen::Index ell_hat = 0;
  Eigen::Index ell = 0;
  int component_count = 0;
  std::optional<double> d_min;
  std::optional<double> ari;
  double inertia = 0.0;
  std::vector<double> eigenvalues_head;

  // full outputs
  std::vector<Eigen::Index> retained;
  std::vector<double> eigenvalues;
  Matrix embedding;
  std::vector<int> labels;

  //! summary.json contents (fixed key names).
  std::string to_json() const;
};

//! Data selected by the config: the CSV file or the simulated mixture
//! (seeded from the simulation stream of the root seed).
PointSet
pipeline_points(const PipelineConfig& config);

//! density -> level set -> graph -> spectrum -> embedding -> k-means.
//! Writes eigenvalues.csv, embedding.csv, labels.csv and summary.json when
//! output_dir is set.
RunSummary
run_pipeline(const PipelineConfig& config);

//! Same data and settings with the level forced to 0 (no filtering).
RunSummary
run_baseline(PipelineConfig config);

//! Runs on an already loaded sample.
RunSummary
run_pipeline(const PipelineConfig& config, const PointSet& points);

void
write_outputs(const std::filesystem::path& dir, const RunSummary& summary);

} // namespace levelspec
