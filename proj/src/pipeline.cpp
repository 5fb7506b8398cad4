#include "levelspec/pipeline.hpp"

#include "levelspec/density.hpp"
#include "levelspec/errors.hpp"
#include "levelspec/graph.hpp"
#include "levelspec/oracle.hpp"
#include "levelspec/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace levelspec {

using json = nlohmann::json;

void
PipelineConfig::validate() const
{
  if (level.has_value() == retain_fraction.has_value())
    throw ValidationError("exactly one of level and retain fraction must be set");
  if (level && !(*level >= 0.0))
    throw ValidationError("level must be nonnegative");
  if (retain_fraction && !(*retain_fraction > 0.0 && *retain_fraction <= 1.0))
    throw ValidationError("retain fraction must lie in (0, 1]");
  if (bandwidth && !bandwidth_grid.empty())
    throw ValidationError("give either a fixed bandwidth or a bandwidth grid, not both");
  if (bandwidth && !(*bandwidth > 0.0))
    throw ValidationError("bandwidth must be positive");
  if (!(scale_h > 0.0) || !std::isfinite(scale_h))
    throw ValidationError("scale h must be positive");
  if (!(zero_tol > 0.0))
    throw ValidationError("zero tolerance must be positive");
  if (ell && *ell < 1)
    throw ValidationError("ell must be at least 1");
  if (restarts < 1)
    throw ValidationError("restarts must be at least 1");
  if (!input_csv) {
    mixture.validate();
    if (n < 1)
      throw ValidationError("sample size must be at least 1");
  }
}

void
PipelineConfig::merge_json(const std::string& json_text)
{
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ValidationError("config must be a JSON object");

  try {
    if (j.contains("input"))
      input_csv = j["input"].get<std::string>();
    if (j.contains("n"))
      n = j["n"].get<Eigen::Index>();
    if (j.contains("seed"))
      seed = j["seed"].get<std::uint64_t>();
    if (j.contains("mixture")) {
      const auto& m = j["mixture"];
      if (m.contains("proportions"))
        mixture.proportions = m["proportions"].get<std::array<double, 4>>();
      if (m.contains("gaussian_sigma"))
        mixture.gaussian_sigma = m["gaussian_sigma"].get<double>();
      if (m.contains("ring1_radius_mean"))
        mixture.ring1_radius_mean = m["ring1_radius_mean"].get<double>();
      if (m.contains("ring1_radius_sd"))
        mixture.ring1_radius_sd = m["ring1_radius_sd"].get<double>();
      if (m.contains("ring2_radius_mean"))
        mixture.ring2_radius_mean = m["ring2_radius_mean"].get<double>();
      if (m.contains("ring2_radius_sd"))
        mixture.ring2_radius_sd = m["ring2_radius_sd"].get<double>();
      if (m.contains("noise_box_halfwidth"))
        mixture.noise_box_halfwidth = m["noise_box_halfwidth"].get<double>();
    }
    if (j.contains("bandwidth")) {
      bandwidth = j["bandwidth"].get<double>();
      bandwidth_grid.clear();
    }
    if (j.contains("bandwidth_grid")) {
      bandwidth_grid = j["bandwidth_grid"].get<std::vector<double>>();
      bandwidth.reset();
    }
    if (j.contains("level")) {
      level = j["level"].get<double>();
      retain_fraction.reset();
    }
    if (j.contains("retain_fraction")) {
      retain_fraction = j["retain_fraction"].get<double>();
      level.reset();
    }
    if (j.contains("scale_h"))
      scale_h = j["scale_h"].get<double>();
    if (j.contains("zero_tol"))
      zero_tol = j["zero_tol"].get<double>();
    if (j.contains("ell")) {
      if (j["ell"].is_null() || j["ell"] == "auto")
        ell.reset();
      else
        ell = j["ell"].get<int>();
    }
    if (j.contains("restarts"))
      restarts = j["restarts"].get<int>();
    if (j.contains("truth_noise_label"))
      truth_noise_label = j["truth_noise_label"].get<int>();
    if (j.contains("out"))
      output_dir = j["out"].get<std::string>();
    if (j.contains("dump_graph"))
      dump_graph = j["dump_graph"].get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
}

std::string
RunSummary::to_json() const
{
  json j;
  j["mode"] = mode;
  j["n"] = n;
  j["jn"] = jn;
  j["bandwidth"] = bandwidth;
  j["t"] = t;
  j["scale_h"] = scale_h;
  j["zero_tol"] = zero_tol;
  j["ell_hat"] = ell_hat;
  j["ell"] = ell;
  j["component_count"] = component_count;
  j["d_min"] = d_min ? json(*d_min) : json(nullptr);
  j["ari"] = ari ? json(*ari) : json(nullptr);
  j["inertia"] = inertia;
  j["eigenvalues_head"] = eigenvalues_head;
  return j.dump(2) + "\n";
}

PointSet
pipeline_points(const PipelineConfig& config)
{
  if (config.input_csv) {
    PointSet points = load_points(*config.input_csv);
    points.validate();
    return points;
  }
  MixtureSpec spec = config.mixture;
  spec.seed = derive_seed(config.seed, static_cast<std::uint64_t>(SeedStream::simulation));
  return simulate_mixture(spec, config.n);
}

RunSummary
run_pipeline(const PipelineConfig& config)
{
  config.validate();
  return run_pipeline(config, pipeline_points(config));
}

RunSummary
run_baseline(PipelineConfig config)
{
  config.level = 0.0;
  config.retain_fraction.reset();
  config.validate();
  return run_pipeline(config, pipeline_points(config));
}

RunSummary
run_pipeline(const PipelineConfig& config, const PointSet& points)
{
  config.validate();
  points.validate();

  RunSummary summary;
  summary.mode = config.level && *config.level == 0.0 ? "baseline" : "cluster";
  summary.n = points.size();
  summary.scale_h = config.scale_h;
  summary.zero_tol = config.zero_tol;

  // density stage
  if (config.bandwidth) {
    summary.bandwidth = *config.bandwidth;
  } else {
    const std::vector<double> grid = config.bandwidth_grid.empty()
                                       ? default_bandwidth_grid(points.points)
                                       : config.bandwidth_grid;
    summary.bandwidth = lscv_bandwidth(points, grid);
  }
  const DensityModel model = kde_fit(points, summary.bandwidth);
  std::vector<double> density = model.evaluate(points.points);
  summary.t = config.level ? *config.level
                           : select_level_by_retention(density, *config.retain_fraction);
  const LevelSetExtraction extraction = extract_level_set(std::move(density), summary.t);
  summary.retained = extraction.retained;
  summary.jn = static_cast<Eigen::Index>(extraction.retained.size());

  // spectral stage
  const Matrix retained_points = select_rows(points.points, extraction.retained);
  const SimilarityGraph graph = build_graph(retained_points, config.scale_h, extraction.retained);
  if (config.dump_graph)
    dump_graph(*config.dump_graph, graph);
  const SpectralEmbedding spectrum = eigendecompose(graph);
  const ZeroCountReport zeros = count_zero_eigenvalues(spectrum, config.zero_tol);
  summary.ell_hat = zeros.count;
  summary.eigenvalues_head = zeros.eigenvalues_head;
  summary.eigenvalues.assign(spectrum.eigenvalues.data(),
                             spectrum.eigenvalues.data() + spectrum.count());
  summary.ell = config.ell ? static_cast<Eigen::Index>(*config.ell) : zeros.count;
  if (summary.ell < 1)
    throw NumericError("no eigenvalue of I - S fell below the zero tolerance " +
                       std::to_string(config.zero_tol));
  summary.embedding = embed(spectrum, summary.ell);

  KMeansOptions km_options;
  km_options.restarts = config.restarts;
  km_options.seed = derive_seed(config.seed, static_cast<std::uint64_t>(SeedStream::kmeans));
  const KMeansResult km = kmeans(summary.embedding, static_cast<int>(summary.ell), km_options);
  summary.inertia = km.inertia;
  summary.labels = assemble_labels(extraction, km).labels;

  // diagnostics
  const ComponentLabeling components = connected_components(retained_points, config.scale_h);
  summary.component_count = components.count;
  if (components.count >= 2)
    summary.d_min = min_intercomponent_distance(retained_points, components);

  if (points.labels) {
    std::optional<int> noise = config.truth_noise_label;
    if (!noise && !config.input_csv)
      noise = kBackgroundComponent;
    std::vector<int> truth = *points.labels;
    for (int& label : truth)
      if (label < 0 || (noise && label == *noise))
        label = kNoise;
    try {
      summary.ari = adjusted_rand_index(summary.labels, truth);
    } catch (const ValidationError&) {
      summary.ari.reset(); // fewer than two comparable points
    }
  }

  if (config.output_dir)
    write_outputs(*config.output_dir, summary);
  return summary;
}

void
write_outputs(const std::filesystem::path& dir, const RunSummary& summary)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out)
      throw IoError("cannot write " + (dir / name).string());
    out.precision(17);
    return out;
  };

  {
    auto out = open("eigenvalues.csv");
    out << "index,eigenvalue\n";
    for (std::size_t k = 0; k < summary.eigenvalues.size(); ++k)
      out << k << ',' << summary.eigenvalues[k] << '\n';
  }
  {
    auto out = open("embedding.csv");
    out << "index";
    for (Eigen::Index c = 0; c < summary.embedding.cols(); ++c)
      out << ",v" << c;
    out << '\n';
    for (Eigen::Index r = 0; r < summary.embedding.rows(); ++r) {
      out << summary.retained[static_cast<std::size_t>(r)];
      for (Eigen::Index c = 0; c < summary.embedding.cols(); ++c)
        out << ',' << summary.embedding(r, c);
      out << '\n';
    }
  }
  {
    auto out = open("labels.csv");
    out << "index,label\n";
    for (std::size_t i = 0; i < summary.labels.size(); ++i)
      out << i << ',' << summary.labels[i] << '\n';
  }
  {
    auto out = open("summary.json");
    out << summary.to_json();
  }
}

} // namespace levelspec
