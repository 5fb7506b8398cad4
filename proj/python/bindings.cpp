#include "levelspec/cluster.hpp"
#include "levelspec/datagen.hpp"
#include "levelspec/density.hpp"
#include "levelspec/errors.hpp"
#include "levelspec/graph.hpp"
#include "levelspec/oracle.hpp"
#include "levelspec/pipeline.hpp"
#include "levelspec/spectral.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace levelspec;

namespace {

void
export_types(py::module_& m)
{
  py::class_<MixtureSpec>(m, "MixtureSpec")
    .def(py::init<>())
    .def_readwrite("proportions", &MixtureSpec::proportions)
    .def_readwrite("gaussian_sigma", &MixtureSpec::gaussian_sigma)
    .def_readwrite("ring1_radius_mean", &MixtureSpec::ring1_radius_mean)
    .def_readwrite("ring1_radius_sd", &MixtureSpec::ring1_radius_sd)
    .def_readwrite("ring2_radius_mean", &MixtureSpec::ring2_radius_mean)
    .def_readwrite("ring2_radius_sd", &MixtureSpec::ring2_radius_sd)
    .def_readwrite("noise_box_halfwidth", &MixtureSpec::noise_box_halfwidth)
    .def_readwrite("seed", &MixtureSpec::seed);

  py::class_<PointSet>(m, "PointSet")
    .def(py::init<>())
    .def(py::init([](Matrix points, std::optional<std::vector<int>> labels) {
           PointSet p{ std::move(points), std::move(labels) };
           p.validate();
           return p;
         }),
         py::arg("points"), py::arg("labels") = py::none())
    .def_readwrite("points", &PointSet::points)
    .def_readwrite("labels", &PointSet::labels)
    .def("__len__", &PointSet::size);

  py::class_<DensityModel>(m, "DensityModel")
    .def_property_readonly("bandwidth", &DensityModel::bandwidth)
    .def("__call__", py::overload_cast<const Matrix&>(&DensityModel::evaluate, py::const_),
         py::arg("queries"));

  py::class_<LevelSetExtraction>(m, "LevelSetExtraction")
    .def_readonly("level", &LevelSetExtraction::level)
    .def_readonly("retained", &LevelSetExtraction::retained)
    .def_readonly("density_values", &LevelSetExtraction::density_values);

  py::class_<SimilarityGraph>(m, "SimilarityGraph")
    .def_property_readonly("size", &SimilarityGraph::size)
    .def_readonly("degrees", &SimilarityGraph::degrees)
    .def_readonly("h", &SimilarityGraph::h)
    .def_readonly("point_index_map", &SimilarityGraph::point_index_map)
    .def("dense", &SimilarityGraph::dense);

  py::class_<SpectralEmbedding>(m, "SpectralEmbedding")
    .def_readonly("eigenvalues", &SpectralEmbedding::eigenvalues)
    .def_readonly("s_eigenvectors", &SpectralEmbedding::s_eigenvectors)
    .def_readonly("q_eigenvectors", &SpectralEmbedding::q_eigenvectors);

  py::class_<ZeroCountReport>(m, "ZeroCountReport")
    .def_readonly("tolerance", &ZeroCountReport::tolerance)
    .def_readonly("count", &ZeroCountReport::count)
    .def_readonly("eigenvalues_head", &ZeroCountReport::eigenvalues_head);

  py::class_<KMeansResult>(m, "KMeansResult")
    .def_readonly("assignments", &KMeansResult::assignments)
    .def_readonly("centroids", &KMeansResult::centroids)
    .def_readonly("inertia", &KMeansResult::inertia)
    .def_readonly("iterations", &KMeansResult::iterations);

  py::class_<AlignmentReport>(m, "AlignmentReport")
    .def_readonly("xi", &AlignmentReport::xi)
    .def_readonly("residual", &AlignmentReport::residual);

  py::class_<ComponentLabeling>(m, "ComponentLabeling")
    .def_readonly("labels", &ComponentLabeling::labels)
    .def_readonly("count", &ComponentLabeling::count);

  py::class_<RunSummary>(m, "RunSummary")
    .def_readonly("mode", &RunSummary::mode)
    .def_readonly("n", &RunSummary::n)
    .def_readonly("jn", &RunSummary::jn)
    .def_readonly("bandwidth", &RunSummary::bandwidth)
    .def_readonly("t", &RunSummary::t)
    .def_readonly("ell_hat", &RunSummary::ell_hat)
    .def_readonly("ell", &RunSummary::ell)
    .def_readonly("component_count", &RunSummary::component_count)
    .def_readonly("d_min", &RunSummary::d_min)
    .def_readonly("ari", &RunSummary::ari)
    .def_readonly("inertia", &RunSummary::inertia)
    .def_readonly("eigenvalues", &RunSummary::eigenvalues)
    .def_readonly("retained", &RunSummary::retained)
    .def_readonly("embedding", &RunSummary::embedding)
    .def_readonly("labels", &RunSummary::labels)
    .def("to_json", &RunSummary::to_json);
}

PipelineConfig
config_from_json(const std::string& text)
{
  PipelineConfig config;
  config.merge_json(text);
  return config;
}

} // namespace

PYBIND11_MODULE(_levelspec, m)
{
  m.doc() = "Level-set filtered spectral clustering";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<EmptyLevelSetError>(m, "EmptyLevelSetError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  export_types(m);
  m.attr("NOISE") = kNoise;

  m.def("simulate_mixture", &simulate_mixture, py::arg("spec"), py::arg("n"));
  m.def("load_points", &load_points, py::arg("path"));
  m.def("save_points", &save_points, py::arg("path"), py::arg("points"));

  m.def("kde_fit", &kde_fit, py::arg("points"), py::arg("bandwidth"));
  m.def("lscv_score", &lscv_score, py::arg("sample"), py::arg("bandwidth"));
  m.def("lscv_bandwidth",
        [](const PointSet& p, const std::vector<double>& grid) { return lscv_bandwidth(p, grid); },
        py::arg("points"), py::arg("grid"));
  m.def("select_level_by_retention",
        [](const std::vector<double>& v, double f) { return select_level_by_retention(v, f); },
        py::arg("density_values"), py::arg("retain_fraction"));
  m.def("extract_level_set",
        py::overload_cast<const DensityModel&, double>(&extract_level_set),
        py::arg("model"), py::arg("t"));

  m.def("bump_kernel", &bump_kernel, py::arg("u"), py::arg("h"));
  m.def("build_graph",
        [](const Matrix& points, double h) { return build_graph(points, h); },
        py::arg("points"), py::arg("h"));
  m.def("markov_matrix", [](const SimilarityGraph& g) { return Matrix(markov_matrix(g)); });
  m.def("symmetric_matrix", [](const SimilarityGraph& g) { return Matrix(symmetric_matrix(g)); });

  m.def("eigendecompose",
        [](const SimilarityGraph& g, std::optional<Eigen::Index> count) {
          return count ? eigendecompose(g, *count) : eigendecompose(g);
        },
        py::arg("graph"), py::arg("m") = py::none());
  m.def("count_zero_eigenvalues", &count_zero_eigenvalues, py::arg("embedding"),
        py::arg("tol") = kDefaultZeroTolerance);
  m.def("embed", &embed, py::arg("embedding"), py::arg("ell"));

  m.def("kmeans",
        [](const Matrix& features, int k, int restarts, std::uint64_t seed) {
          return kmeans(features, k, KMeansOptions{ restarts, seed, 300 });
        },
        py::arg("features"), py::arg("k"), py::arg("restarts") = 10, py::arg("seed") = 0);
  m.def("align_to_indicators", &align_to_indicators, py::arg("embedded"),
        py::arg("component_labels"));
  m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("a"), py::arg("b"));

  m.def("connected_components", &connected_components, py::arg("points"), py::arg("h"));
  m.def("min_intercomponent_distance", &min_intercomponent_distance, py::arg("points"),
        py::arg("labeling"));
  m.def("dense_reference_spectrum", &dense_reference_spectrum, py::arg("graph"));

  m.def("run_pipeline",
        [](const std::string& config_json) { return run_pipeline(config_from_json(config_json)); },
        py::arg("config_json") = "{}",
        "Run the filtered pipeline from a JSON manifest (same keys as the CLI --config).");
  m.def("run_baseline",
        [](const std::string& config_json) { return run_baseline(config_from_json(config_json)); },
        py::arg("config_json") = "{}");
}
