#include "levelspec/graph.hpp"

#include "levelspec/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <string>

namespace levelspec {

double
bump_profile(double s)
{
  if (!(s < 1.0))
    return 0.0;
  const double gap = 1.0 - s;
  return std::exp(-1.0 / (gap * gap));
}

double
bump_kernel(const Eigen::Ref<const Vector>& u, double h)
{
  if (!(h > 0.0))
    throw ValidationError("kernel scale h must be positive");
  return bump_profile(u.norm() / h);
}

namespace {

using Triplet = Eigen::Triplet<double>;

void
check_inputs(const Matrix& points, double h, std::vector<Eigen::Index>& map)
{
  if (points.rows() < 1)
    throw ValidationError("graph needs at least one point");
  if (!(h > 0.0) || !std::isfinite(h))
    throw ValidationError("kernel scale h must be positive");
  if (map.empty()) {
    map.resize(static_cast<std::size_t>(points.rows()));
    std::iota(map.begin(), map.end(), Eigen::Index{ 0 });
  } else if (static_cast<Eigen::Index>(map.size()) != points.rows()) {
    throw ValidationError("point index map length does not match point count");
  }
}

// Adds the pair (i, j), i < j, when the points are closer than h.
void
maybe_add_edge(const Matrix& points, Eigen::Index i, Eigen::Index j, double h,
               std::vector<Triplet>& triplets)
{
  const double dist = (points.row(i) - points.row(j)).norm();
  if (dist < h)
    triplets.emplace_back(i, j, bump_profile(dist / h));
}

SimilarityGraph
assemble(std::vector<Triplet> triplets, Eigen::Index n, double h,
         std::vector<Eigen::Index> map)
{
  const double self = bump_profile(0.0);
  for (Eigen::Index i = 0; i < n; ++i)
    triplets.emplace_back(i, i, self);

  SimilarityGraph g;
  g.upper.resize(n, n);
  g.upper.setFromTriplets(triplets.begin(), triplets.end());
  g.upper.makeCompressed();
  g.h = h;
  g.point_index_map = std::move(map);

  // row sums of the full matrix, accumulated in ascending column order
  const SparseMatrix full = g.full();
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows = full;
  g.degrees.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, i); it; ++it)
      sum += it.value();
    g.degrees(i) = sum;
  }
  return g;
}

} // namespace

SparseMatrix
SimilarityGraph::full() const
{
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * upper.nonZeros()));
  for (Eigen::Index col = 0; col < upper.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(upper, col); it; ++it) {
      triplets.emplace_back(it.row(), it.col(), it.value());
      if (it.row() != it.col())
        triplets.emplace_back(it.col(), it.row(), it.value());
    }
  SparseMatrix out(upper.rows(), upper.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

Matrix
SimilarityGraph::dense() const
{
  if (size() > kMaxDenseSize)
    throw ValidationError("graph of size " + std::to_string(size()) +
                          " exceeds the dense limit of " +
                          std::to_string(kMaxDenseSize));
  return Matrix(full());
}

SimilarityGraph
build_graph(const Matrix& points, double h, std::vector<Eigen::Index> point_index_map)
{
  check_inputs(points, h, point_index_map);
  const Eigen::Index n = points.rows();
  const Eigen::Index dim = points.cols();
  // 3^d neighbor cells stops paying off quickly
  if (dim > 4)
    return build_graph_bruteforce(points, h, std::move(point_index_map));

  using Cell = std::vector<long long>;
  std::map<Cell, std::vector<Eigen::Index>> cells;
  std::vector<Cell> cell_of(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Cell c(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k)
      c[static_cast<std::size_t>(k)] = static_cast<long long>(std::floor(points(i, k) / h));
    cells[c].push_back(i);
    cell_of[static_cast<std::size_t>(i)] = std::move(c);
  }

  std::size_t offsets = 1;
  for (Eigen::Index k = 0; k < dim; ++k)
    offsets *= 3;

  std::vector<Triplet> triplets;
  Cell probe(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Cell& home = cell_of[static_cast<std::size_t>(i)];
    for (std::size_t code = 0; code < offsets; ++code) {
      std::size_t rest = code;
      for (std::size_t k = 0; k < probe.size(); ++k) {
        probe[k] = home[k] + static_cast<long long>(rest % 3) - 1;
        rest /= 3;
      }
      const auto found = cells.find(probe);
      if (found == cells.end())
        continue;
      for (Eigen::Index j : found->second)
        if (j > i)
          maybe_add_edge(points, i, j, h, triplets);
    }
  }
  return assemble(std::move(triplets), n, h, std::move(point_index_map));
}

SimilarityGraph
build_graph_bruteforce(const Matrix& points, double h,
                       std::vector<Eigen::Index> point_index_map)
{
  check_inputs(points, h, point_index_map);
  const Eigen::Index n = points.rows();
  std::vector<Triplet> triplets;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      maybe_add_edge(points, i, j, h, triplets);
  return assemble(std::move(triplets), n, h, std::move(point_index_map));
}

SparseMatrix
markov_matrix(const SimilarityGraph& g)
{
  SparseMatrix q = g.full();
  for (Eigen::Index col = 0; col < q.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(q, col); it; ++it)
      it.valueRef() = it.value() / g.degrees(it.row());
  return q;
}

SparseMatrix
symmetric_matrix(const SimilarityGraph& g)
{
  const Vector inv_sqrt = g.degrees.cwiseSqrt().cwiseInverse();
  SparseMatrix s = g.full();
  for (Eigen::Index col = 0; col < s.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(s, col); it; ++it)
      it.valueRef() = it.value() * inv_sqrt(std::min(it.row(), it.col())) * inv_sqrt(std::max(it.row(), it.col()));
  return s;
}

void
dump_graph(const std::filesystem::path& path, const SimilarityGraph& g)
{
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.size() << ' ' << g.size() << ' ' << g.upper.nonZeros() << '\n';
  for (Eigen::Index col = 0; col < g.upper.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(g.upper, col); it; ++it)
      out << it.col() + 1 << ' ' << it.row() + 1 << ' ' << it.value() << '\n';
  if (!out)
    throw IoError("write failed for " + path.string());
}

} // namespace levelspec
