#include "levelspec/cluster.hpp"

#include "levelspec/errors.hpp"
#include "levelspec/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace levelspec {

Eigen::Index
count_distinct_rows(const Matrix& rows)
{
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rows.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{ 0 });
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      if (rows(a, c) < rows(b, c))
        return true;
      if (rows(b, c) < rows(a, c))
        return false;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  Eigen::Index distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (less(order[i - 1], order[i]))
      ++distinct;
  return distinct;
}

namespace {

struct Run
{
  std::vector<int> assignments;
  Matrix centroids;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

Matrix
seed_plus_plus(const Matrix& x, int k, Rng& rng)
{
  const Eigen::Index n = x.rows();
  Matrix centers(k, x.cols());
  centers.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  Vector nearest(n);
  for (Eigen::Index i = 0; i < n; ++i)
    nearest(i) = (x.row(i) - centers.row(0)).squaredNorm();

  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += nearest(i);
        if (target < acc && nearest(i) > 0.0) {
          pick = i;
          break;
        }
      }
      // rounding can leave target just past the last partial sum
      while (nearest(pick) == 0.0 && pick > 0)
        --pick;
    }
    centers.row(c) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i)
      nearest(i) = std::min(nearest(i), (x.row(i) - centers.row(c)).squaredNorm());
  }
  return centers;
}

int
nearest_center(const Matrix& x, Eigen::Index i, const Matrix& centers, double& dist2)
{
  int best = 0;
  dist2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const double d2 = (x.row(i) - centers.row(c)).squaredNorm();
    if (d2 < dist2) {
      dist2 = d2;
      best = static_cast<int>(c);
    }
  }
  return best;
}

// Means of the assigned rows; refills empty clusters with the row farthest
// from its own centroid until none is empty.
void
update_centroids(const Matrix& x, std::vector<int>& assign, Matrix& centers)
{
  const Eigen::Index k = centers.rows();
  while (true) {
    centers.setZero();
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      centers.row(assign[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    int empty = -1;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) {
        if (empty < 0)
          empty = static_cast<int>(c);
      } else {
        centers.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    if (empty < 0)
      return;

    Eigen::Index far = -1;
    double far_d2 = -1.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int c = assign[static_cast<std::size_t>(i)];
      if (counts[static_cast<std::size_t>(c)] < 2)
        continue;
      const double d2 = (x.row(i) - centers.row(c)).squaredNorm();
      if (d2 > far_d2) {
        far_d2 = d2;
        far = i;
      }
    }
    if (far < 0)
      throw NumericError("k-means could not refill an empty cluster");
    assign[static_cast<std::size_t>(far)] = empty;
  }
}

double
inertia_of(const Matrix& x, const std::vector<int>& assign, const Matrix& centers)
{
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    total += (x.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  return total;
}

Run
lloyd(const Matrix& x, int k, Rng& rng, int max_iterations)
{
  Run run;
  run.centroids = seed_plus_plus(x, k, rng);
  run.assignments.assign(static_cast<std::size_t>(x.rows()), -1);
  std::vector<int> next(run.assignments.size());

  for (int iter = 1; iter <= max_iterations; ++iter) {
    double d2;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      next[static_cast<std::size_t>(i)] = nearest_center(x, i, run.centroids, d2);
    if (next == run.assignments)
      break;
    run.assignments = next;
    update_centroids(x, run.assignments, run.centroids);
    run.iterations = iter;
    run.history.push_back(inertia_of(x, run.assignments, run.centroids));
  }
  run.inertia = inertia_of(x, run.assignments, run.centroids);
  return run;
}

} // namespace

KMeansResult
kmeans(const Matrix& features, int k, const KMeansOptions& options)
{
  if (features.rows() < 1 || features.cols() < 1)
    throw ValidationError("k-means needs at least one feature row");
  if (!features.allFinite())
    throw ValidationError("k-means features must be finite");
  if (k < 1)
    throw ValidationError("k must be at least 1");
  if (options.restarts < 1)
    throw ValidationError("restarts must be at least 1");
  if (options.max_iterations < 1)
    throw ValidationError("max_iterations must be at least 1");
  if (k > count_distinct_rows(features))
    throw ValidationError("k exceeds distinct points");

  Run best;
  bool have_best = false;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    Run run = lloyd(features, k, rng, options.max_iterations);
    if (!have_best || run.inertia < best.inertia) {
      best = std::move(run);
      have_best = true;
    }
  }

  KMeansResult out;
  out.assignments = std::move(best.assignments);
  out.centroids = std::move(best.centroids);
  out.inertia = best.inertia;
  out.iterations = best.iterations;
  out.inertia_history = std::move(best.history);
  return out;
}

ClusteringResult
assemble_labels(const LevelSetExtraction& extraction, const KMeansResult& km)
{
  if (km.assignments.size() != extraction.retained.size())
    throw ValidationError("k-means assignment count " +
                          std::to_string(km.assignments.size()) +
                          " does not match retained count " +
                          std::to_string(extraction.retained.size()));
  ClusteringResult out;
  out.labels.assign(extraction.density_values.size(), kNoise);
  for (std::size_t r = 0; r < extraction.retained.size(); ++r)
    out.labels[static_cast<std::size_t>(extraction.retained[r])] = km.assignments[r];
  return out;
}

AlignmentReport
align_to_indicators(const Matrix& embedded, const std::vector<int>& component_labels)
{
  const Eigen::Index rows = embedded.rows();
  const Eigen::Index ell = embedded.cols();
  if (static_cast<Eigen::Index>(component_labels.size()) != rows)
    throw ValidationError("component label count does not match embedded rows");
  if (ell < 1)
    throw ValidationError("embedding has no columns");
  std::vector<bool> seen(static_cast<std::size_t>(ell), false);
  for (int label : component_labels) {
    if (label < 0 || label >= ell)
      throw ValidationError("component labels must lie in [0, ell)");
    seen[static_cast<std::size_t>(label)] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ValidationError("number of distinct component labels must equal ell");

  Matrix targets = Matrix::Zero(rows, ell);
  for (Eigen::Index j = 0; j < rows; ++j)
    targets(j, component_labels[static_cast<std::size_t>(j)]) = 1.0;

  // rows: rho_j^T xi^T ~ e_k^T, so xi^T is the least-squares solution
  const Eigen::ColPivHouseholderQR<Matrix> qr(embedded);
  if (qr.rank() < ell)
    throw NumericError("degenerate embedding: feature matrix has rank " +
                       std::to_string(qr.rank()) + " < " + std::to_string(ell));
  const Matrix xi_t = qr.solve(targets);

  AlignmentReport report;
  report.xi = xi_t.transpose();
  const Matrix mapped = embedded * xi_t;
  report.residual = (mapped - targets).rowwise().norm().maxCoeff();
  return report;
}

double
adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b)
{
  if (a.size() != b.size())
    throw ValidationError("label vectors must have equal length");
  std::map<std::pair<int, int>, double> table;
  std::map<int, double> rows, cols;
  double n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0)
      continue;
    table[{ a[i], b[i] }] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
    n += 1.0;
  }
  if (n < 2.0)
    throw ValidationError("adjusted Rand index needs at least 2 comparable points");

  auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : table)
    index += pairs(count);
  for (const auto& [key, count] : rows)
    sum_rows += pairs(count);
  for (const auto& [key, count] : cols)
    sum_cols += pairs(count);
  const double expected = sum_rows * sum_cols / pairs(n);
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected)
    return 1.0;
  return (index - expected) / (maximum - expected);
}

} // namespace levelspec
