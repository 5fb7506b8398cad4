#include "levelspec/oracle.hpp"

#include "levelspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace levelspec {

namespace {

class DisjointSets
{
public:
  explicit DisjointSets(std::size_t n)
    : parent_(n)
  {
    std::iota(parent_.begin(), parent_.end(), std::size_t{ 0 });
  }

  std::size_t find(std::size_t x)
  {
    std::size_t root = x;
    while (parent_[root] != root)
      root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // smaller index becomes the root
  void unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace

ComponentLabeling
connected_components(const Matrix& points, double h)
{
  if (points.rows() < 1)
    throw ValidationError("connected components need at least one point");
  if (!(h > 0.0))
    throw ValidationError("kernel scale h must be positive");
  const auto n = static_cast<std::size_t>(points.rows());
  DisjointSets sets(n);
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = i + 1; j < points.rows(); ++j)
      if ((points.row(i) - points.row(j)).norm() < h)
        sets.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  ComponentLabeling out;
  out.labels.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (id_of_root[root] < 0)
      id_of_root[root] = out.count++;
    out.labels[i] = id_of_root[root];
  }
  return out;
}

double
min_intercomponent_distance(const Matrix& points, const ComponentLabeling& labeling)
{
  if (static_cast<Eigen::Index>(labeling.labels.size()) != points.rows())
    throw ValidationError("labeling size does not match point count");
  if (labeling.count < 2)
    throw ValidationError("d_min undefined: fewer than two components");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = i + 1; j < points.rows(); ++j)
      if (labeling.labels[static_cast<std::size_t>(i)] !=
          labeling.labels[static_cast<std::size_t>(j)])
        best = std::min(best, (points.row(i) - points.row(j)).norm());
  return best;
}

std::vector<double>
dense_reference_spectrum(const SimilarityGraph& g)
{
  const Eigen::Index n = g.size();
  if (n > kMaxReferenceSize)
    throw ValidationError("reference spectrum limited to " +
                          std::to_string(kMaxReferenceSize) + " points, got " +
                          std::to_string(n));

  // dense K from the upper triangle, degrees re-summed in descending order
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> a(un * un, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * un + j]; };
  for (Eigen::Index col = 0; col < g.upper.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(g.upper, col); it; ++it) {
      at(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) = it.value();
      at(static_cast<std::size_t>(it.col()), static_cast<std::size_t>(it.row())) = it.value();
    }
  std::vector<double> degree(un, 0.0);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = un; j-- > 0;)
      degree[i] += at(i, j);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      at(i, j) = (i == j ? 1.0 : 0.0) - at(i, j) / std::sqrt(degree[i] * degree[j]);

  // cyclic Jacobi sweeps until the off-diagonal mass is negligible
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = i + 1; j < un; ++j)
        s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (double v : a)
    scale = std::max(scale, std::abs(v));
  const double stop = 1e-15 * std::max(scale, 1.0);

  for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < un; ++p) {
      for (std::size_t q = p + 1; q < un; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300)
          continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < un; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < un; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  if (off_norm() > 1e-10 * std::max(scale, 1.0))
    throw NumericError("Jacobi reference solver did not converge");

  std::vector<double> spectrum(un);
  for (std::size_t i = 0; i < un; ++i)
    spectrum[i] = at(i, i);
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

} // namespace levelspec
