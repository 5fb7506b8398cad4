#include "levelspec/density.hpp"

#include "levelspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace levelspec {

DensityModel::DensityModel(Matrix sample, double bandwidth)
  : sample_(std::move(sample))
  , bandwidth_(bandwidth)
{
  if (sample_.rows() < 1 || sample_.cols() < 1)
    throw ValidationError("density sample must be nonempty");
  if (!(bandwidth_ > 0.0) || !std::isfinite(bandwidth_))
    throw ValidationError("bandwidth must be positive");
  const double d = static_cast<double>(sample_.cols());
  norm_ = 1.0 / (static_cast<double>(sample_.rows()) *
                 std::pow(bandwidth_, d) *
                 std::pow(2.0 * std::numbers::pi, d / 2.0));
}

double
DensityModel::evaluate_at(const Eigen::Ref<const Vector>& x) const
{
  if (x.size() != sample_.cols())
    throw ValidationError("query dimension " + std::to_string(x.size()) +
                          " does not match sample dimension " +
                          std::to_string(sample_.cols()));
  const double inv_two_b2 = 1.0 / (2.0 * bandwidth_ * bandwidth_);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sample_.rows(); ++i) {
    const double r2 = (sample_.row(i).transpose() - x).squaredNorm();
    sum += std::exp(-r2 * inv_two_b2);
  }
  return norm_ * sum;
}

std::vector<double>
DensityModel::evaluate(const Matrix& queries) const
{
  if (queries.cols() != sample_.cols())
    throw ValidationError("query dimension " + std::to_string(queries.cols()) +
                          " does not match sample dimension " +
                          std::to_string(sample_.cols()));
  std::vector<double> out(static_cast<std::size_t>(queries.rows()));
  for (Eigen::Index q = 0; q < queries.rows(); ++q)
    out[static_cast<std::size_t>(q)] = evaluate_at(queries.row(q).transpose());
  return out;
}

DensityModel
kde_fit(const PointSet& points, double bandwidth)
{
  points.validate();
  return DensityModel(points.points, bandwidth);
}

std::vector<double>
kde_eval(const DensityModel& model, const Matrix& queries)
{
  return model.evaluate(queries);
}

namespace {

// Squared distances of all unordered pairs i < j, row-major order.
std::vector<double>
pair_squared_distances(const Matrix& sample)
{
  const Eigen::Index n = sample.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      out.push_back((sample.row(i) - sample.row(j)).squaredNorm());
  return out;
}

double
lscv_from_pairs(const std::vector<double>& pair_r2,
                Eigen::Index n,
                Eigen::Index dim,
                double b)
{
  const double nn = static_cast<double>(n);
  const double d = static_cast<double>(dim);
  const double conv_norm = std::pow(4.0 * std::numbers::pi, -d / 2.0);
  const double kern_norm = std::pow(2.0 * std::numbers::pi, -d / 2.0);
  const double inv_b2 = 1.0 / (b * b);

  double conv_sum = 0.0;
  double kern_sum = 0.0;
  for (double r2 : pair_r2) {
    const double u2 = r2 * inv_b2;
    conv_sum += std::exp(-u2 / 4.0);
    kern_sum += std::exp(-u2 / 2.0);
  }
  const double bd = std::pow(b, d);
  // the i == j terms contribute n * (phi*phi)(0) to the first sum only
  const double first = conv_norm * (nn + 2.0 * conv_sum) / (nn * nn * bd);
  const double second = 2.0 * kern_norm * (2.0 * kern_sum) / (nn * (nn - 1.0) * bd);
  return first - second;
}

} // namespace

double
lscv_score(const Matrix& sample, double bandwidth)
{
  if (sample.rows() < 2)
    throw ValidationError("cross-validation needs at least 2 points");
  if (!(bandwidth > 0.0))
    throw ValidationError("bandwidth must be positive");
  return lscv_from_pairs(pair_squared_distances(sample), sample.rows(),
                         sample.cols(), bandwidth);
}

double
lscv_bandwidth(const PointSet& points, std::span<const double> grid)
{
  points.validate();
  if (grid.empty())
    throw ValidationError("bandwidth grid must be nonempty");
  for (double b : grid)
    if (!(b > 0.0) || !std::isfinite(b))
      throw ValidationError("bandwidth grid entries must be positive");
  if (points.size() < 2)
    throw ValidationError("cross-validation needs at least 2 points");

  const auto pair_r2 = pair_squared_distances(points.points);
  double best_b = 0.0;
  double best_score = 0.0;
  bool first = true;
  for (double b : grid) {
    const double score = lscv_from_pairs(pair_r2, points.size(), points.dim(), b);
    if (first || score < best_score || (score == best_score && b < best_b)) {
      best_b = b;
      best_score = score;
      first = false;
    }
  }
  return best_b;
}

std::vector<double>
default_bandwidth_grid(const Matrix& sample, std::size_t count)
{
  if (sample.rows() < 2)
    throw ValidationError("bandwidth grid needs at least 2 points");
  if (count < 1)
    throw ValidationError("bandwidth grid needs at least one value");
  const double n = static_cast<double>(sample.rows());
  const double d = static_cast<double>(sample.cols());
  const Eigen::RowVectorXd mean = sample.colwise().mean();
  double sigma = 0.0;
  for (Eigen::Index c = 0; c < sample.cols(); ++c)
    sigma += std::sqrt((sample.col(c).array() - mean(c)).square().sum() / (n - 1.0));
  sigma /= d;
  if (!(sigma > 0.0))
    throw ValidationError("sample has zero spread; supply an explicit bandwidth");

  const double reference = 1.06 * sigma * std::pow(n, -1.0 / (d + 4.0));
  const double lo = std::log(0.1 * reference);
  const double hi = std::log(2.0 * reference);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = std::exp(lo + frac * (hi - lo));
  }
  return grid;
}

double
select_level_by_retention(std::span<const double> density_values,
                          double retain_fraction)
{
  if (density_values.empty())
    throw ValidationError("density values must be nonempty");
  if (!(retain_fraction > 0.0 && retain_fraction <= 1.0))
    throw ValidationError("retain fraction must lie in (0, 1]");
  const auto n = density_values.size();
  // guard against 0.85 * 1900 landing a hair above 1615
  auto keep = static_cast<std::size_t>(
    std::ceil(retain_fraction * static_cast<double>(n) - 1e-9));
  keep = std::clamp<std::size_t>(keep, 1, n);

  std::vector<double> sorted(density_values.begin(), density_values.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(keep - 1),
                   sorted.end(), std::greater<>());
  return sorted[keep - 1];
}

LevelSetExtraction
extract_level_set(std::vector<double> density_values, double t)
{
  if (!(t >= 0.0))
    throw ValidationError("level must be nonnegative");
  LevelSetExtraction out;
  out.level = t;
  for (std::size_t i = 0; i < density_values.size(); ++i)
    if (density_values[i] >= t)
      out.retained.push_back(static_cast<Eigen::Index>(i));
  if (out.retained.empty())
    throw EmptyLevelSetError("empty level set at t = " + std::to_string(t));
  out.density_values = std::move(density_values);
  return out;
}

LevelSetExtraction
extract_level_set(const DensityModel& model, double t)
{
  return extract_level_set(model.evaluate(model.sample()), t);
}

Matrix
select_rows(const Matrix& points, std::span<const Eigen::Index> indices)
{
  Matrix out(static_cast<Eigen::Index>(indices.size()), points.cols());
  for (std::size_t r = 0; r < indices.size(); ++r)
    out.row(static_cast<Eigen::Index>(r)) = points.row(indices[r]);
  return out;
}

} // namespace levelspec
