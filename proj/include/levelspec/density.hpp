#pragma once

#include "levelspec/datagen.hpp"

#include <span>
#include <vector>

namespace levelspec {

//! Gaussian kernel density estimate
//!   f(x) = 1/(n b^d) sum_i phi_d((x - X_i) / b)
//! with phi_d the standard d-variate normal density. Evaluation is exact,
//! O(n) per query.
class DensityModel
{
public:
  DensityModel(Matrix sample, double bandwidth);

  double bandwidth() const { return bandwidth_; }
  const Matrix& sample() const { return sample_; }
  Eigen::Index dim() const { return sample_.cols(); }

  double evaluate_at(const Eigen::Ref<const Vector>& x) const;

  //! One density value per query row.
  std::vector<double> evaluate(const Matrix& queries) const;

private:
  Matrix sample_;
  double bandwidth_;
  double norm_;
};

DensityModel
kde_fit(const PointSet& points, double bandwidth);

std::vector<double>
kde_eval(const DensityModel& model, const Matrix& queries);

//! Least-squares cross-validation criterion with the exact Gaussian
//! convolution kernel:
//!   (1/(n^2 b^d)) sum_{i,j} (phi*phi)_d(D_ij / b)
//!     - (2/(n(n-1) b^d)) sum_{i != j} phi_d(D_ij / b).
double
lscv_score(const Matrix& sample, double bandwidth);

//! Grid value minimizing lscv_score; ties go to the smaller bandwidth.
double
lscv_bandwidth(const PointSet& points, std::span<const double> grid);

//! Log-spaced candidate grid around the normal-reference bandwidth
//! 1.06 * sigma * n^(-1/(d+4)) (sigma averaged over coordinates), from 0.1x
//! to 2x, `count` values.
std::vector<double>
default_bandwidth_grid(const Matrix& sample, std::size_t count = 40);

//! Threshold t equal to the ceil(fraction * n)-th largest value, so at least
//! that many values satisfy v >= t (exactly that many without ties).
double
select_level_by_retention(std::span<const double> density_values,
                          double retain_fraction);

//! Sample points whose estimated density reaches the level.
struct LevelSetExtraction
{
  double level = 0.0;
  std::vector<Eigen::Index> retained; // ascending
  std::vector<double> density_values; // one per sample point

  std::size_t retained_count() const { return retained.size(); }
};

//! retained = { i : density_values[i] >= t }. Throws EmptyLevelSetError when
//! nothing survives.
LevelSetExtraction
extract_level_set(std::vector<double> density_values, double t);

LevelSetExtraction
extract_level_set(const DensityModel& model, double t);

//! Rows of `points` listed in `indices`, in that order.
Matrix
select_rows(const Matrix& points, std::span<const Eigen::Index> indices);

} // namespace levelspec
