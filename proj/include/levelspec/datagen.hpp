#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace levelspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

//! Sample of n points in R^d (one point per row) with optional ground truth.
struct PointSet
{
  Matrix points;
  std::optional<std::vector<int>> labels;

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }

  //! Throws ValidationError unless n >= 1, every coordinate is finite and
  //! the label vector (if any) has n entries.
  void validate() const;
};

//! Planar four-component mixture: a centered Gaussian blob, two noisy
//! rings and a uniform background square. Labels are 0..3 in that order.
struct MixtureSpec
{
  std::array<double, 4> proportions{ 0.10, 0.32, 0.53, 0.05 };
  double gaussian_sigma = 0.2;
  double ring1_radius_mean = 1.0;
  double ring1_radius_sd = 0.1;
  double ring2_radius_mean = 2.0;
  double ring2_radius_sd = 0.2;
  double noise_box_halfwidth = 3.0;
  std::uint64_t seed = 0;

  void validate() const;
};

//! Label carried by points of the uniform background component.
inline constexpr int kBackgroundComponent = 3;

//! Draws n i.i.d. points. Each point picks its component from the
//! proportions, so component counts are multinomial. Deterministic in
//! spec.seed.
PointSet
simulate_mixture(const MixtureSpec& spec, Eigen::Index n);

//! Reads a comma-separated file. An optional first row of column names is
//! recognized when it contains a non-numeric field; a column named "label"
//! holds integer labels, every other column is a coordinate. Without a
//! header all columns are coordinates.
PointSet
load_points(const std::filesystem::path& path);

//! Writes x0..x{d-1}[,label] with 17 significant digits.
void
save_points(const std::filesystem::path& path, const PointSet& points);

} // namespace levelspec
