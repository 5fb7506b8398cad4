#pragma once

#include "levelspec/density.hpp"

#include <cstdint>
#include <vector>

namespace levelspec {

inline constexpr int kNoise = -1;

struct KMeansResult
{
  std::vector<int> assignments; // cluster id per row, 0..k-1
  Matrix centroids;             // k x dim
  double inertia = 0.0;         // sum of squared distances to own centroid
  int iterations = 0;
  std::vector<double> inertia_history; // after each Lloyd step, winning run
};

struct KMeansOptions
{
  int restarts = 10;
  std::uint64_t seed = 0;
  int max_iterations = 300;
};

//! Lloyd's algorithm from k-means++ seeding, best of `restarts` runs by
//! inertia (ties to the earliest run). A run stops once assignments repeat
//! or after max_iterations steps. Clusters that go empty are refilled with
//! the point farthest from its centroid.
KMeansResult
kmeans(const Matrix& features, int k, const KMeansOptions& options = {});

//! Number of pairwise distinct rows (exact comparison).
Eigen::Index
count_distinct_rows(const Matrix& rows);

//! Labels over the full sample: k-means ids for retained points, kNoise for
//! discarded ones.
struct ClusteringResult
{
  std::vector<int> labels;
};

ClusteringResult
assemble_labels(const LevelSetExtraction& extraction, const KMeansResult& km);

//! Least-squares map taking embedded rows onto their component indicators.
struct AlignmentReport
{
  Matrix xi;             // ell x ell, xi * rho_j ~ e_{k(j)}
  double residual = 0.0; // max_j |xi rho_j - e_{k(j)}|_2
};

AlignmentReport
align_to_indicators(const Matrix& embedded, const std::vector<int>& component_labels);

//! Adjusted Rand index over the positions where neither labeling is
//! negative (kNoise). Returns 1 when both partitions are trivial in the
//! same way (zero denominator).
double
adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

} // namespace levelspec
