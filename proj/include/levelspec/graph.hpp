#pragma once

#include "levelspec/datagen.hpp"

#include <Eigen/Sparse>

#include <filesystem>
#include <span>
#include <vector>

namespace levelspec {

using SparseMatrix = Eigen::SparseMatrix<double>;

//! Profile of the compactly supported bump: exp(-1/(1-s)^2) for s < 1,
//! zero otherwise. Peak value e^-1 at s = 0.
double
bump_profile(double s);

//! k_h(u) = bump_profile(|u| / h).
double
bump_kernel(const Eigen::Ref<const Vector>& u, double h);

//! Similarity graph over the retained points.
//!
//! Only the upper triangle (diagonal included) of K is stored; each pair is
//! evaluated once, so the implied full matrix is exactly symmetric. An entry
//! is stored for every pair at distance < h, even when the bump value has
//! underflowed to zero (distance above ~0.963 h).
struct SimilarityGraph
{
  SparseMatrix upper;                    // K, upper triangle incl. diagonal
  Vector degrees;                        // D(i,i) = sum_j K(i,j)
  double h = 0.0;
  std::vector<Eigen::Index> point_index_map; // graph row -> sample index

  Eigen::Index size() const { return degrees.size(); }

  //! Full symmetric K, sparse.
  SparseMatrix full() const;

  //! Dense K; refuses sizes above kMaxDenseSize.
  Matrix dense() const;

  static constexpr Eigen::Index kMaxDenseSize = 5000;
};

//! Builds K over the rows of `points` with cell binning (cell width h).
//! `point_index_map` defaults to 0..n-1.
SimilarityGraph
build_graph(const Matrix& points,
            double h,
            std::vector<Eigen::Index> point_index_map = {});

//! Same graph by the O(n^2) double loop; the reference for build_graph.
SimilarityGraph
build_graph_bruteforce(const Matrix& points,
                       double h,
                       std::vector<Eigen::Index> point_index_map = {});

//! Q = D^-1 K (row stochastic), full sparse storage.
SparseMatrix
markov_matrix(const SimilarityGraph& g);

//! S = D^-1/2 K D^-1/2, full sparse storage.
SparseMatrix
symmetric_matrix(const SimilarityGraph& g);

//! Writes K as a MatrixMarket "coordinate real symmetric" file (1-based,
//! lower triangle).
void
dump_graph(const std::filesystem::path& path, const SimilarityGraph& g);

} // namespace levelspec
