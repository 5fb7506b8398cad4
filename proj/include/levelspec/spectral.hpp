#pragma once

#include "levelspec/graph.hpp"

#include <vector>

namespace levelspec {

//! Smallest eigenpairs of I - S and the matching eigenvectors of Q.
//!
//! eigenvalues(k) is an eigenvalue of I - S (ascending), so 1 - eigenvalues(k)
//! is the matching eigenvalue of Q. Columns of s_eigenvectors are orthonormal;
//! q_eigenvectors = D^-1/2 s_eigenvectors.
struct SpectralEmbedding
{
  Vector eigenvalues;
  Matrix s_eigenvectors;
  Matrix q_eigenvectors;
  Vector sqrt_degrees;

  Eigen::Index count() const { return eigenvalues.size(); }
  Eigen::Index size() const { return s_eigenvectors.rows(); }
};

//! The m smallest eigenpairs of I - S by a dense symmetric solve. Each
//! S-eigenvector is signed so that its largest-magnitude entry (lowest index
//! on ties) is positive. Throws NumericError if the solver does not converge.
SpectralEmbedding
eigendecompose(const SimilarityGraph& g, Eigen::Index m);

//! Full eigen spectrum variant: m = g.size().
SpectralEmbedding
eigendecompose(const SimilarityGraph& g);

struct ZeroCountReport
{
  double tolerance = 0.0;
  Eigen::Index count = 0;
  std::vector<double> eigenvalues_head; // first min(50, m) eigenvalues
};

inline constexpr double kDefaultZeroTolerance = 1e-8;

//! Number of eigenvalues of I - S strictly below `tol`: the estimated
//! number of clusters.
ZeroCountReport
count_zero_eigenvalues(const SpectralEmbedding& e, double tol = kDefaultZeroTolerance);

//! rho(X_j): row j holds the first `ell` Q-eigenvector entries for point j.
Matrix
embed(const SpectralEmbedding& e, Eigen::Index ell);

//! Out-of-sample value of the k-th eigenvector at x:
//!   sum_j V_kj k_h(X_j - x) / sum_j k_h(X_j - x),
//! i.e. the transition operator applied to V_k. At a retained point X_i this
//! returns (Q V_k)_i = lambda_k V_ki with lambda_k the Q-eigenvalue, so it
//! reproduces V_ki only on the eigenvalue-1 eigenspace.
//! Throws ValidationError ("outside graph support") when no retained point
//! lies within distance h of x.
double
extend_eigenfunction(const Eigen::Ref<const Vector>& x,
                     const SpectralEmbedding& e,
                     Eigen::Index k,
                     const Matrix& retained_points,
                     double h);

} // namespace levelspec
