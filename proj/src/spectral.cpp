#include "levelspec/spectral.hpp"

#include "levelspec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace levelspec {

namespace {

void
fix_sign(Eigen::Ref<Vector> v)
{
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best)))
      best = i;
  if (v(best) < 0.0)
    v = -v;
}

} // namespace

SpectralEmbedding
eigendecompose(const SimilarityGraph& g, Eigen::Index m)
{
  const Eigen::Index n = g.size();
  if (m < 1 || m > n)
    throw ValidationError("eigenpair count must lie in [1, " + std::to_string(n) + "]");
  if (n > SimilarityGraph::kMaxDenseSize)
    throw ValidationError("graph of size " + std::to_string(n) +
                          " exceeds the dense eigensolver limit of " +
                          std::to_string(SimilarityGraph::kMaxDenseSize));

  Matrix laplacian = -Matrix(symmetric_matrix(g));
  laplacian.diagonal().array() += 1.0;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericError("symmetric eigensolver did not converge (n = " +
                       std::to_string(n) + ", status " +
                       std::to_string(static_cast<int>(solver.info())) + ")");

  SpectralEmbedding e;
  e.eigenvalues = solver.eigenvalues().head(m);
  e.s_eigenvectors = solver.eigenvectors().leftCols(m);
  for (Eigen::Index k = 0; k < m; ++k)
    fix_sign(e.s_eigenvectors.col(k));
  e.sqrt_degrees = g.degrees.cwiseSqrt();
  e.q_eigenvectors = e.sqrt_degrees.cwiseInverse().asDiagonal() * e.s_eigenvectors;
  return e;
}

SpectralEmbedding
eigendecompose(const SimilarityGraph& g)
{
  return eigendecompose(g, g.size());
}

ZeroCountReport
count_zero_eigenvalues(const SpectralEmbedding& e, double tol)
{
  if (!(tol > 0.0))
    throw ValidationError("zero tolerance must be positive");
  ZeroCountReport report;
  report.tolerance = tol;
  for (Eigen::Index k = 0; k < e.count(); ++k)
    if (e.eigenvalues(k) < tol)
      ++report.count;
  const Eigen::Index head = std::min<Eigen::Index>(50, e.count());
  report.eigenvalues_head.assign(e.eigenvalues.data(), e.eigenvalues.data() + head);
  return report;
}

Matrix
embed(const SpectralEmbedding& e, Eigen::Index ell)
{
  if (ell < 1 || ell > e.count())
    throw ValidationError("embedding dimension must lie in [1, " +
                          std::to_string(e.count()) + "]");
  return e.q_eigenvectors.leftCols(ell);
}

double
extend_eigenfunction(const Eigen::Ref<const Vector>& x,
                     const SpectralEmbedding& e,
                     Eigen::Index k,
                     const Matrix& retained_points,
                     double h)
{
  if (k < 0 || k >= e.count())
    throw ValidationError("eigen index out of range");
  if (retained_points.rows() != e.size())
    throw ValidationError("retained point count does not match the embedding");
  if (x.size() != retained_points.cols())
    throw ValidationError("query dimension does not match retained points");
  if (!(h > 0.0))
    throw ValidationError("kernel scale h must be positive");

  double weighted = 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < retained_points.rows(); ++j) {
    const double w = bump_profile((retained_points.row(j).transpose() - x).norm() / h);
    weighted += w * e.q_eigenvectors(j, k);
    total += w;
  }
  if (!(total > 0.0))
    throw ValidationError("outside graph support: no retained point within h of the query");
  return weighted / total;
}

} // namespace levelspec
