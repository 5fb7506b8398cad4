#include "levelspec/errors.hpp"
#include "levelspec/graph.hpp"
#include "levelspec/oracle.hpp"
#include "support/instances.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace levelspec;

TEST_CASE("bump kernel values")
{
  const double h = 0.8;
  CHECK(bump_kernel(Vector::Zero(2), h) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::exp(-1.0) == doctest::Approx(0.36787944).epsilon(1e-8));
  CHECK(bump_kernel(Vector{ { h, 0.0 } }, h) == 0.0);
  CHECK(bump_kernel(Vector{ { 0.0, 2 * h } }, h) == 0.0);
  // |x| = 1/2: exp(-1 / 0.25)
  CHECK(bump_kernel(Vector{ { 0.0, h / 2 } }, h) == doctest::Approx(0.01831564).epsilon(1e-7));
  CHECK_THROWS_AS(bump_kernel(Vector::Zero(2), 0.0), ValidationError);

  for (double s = 0.0; s < 1.0; s += 0.01) {
    const double v = bump_profile(s);
    CHECK(v >= 0.0);
    CHECK(v <= std::exp(-1.0));
  }
}

TEST_CASE("build_graph small configurations")
{
  const double h = 1.0;
  const double self = std::exp(-1.0);

  SUBCASE("two points 2h apart are isolated")
  {
    Matrix p(2, 2);
    p << 0, 0, 2 * h, 0;
    const auto g = build_graph(p, h);
    const Matrix k = g.dense();
    CHECK(k(0, 0) == self);
    CHECK(k(1, 1) == self);
    CHECK(k(0, 1) == 0.0);
    CHECK(k(1, 0) == 0.0);
  }
  SUBCASE("coincident points")
  {
    const auto g = build_graph(Matrix::Ones(2, 3), h);
    CHECK(g.dense() == Matrix::Constant(2, 2, self));
    CHECK(g.degrees(0) == doctest::Approx(2 * self).epsilon(1e-15));
    CHECK(g.degrees(1) == g.degrees(0));
  }
  SUBCASE("collinear points 0.6h apart")
  {
    Matrix p(3, 1);
    p << 0.0, 0.6, 1.2;
    const Matrix k = build_graph(p, h).dense();
    CHECK(k(0, 1) == doctest::Approx(std::exp(-6.25)).epsilon(1e-12));
    CHECK(k(1, 2) == doctest::Approx(std::exp(-6.25)).epsilon(1e-12));
    CHECK(k(0, 1) == doctest::Approx(1.9305e-3).epsilon(1e-4));
    CHECK(k(0, 2) == 0.0);
  }
  SUBCASE("index map")
  {
    Matrix p(2, 1);
    p << 0.0, 0.1;
    const auto g = build_graph(p, h, { 4, 9 });
    CHECK(g.point_index_map == std::vector<Eigen::Index>{ 4, 9 });
    CHECK_THROWS_AS(build_graph(p, h, { 1, 2, 3 }), ValidationError);
  }
  SUBCASE("bad inputs")
  {
    CHECK_THROWS_AS(build_graph(Matrix::Zero(0, 2), h), ValidationError);
    CHECK_THROWS_AS(build_graph(Matrix::Zero(2, 2), -1.0), ValidationError);
  }
}

TEST_CASE("cell binning matches the brute-force graph exactly")
{
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dim = static_cast<Eigen::Index>(1 + trial % 5);
    const Matrix p = testing::uniform_points(rng, 60 + trial, dim, 3.0) .array() - 1.5;
    const double h = rng.uniform(0.3, 1.5);
    const auto fast = build_graph(p, h);
    const auto slow = build_graph_bruteforce(p, h);
    CHECK(Matrix(fast.upper) == Matrix(slow.upper));
    CHECK(fast.upper.nonZeros() == slow.upper.nonZeros());
    CHECK(fast.degrees == slow.degrees);
  }
}

TEST_CASE("sparsity pattern follows the open h-ball")
{
  Rng rng(37);
  const Matrix p = testing::uniform_points(rng, 120, 2, 4.0);
  const double h = 0.6;
  const auto g = build_graph(p, h);
  const SparseMatrix full = g.full();
  Matrix pattern = Matrix::Zero(p.rows(), p.rows());
  for (Eigen::Index c = 0; c < full.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(full, c); it; ++it)
      pattern(it.row(), it.col()) = 1.0;
  const Matrix k = g.dense();
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.rows(); ++j) {
      const double dist = (p.row(i) - p.row(j)).norm();
      CHECK((pattern(i, j) == 1.0) == (dist < h));
      if (dist < 0.95 * h)
        CHECK(k(i, j) > 0.0);
      CHECK(k(i, j) == k(j, i));
    }
}

TEST_CASE("markov matrix")
{
  SUBCASE("isolated point row")
  {
    Matrix p(3, 1);
    p << 0.0, 0.2, 5.0;
    const Matrix q = Matrix(markov_matrix(build_graph(p, 1.0)));
    CHECK(q(2, 2) == 1.0);
    CHECK(q(2, 0) == 0.0);
    CHECK(q(2, 1) == 0.0);
  }
  SUBCASE("coincident points")
  {
    const Matrix q = Matrix(markov_matrix(build_graph(Matrix::Zero(2, 2), 1.0)));
    CHECK(q == Matrix::Constant(2, 2, 0.5));
  }
  SUBCASE("rows sum to one")
  {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix p = testing::uniform_points(rng, 80, 2, 3.0);
      const Matrix q = Matrix(markov_matrix(build_graph(p, rng.uniform(0.2, 1.0))));
      CHECK((q.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
      CHECK(q.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("symmetric normalization")
{
  SUBCASE("isolated point")
  {
    const Matrix s = Matrix(symmetric_matrix(build_graph(Matrix::Zero(1, 2), 1.0)));
    CHECK(s(0, 0) == 1.0);
  }
  SUBCASE("coincident points")
  {
    const Matrix s = Matrix(symmetric_matrix(build_graph(Matrix::Zero(2, 2), 1.0)));
    CHECK(s == Matrix::Constant(2, 2, 0.5));
  }
  SUBCASE("conjugate to Q on a random graph")
  {
    Rng rng(43);
    const Matrix p = testing::uniform_points(rng, 30, 2, 2.0);
    const auto g = build_graph(p, 0.7);
    const Matrix s = Matrix(symmetric_matrix(g));
    const Matrix q = Matrix(markov_matrix(g));
    // dense recomputation: D^1/2 Q D^-1/2
    const Vector sq = g.degrees.cwiseSqrt();
    const Matrix conj = sq.asDiagonal() * q * sq.cwiseInverse().asDiagonal();
    CHECK((s - conj).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spectrum of S lies in [-1, 1]")
{
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix p = testing::uniform_points(rng, 50, 1 + trial % 3, 2.0);
    const Matrix s = Matrix(symmetric_matrix(build_graph(p, rng.uniform(0.1, 2.0))));
    const Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1.0 - 1e-9);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
  }
}

TEST_CASE("component indicators are fixed by Q")
{
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_instance(rng, 5, 80);
    const auto g = build_graph(inst.points, inst.h);
    const SparseMatrix q = markov_matrix(g);
    const auto comps = connected_components(inst.points, inst.h);
    for (int c = 0; c < comps.count; ++c) {
      Vector ind = Vector::Zero(inst.points.rows());
      for (std::size_t i = 0; i < comps.labels.size(); ++i)
        if (comps.labels[i] == c)
          ind(static_cast<Eigen::Index>(i)) = 1.0;
      CHECK(((q * ind) - ind).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("dump_graph writes MatrixMarket triplets")
{
  Matrix p(3, 1);
  p << 0.0, 0.5, 4.0;
  const auto g = build_graph(p, 1.0);
  const auto path = std::filesystem::temp_directory_path() / "levelspec_graph.mtx";
  dump_graph(path, g);
  std::ifstream in(path);
  std::string banner;
  std::getline(in, banner);
  CHECK(banner == "%%MatrixMarket matrix coordinate real symmetric");
  long rows, cols, nnz;
  in >> rows >> cols >> nnz;
  CHECK(rows == 3);
  CHECK(cols == 3);
  CHECK(nnz == 4); // three diagonal entries and one edge
  long i, j;
  double v;
  Matrix rebuilt = Matrix::Zero(3, 3);
  while (in >> i >> j >> v) {
    CHECK(i >= j);
    rebuilt(i - 1, j - 1) = v;
    rebuilt(j - 1, i - 1) = v;
  }
  CHECK(rebuilt == g.dense());
}
