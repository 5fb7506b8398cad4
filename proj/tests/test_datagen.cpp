#include "levelspec/datagen.hpp"
#include "levelspec/errors.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace levelspec;

namespace {

std::filesystem::path
write_temp(const std::string& name, const std::string& body)
{
  const auto path = std::filesystem::temp_directory_path() / ("levelspec_" + name);
  std::ofstream(path) << body;
  return path;
}

} // namespace

TEST_CASE("simulate_mixture with the reference mixture")
{
  MixtureSpec spec;
  spec.seed = 42;
  const PointSet p = simulate_mixture(spec, 1900);
  REQUIRE(p.size() == 1900);
  REQUIRE(p.dim() == 2);
  REQUIRE(p.labels);
  p.validate();

  // multinomial counts around (190, 608, 1007, 95), 4 standard errors
  std::array<int, 4> counts{};
  for (int l : *p.labels)
    ++counts[static_cast<std::size_t>(l)];
  const std::array<double, 4> expected{ 190, 608, 1007, 95 };
  for (std::size_t c = 0; c < 4; ++c) {
    const double prob = expected[c] / 1900.0;
    const double se = std::sqrt(1900.0 * prob * (1.0 - prob));
    CHECK(std::abs(counts[c] - expected[c]) < 4.0 * se);
  }
}

TEST_CASE("degenerate Gaussian component")
{
  MixtureSpec spec;
  spec.proportions = { 1.0, 0.0, 0.0, 0.0 };
  spec.gaussian_sigma = 1e-9;
  const PointSet p = simulate_mixture(spec, 3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(p.points.row(i).norm() < 1e-6);
    CHECK((*p.labels)[static_cast<std::size_t>(i)] == 0);
  }
}

TEST_CASE("simulation is deterministic in the seed")
{
  MixtureSpec spec;
  spec.seed = 0xC0FFEE;
  const PointSet a = simulate_mixture(spec, 500);
  const PointSet b = simulate_mixture(spec, 500);
  CHECK(a.points == b.points);
  CHECK(*a.labels == *b.labels);
  spec.seed += 1;
  CHECK(simulate_mixture(spec, 500).points != a.points);
}

TEST_CASE("component frequencies over 10000 draws")
{
  MixtureSpec spec;
  spec.seed = 7;
  const PointSet p = simulate_mixture(spec, 10000);
  std::array<double, 4> freq{};
  for (int l : *p.labels)
    freq[static_cast<std::size_t>(l)] += 1.0 / 10000.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double prob = spec.proportions[c];
    CHECK(std::abs(freq[c] - prob) < 3.0 * std::sqrt(prob * (1.0 - prob) / 10000.0));
  }
}

TEST_CASE("inner ring radius stays within five standard deviations")
{
  MixtureSpec spec;
  spec.seed = 11;
  const PointSet p = simulate_mixture(spec, 10000);
  int ring = 0, inside = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if ((*p.labels)[static_cast<std::size_t>(i)] != 1)
      continue;
    ++ring;
    inside += std::abs(p.points.row(i).norm() - 1.0) < 5.0 * 0.1;
  }
  REQUIRE(ring > 0);
  CHECK(inside >= 0.999 * ring);
}

TEST_CASE("mixture validation")
{
  MixtureSpec spec;
  spec.proportions = { 0.5, 0.5, 0.5, 0.0 };
  CHECK_THROWS_AS(simulate_mixture(spec, 10), ValidationError);
  spec.proportions = { 1.2, -0.2, 0.0, 0.0 };
  CHECK_THROWS_AS(simulate_mixture(spec, 10), ValidationError);
  spec = MixtureSpec{};
  spec.ring2_radius_sd = 0.0;
  CHECK_THROWS_AS(simulate_mixture(spec, 10), ValidationError);
  CHECK_THROWS_AS(simulate_mixture(MixtureSpec{}, 0), ValidationError);
}

TEST_CASE("load_points")
{
  SUBCASE("headerless")
  {
    const PointSet p = load_points(write_temp("plain.csv", "0,0\n1,1\n"));
    CHECK(p.size() == 2);
    CHECK(p.dim() == 2);
    CHECK_FALSE(p.labels);
    CHECK(p.points(1, 0) == 1.0);
  }
  SUBCASE("header with labels")
  {
    const PointSet p =
      load_points(write_temp("labeled.csv", "x0,x1,label\n0,0,1\n1,1,0\n2,2,1\n"));
    CHECK(p.size() == 3);
    CHECK(p.dim() == 2);
    REQUIRE(p.labels);
    CHECK(*p.labels == std::vector<int>{ 1, 0, 1 });
  }
  SUBCASE("empty file")
  {
    try {
      load_points(write_temp("empty.csv", ""));
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("no data rows") != std::string::npos);
    }
  }
  SUBCASE("bad number names the line")
  {
    try {
      load_points(write_temp("bad.csv", "x0,x1\n0,0\n1,abc\n"));
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
  SUBCASE("ragged row")
  {
    CHECK_THROWS_AS(load_points(write_temp("ragged.csv", "0,0\n1\n")), IoError);
  }
  SUBCASE("missing file")
  {
    CHECK_THROWS_AS(load_points("/nonexistent/levelspec.csv"), IoError);
  }
}

TEST_CASE("save_points round-trips exactly")
{
  MixtureSpec spec;
  spec.seed = 3;
  const PointSet p = simulate_mixture(spec, 64);
  const auto path = std::filesystem::temp_directory_path() / "levelspec_roundtrip.csv";
  save_points(path, p);
  const PointSet q = load_points(path);
  CHECK(q.points == p.points);
  CHECK(*q.labels == *p.labels);
}
