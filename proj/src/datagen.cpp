#include "levelspec/datagen.hpp"

#include "levelspec/errors.hpp"
#include "levelspec/rng.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>

namespace levelspec {

void
PointSet::validate() const
{
  if (points.rows() < 1 || points.cols() < 1)
    throw ValidationError("point set must contain at least one point");
  if (!points.allFinite())
    throw ValidationError("point coordinates must be finite");
  if (labels && static_cast<Eigen::Index>(labels->size()) != points.rows())
    throw ValidationError("label count does not match point count");
}

void
MixtureSpec::validate() const
{
  double total = 0.0;
  for (double p : proportions) {
    if (!(p >= 0.0))
      throw ValidationError("mixture proportions must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("mixture proportions must sum to 1");
  if (!(gaussian_sigma > 0.0) || !(ring1_radius_sd > 0.0) ||
      !(ring2_radius_sd > 0.0))
    throw ValidationError("mixture standard deviations must be positive");
  if (!(noise_box_halfwidth > 0.0))
    throw ValidationError("noise box half-width must be positive");
}

PointSet
simulate_mixture(const MixtureSpec& spec, Eigen::Index n)
{
  spec.validate();
  if (n < 1)
    throw ValidationError("sample size must be at least 1");

  Rng rng(spec.seed);
  PointSet out;
  out.points.resize(n, 2);
  out.labels.emplace(static_cast<std::size_t>(n));

  std::array<double, 4> cumulative{};
  double acc = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    acc += spec.proportions[c];
    cumulative[c] = acc;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    int component = 3;
    for (int c = 0; c < 4; ++c) {
      if (u < cumulative[c]) {
        component = c;
        break;
      }
    }
    double x = 0.0, y = 0.0;
    switch (component) {
      case 0:
        x = rng.normal(0.0, spec.gaussian_sigma);
        y = rng.normal(0.0, spec.gaussian_sigma);
        break;
      case 1:
      case 2: {
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double radius =
          component == 1
            ? rng.normal(spec.ring1_radius_mean, spec.ring1_radius_sd)
            : rng.normal(spec.ring2_radius_mean, spec.ring2_radius_sd);
        x = radius * std::cos(theta);
        y = radius * std::sin(theta);
        break;
      }
      default:
        x = rng.uniform(-spec.noise_box_halfwidth, spec.noise_box_halfwidth);
        y = rng.uniform(-spec.noise_box_halfwidth, spec.noise_box_halfwidth);
        break;
    }
    out.points(i, 0) = x;
    out.points(i, 1) = y;
    (*out.labels)[static_cast<std::size_t>(i)] = component;
  }
  return out;
}

namespace {

std::string_view
trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view>
split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return fields;
}

bool
parse_double(std::string_view s, double& value)
{
  if (s.empty())
    return false;
  if (s.front() == '+')
    s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void
fail_at(const std::filesystem::path& path, std::size_t line, const std::string& msg)
{
  throw IoError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

PointSet
load_points(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::optional<std::size_t> label_column;
  std::size_t width = 0;
  bool first_row = true;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty())
      continue;
    const auto fields = split_fields(content);

    if (first_row) {
      first_row = false;
      double probe;
      bool header = false;
      for (auto f : fields)
        header = header || !parse_double(f, probe);
      width = fields.size();
      if (header) {
        for (std::size_t c = 0; c < fields.size(); ++c)
          if (fields[c] == "label")
            label_column = c;
        continue;
      }
    }

    if (fields.size() != width)
      fail_at(path, line_no,
              "expected " + std::to_string(width) + " fields, found " +
                std::to_string(fields.size()));
    std::vector<double> coords;
    coords.reserve(width);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value;
      if (!parse_double(fields[c], value) || !std::isfinite(value))
        fail_at(path, line_no, "invalid number '" + std::string(fields[c]) + "'");
      if (label_column && c == *label_column) {
        if (value != std::floor(value))
          fail_at(path, line_no, "label must be an integer");
        labels.push_back(static_cast<int>(value));
      } else {
        coords.push_back(value);
      }
    }
    rows.push_back(std::move(coords));
  }

  if (rows.empty())
    throw IoError(path.string() + ": no data rows");
  const std::size_t dim = rows.front().size();
  if (dim == 0)
    throw IoError(path.string() + ": no coordinate columns");

  PointSet out;
  out.points.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < dim; ++c)
      out.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
        rows[i][c];
  if (label_column)
    out.labels = std::move(labels);
  return out;
}

void
save_points(const std::filesystem::path& path, const PointSet& points)
{
  points.validate();
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot write " + path.string());
  out.precision(17);
  for (Eigen::Index c = 0; c < points.dim(); ++c)
    out << (c ? "," : "") << 'x' << c;
  if (points.labels)
    out << ",label";
  out << '\n';
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    for (Eigen::Index c = 0; c < points.dim(); ++c)
      out << (c ? "," : "") << points.points(i, c);
    if (points.labels)
      out << ',' << (*points.labels)[static_cast<std::size_t>(i)];
    out << '\n';
  }
  if (!out)
    throw IoError("write failed for " + path.string());
}

} // namespace levelspec
