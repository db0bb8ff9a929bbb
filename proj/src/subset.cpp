#include "latdist/subset.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace latdist::subset {

namespace {

void require_odd(const lattice::LatticeSpec& spec, const char* what) {
  if (spec.n % 2 == 0)
    throw std::invalid_argument(std::string(what) + " requires an odd side length");
}

int64_t max_fill_depth(const lattice::LatticeSpec& spec) { return (spec.n + 1) / 2; }

}  // namespace

PointSet::PointSet(lattice::LatticeSpec spec, std::vector<Point> points)
    : spec_(spec), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  for (size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.x < 0 || p.y < 0 || p.x > spec_.n - 1 || p.y > spec_.n - 1)
      throw std::out_of_range("PointSet: point outside the lattice");
    if (i > 0 && points_[i - 1] == p)
      throw std::invalid_argument("PointSet: duplicate point");
  }
}

PointSet PointSet::full(const lattice::LatticeSpec& spec) {
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(spec.point_count()));
  for (int64_t x = 0; x < spec.n; ++x)
    for (int64_t y = 0; y < spec.n; ++y) pts.push_back({x, y});
  return PointSet(spec, std::move(pts));
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

PointSet generate(const lattice::LatticeSpec& spec, ConfigKind kind, int64_t depth) {
  const int64_t n = spec.n;
  std::vector<Point> pts;
  switch (kind) {
    case ConfigKind::Corners:
      pts = {{0, 0}, {0, n - 1}, {n - 1, 0}, {n - 1, n - 1}};
      break;
    case ConfigKind::CornersCenter: {
      require_odd(spec, "corners-center");
      int64_t c = (n - 1) / 2;
      pts = {{0, 0}, {0, n - 1}, {n - 1, 0}, {n - 1, n - 1}, {c, c}};
      break;
    }
    case ConfigKind::Stretched3x3: {
      require_odd(spec, "stretched3x3");
      int64_t c = (n - 1) / 2;
      for (int64_t x : {int64_t{0}, c, n - 1})
        for (int64_t y : {int64_t{0}, c, n - 1}) pts.push_back({x, y});
      break;
    }
    case ConfigKind::Perimeter:
      for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y)
          if (x == 0 || y == 0 || x == n - 1 || y == n - 1) pts.push_back({x, y});
      break;
    case ConfigKind::FilledPerimeter: {
      if (depth < 1 || depth > max_fill_depth(spec))
        throw std::invalid_argument("filled-perimeter: depth out of range");
      for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y) {
          int64_t rim = std::min(std::min(x, y), std::min(n - 1 - x, n - 1 - y));
          if (rim <= depth - 1) pts.push_back({x, y});
        }
      break;
    }
    case ConfigKind::Checkerboard:
      for (int64_t x = 0; x < n; ++x)
        for (int64_t y = 0; y < n; ++y)
          if ((x + y) % 2 == 0) pts.push_back({x, y});
      break;
  }
  return PointSet(spec, std::move(pts));
}

int64_t config_size(const lattice::LatticeSpec& spec, ConfigKind kind, int64_t depth) {
  const int64_t n = spec.n;
  switch (kind) {
    case ConfigKind::Corners:
      return 4;
    case ConfigKind::CornersCenter:
      return 5;
    case ConfigKind::Stretched3x3:
      return 9;
    case ConfigKind::Perimeter:
      return 4 * (n - 1);
    case ConfigKind::FilledPerimeter: {
      if (depth < 1 || depth > max_fill_depth(spec))
        throw std::invalid_argument("filled-perimeter: depth out of range");
      int64_t total = 0;
      for (int64_t i = 1; i <= depth; ++i) {
        int64_t side = n - 2 * (i - 1);
        total += side >= 2 ? 4 * (side - 1) : 1;  // innermost ring of an odd side is one point
      }
      return total;
    }
    case ConfigKind::Checkerboard:
      return (n * n + 1) / 2;
  }
  throw std::invalid_argument("config_size: unknown kind");
}

int64_t class_frequency(const PointSet& ps, const lattice::PairClass& cls) {
  if (!cls.valid_for(ps.spec()))
    throw std::out_of_range("class_frequency: class out of range for lattice");
  const auto& pts = ps.points();
  int64_t count = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      int64_t dx = std::abs(pts[i].x - pts[j].x);
      int64_t dy = std::abs(pts[i].y - pts[j].y);
      if (std::max(dx, dy) == cls.a && std::min(dx, dy) == cls.b) ++count;
    }
  }
  return count;
}

lattice::DistanceDistribution distribution(const PointSet& ps, int64_t max_points) {
  if (ps.size() > max_points)
    throw std::length_error("distribution: point count exceeds configured maximum");
  const auto& pts = ps.points();
  std::unordered_map<int64_t, int64_t> acc;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      int64_t dx = pts[i].x - pts[j].x;
      int64_t dy = pts[i].y - pts[j].y;
      ++acc[dx * dx + dy * dy];
    }
  }
  std::vector<std::pair<int64_t, int64_t>> entries(acc.begin(), acc.end());
  return lattice::DistanceDistribution(std::move(entries));
}

int64_t checkerboard_axis_count(const lattice::LatticeSpec& spec, int64_t a) {
  if (a % 2 != 0)
    throw std::invalid_argument(
        "checkerboard_axis_count: axis distances exist only for even a");
  if (a < 2 || a > spec.n - 1)
    throw std::out_of_range("checkerboard_axis_count: a out of range");
  int64_t base = spec.n * (spec.n - a);
  return spec.n % 2 == 0 ? base : base + 1;
}

int64_t checkerboard_diag_count(const lattice::LatticeSpec& spec, int64_t a) {
  if (a < 1 || a > spec.n - 1)
    throw std::out_of_range("checkerboard_diag_count: a out of range");
  int64_t base = (spec.n - a) * (spec.n - a);
  if (spec.n % 2 != 0 && a % 2 == 0) return base + 1;
  return base;
}

}  // namespace latdist::subset
