#include "latdist/search.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace latdist::search {

namespace {

using lattice::LatticeSpec;
using lattice::PairClass;
using subset::Point;
using subset::PointSet;

std::vector<Point> transform_all(const std::vector<Point>& pts, int t, int64_t n) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(transform_point(p, t, n));
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Shared, immutable state for one search.
struct Context {
  LatticeSpec spec;
  int64_t p;
  Metric metric;
  lattice::DistanceDistribution full;
  Count128 n4;
  Count128 p2;
  Count128 p2_total_pairs;  // p^2 * C(n^2, 2)

  Context(LatticeSpec s, int64_t p_, Metric m)
      : spec(s),
        p(p_),
        metric(m),
        full(lattice::full_distribution(s)),
        n4(Count128(s.n) * s.n * s.n * s.n),
        p2(Count128(p_) * p_),
        p2_total_pairs(Count128(p_) * p_ * s.total_pairs()) {}

  // Metric numerator times p^2; ordering-equivalent to the metric itself.
  Count128 key(const ClassCounter& counter) const {
    Count128 acc = 0;
    Count128 touched = 0;
    if (metric == Metric::PairEstimate) {
      for (const auto& [ck, count] : counter.nonzero()) {
        PairClass cls{ck / spec.n, ck % spec.n};
        int64_t lab = lattice::class_frequency(spec, cls);
        Count128 dev = n4 * count - p2 * lab;
        acc += dev < 0 ? -dev : dev;
        touched += p2 * lab;
      }
    } else {
      // Group classes sharing a squared distance before the absolute value.
      std::unordered_map<int64_t, int64_t> sq;
      for (const auto& [ck, count] : counter.nonzero()) {
        PairClass cls{ck / spec.n, ck % spec.n};
        sq[cls.sq_distance()] += count;
      }
      for (const auto& [d, count] : sq) {
        int64_t ld = full.frequency(d);
        Count128 dev = n4 * count - p2 * ld;
        acc += dev < 0 ? -dev : dev;
        touched += p2 * ld;
      }
    }
    return acc + (p2_total_pairs - touched);
  }

  Rational value_from_key(const Count128& key) const {
    BigInt num(key.str());
    BigInt den(p2.str());
    switch (metric) {
      case Metric::ExactUnnormalized:
        break;
      case Metric::ExactNormalized:
        den *= full.distinct();
        break;
      case Metric::PairEstimate:
        den *= spec.class_count();
        break;
    }
    return Rational(num, den);
  }
};

struct Candidate {
  Count128 key = 0;
  std::vector<Point> canonical;
};

// Total order: better key first, then lexicographically smaller canonical form.
bool better(const Candidate& a, const Candidate& b, Objective obj) {
  if (a.key != b.key)
    return obj == Objective::Maximize ? a.key > b.key : a.key < b.key;
  return a.canonical < b.canonical;
}

void merge(std::optional<Candidate>& best, Candidate cand, Objective obj) {
  if (!best || better(cand, *best, obj)) best = std::move(cand);
}

bool is_canonical(const std::vector<Point>& sorted_pts, int64_t n) {
  for (int t = 1; t < 8; ++t) {
    if (transform_all(sorted_pts, t, n) < sorted_pts) return false;
  }
  return true;
}

BigInt binomial(int64_t n, int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

struct WorkerOut {
  std::optional<Candidate> best;
  int64_t examined = 0;
};

void enumerate_block(const Context& ctx, const std::vector<Point>& grid, int64_t first_lo,
                     int64_t first_hi, Objective obj, WorkerOut& out) {
  const int64_t m = static_cast<int64_t>(grid.size());
  const int64_t p = ctx.p;
  ClassCounter counter(ctx.spec);

  // Lexicographic enumeration of index combinations with a fixed first index.
  auto dfs = [&](auto&& self, int64_t next, int64_t remaining) -> void {
    if (remaining == 0) {
      if (!is_canonical(counter.points(), ctx.spec.n)) return;
      ++out.examined;
      merge(out.best, Candidate{ctx.key(counter), counter.points()}, obj);
      return;
    }
    for (int64_t i = next; i <= m - remaining; ++i) {
      counter.add(grid[i]);
      self(self, i + 1, remaining - 1);
      counter.remove(grid[i]);
    }
  };

  for (int64_t first = first_lo; first < first_hi; ++first) {
    counter.add(grid[first]);
    dfs(dfs, first + 1, p - 1);
    counter.remove(grid[first]);
  }
}

SearchResult exhaustive(const SearchTask& task, const Context& ctx) {
  const int64_t m = task.spec.point_count();
  if (binomial(m, task.p) > task.budget) {
    return SearchResult{PointSet(task.spec, {}), Rational(0), 0, 0, true};
  }

  std::vector<Point> grid;
  grid.reserve(static_cast<size_t>(m));
  for (int64_t x = 0; x < task.spec.n; ++x)
    for (int64_t y = 0; y < task.spec.n; ++y) grid.push_back({x, y});
  std::sort(grid.begin(), grid.end());

  const int64_t first_count = m - task.p + 1;
  const int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(first_count)));
  std::vector<WorkerOut> outs(static_cast<size_t>(workers));
  {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      int64_t lo = first_count * w / workers;
      int64_t hi = first_count * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] {
        enumerate_block(ctx, grid, lo, hi, task.objective, outs[static_cast<size_t>(w)]);
      });
    }
    for (auto& t : threads) t.join();
  }

  std::optional<Candidate> best;
  int64_t examined = 0;
  for (auto& o : outs) {
    examined += o.examined;
    if (o.best) merge(best, std::move(*o.best), task.objective);
  }
  if (!best) throw std::logic_error("exhaustive search found no candidate");

  PointSet best_set(task.spec, best->canonical);
  return SearchResult{best_set, ctx.value_from_key(best->key), examined,
                      orbit_size(best_set), false};
}

// One seeded restart: sample a p-subset, hill-climb by single-point swaps
// (first strict improvement, deterministic scan order), then canonicalize.
Candidate restart_iteration(const Context& ctx, const std::vector<Point>& grid,
                            uint64_t seed, Objective obj, int64_t& examined) {
  std::mt19937_64 rng(seed);
  const int64_t m = static_cast<int64_t>(grid.size());
  std::vector<int64_t> idx(static_cast<size_t>(m));
  for (int64_t i = 0; i < m; ++i) idx[static_cast<size_t>(i)] = i;
  for (int64_t i = 0; i < ctx.p; ++i) {
    int64_t j = i + static_cast<int64_t>(rng() % static_cast<uint64_t>(m - i));
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
  }

  ClassCounter counter(ctx.spec);
  for (int64_t i = 0; i < ctx.p; ++i) counter.add(grid[static_cast<size_t>(idx[static_cast<size_t>(i)])]);
  Count128 cur = ctx.key(counter);
  ++examined;

  auto improves = [&](const Count128& a, const Count128& b) {
    return obj == Objective::Maximize ? a > b : a < b;
  };

  auto member = [&](const Point& q) {
    return std::find(counter.points().begin(), counter.points().end(), q) !=
           counter.points().end();
  };

  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<Point> snapshot = counter.points();
    for (const Point& out_pt : snapshot) {
      for (const Point& in_pt : grid) {
        if (member(in_pt)) continue;
        counter.remove(out_pt);
        counter.add(in_pt);
        Count128 next = ctx.key(counter);
        ++examined;
        if (improves(next, cur)) {
          cur = next;
          improved = true;
          break;
        }
        counter.remove(in_pt);
        counter.add(out_pt);
      }
      if (improved) break;
    }
  }

  PointSet final_set = canonicalize(counter.to_point_set());
  return Candidate{cur, final_set.points()};
}

SearchResult random_restart(const SearchTask& task, const Context& ctx) {
  if (task.iterations < 1)
    throw std::invalid_argument("search: random restart needs iterations >= 1");
  std::vector<Point> grid;
  for (int64_t x = 0; x < task.spec.n; ++x)
    for (int64_t y = 0; y < task.spec.n; ++y) grid.push_back({x, y});
  std::sort(grid.begin(), grid.end());

  const int workers =
      std::max(1, std::min<int>(worker_count(), static_cast<int>(task.iterations)));
  std::vector<WorkerOut> outs(static_cast<size_t>(workers));
  {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        WorkerOut& out = outs[static_cast<size_t>(w)];
        for (int64_t i = w; i < task.iterations; i += workers) {
          uint64_t iter_seed = splitmix64(task.seed ^ splitmix64(static_cast<uint64_t>(i)));
          merge(out.best,
                restart_iteration(ctx, grid, iter_seed, task.objective, out.examined),
                task.objective);
        }
      });
    }
    for (auto& t : threads) t.join();
  }

  std::optional<Candidate> best;
  int64_t examined = 0;
  for (auto& o : outs) {
    examined += o.examined;
    if (o.best) merge(best, std::move(*o.best), task.objective);
  }
  PointSet best_set(task.spec, best->canonical);
  return SearchResult{best_set, ctx.value_from_key(best->key), examined,
                      orbit_size(best_set), false};
}

}  // namespace

Point transform_point(Point pt, int transform, int64_t n) {
  int64_t x = pt.x, y = pt.y;
  if (transform & 4) std::swap(x, y);
  if (transform & 1) x = n - 1 - x;
  if (transform & 2) y = n - 1 - y;
  return {x, y};
}

PointSet canonicalize(const PointSet& ps) {
  const int64_t n = ps.spec().n;
  std::vector<Point> best = ps.points();
  for (int t = 1; t < 8; ++t) {
    auto img = transform_all(ps.points(), t, n);
    if (img < best) best = std::move(img);
  }
  return PointSet(ps.spec(), std::move(best));
}

int orbit_size(const PointSet& ps) {
  const int64_t n = ps.spec().n;
  std::vector<std::vector<Point>> images;
  for (int t = 0; t < 8; ++t) images.push_back(transform_all(ps.points(), t, n));
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return static_cast<int>(images.size());
}

void ClassCounter::add(Point pt) {
  if (pt.x < 0 || pt.y < 0 || pt.x > spec_.n - 1 || pt.y > spec_.n - 1)
    throw std::out_of_range("ClassCounter::add: point outside the lattice");
  if (std::find(points_.begin(), points_.end(), pt) != points_.end())
    throw std::invalid_argument("ClassCounter::add: duplicate point");
  for (const Point& q : points_) {
    int64_t dx = std::abs(pt.x - q.x), dy = std::abs(pt.y - q.y);
    ++counts_[std::max(dx, dy) * spec_.n + std::min(dx, dy)];
  }
  points_.push_back(pt);
}

void ClassCounter::remove(Point pt) {
  auto it = std::find(points_.begin(), points_.end(), pt);
  if (it == points_.end())
    throw std::invalid_argument("ClassCounter::remove: point not present");
  points_.erase(it);
  for (const Point& q : points_) {
    int64_t key = std::max(std::abs(pt.x - q.x), std::abs(pt.y - q.y)) * spec_.n +
                  std::min(std::abs(pt.x - q.x), std::abs(pt.y - q.y));
    auto cit = counts_.find(key);
    if (--cit->second == 0) counts_.erase(cit);
  }
}

int64_t ClassCounter::count(const PairClass& cls) const {
  auto it = counts_.find(cls.a * spec_.n + cls.b);
  return it == counts_.end() ? 0 : it->second;
}

PointSet ClassCounter::to_point_set() const { return PointSet(spec_, points_); }

SearchResult run(const SearchTask& task) {
  if (task.p < 1 || task.p > task.spec.point_count())
    throw std::invalid_argument("search: p must be in [1, n^2]");
  Context ctx(task.spec, task.p, task.metric);
  return task.mode == Mode::Exhaustive ? exhaustive(task, ctx) : random_restart(task, ctx);
}

}  // namespace latdist::search
