// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit when
// anything fails. Criterion 7 and the byte-determinism checks drive the CLI
// binary, so the path to it comes in as argv[1]; argv[2] is a scratch
// directory for emitted artifacts.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "latdist/error.hpp"
#include "latdist/io.hpp"
#include "latdist/lattice.hpp"
#include "latdist/numtheory.hpp"
#include "latdist/search.hpp"
#include "latdist/subset.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace latdist;
using namespace latdist::lattice;
using namespace latdist::subset;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_scratch;

struct Check {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += what;
    }
  }
  void record(const std::string& what) {
    if (!note.empty()) note += "; ";
    note += what;
  }
};

int run_cli(const std::string& args) {
  std::string cmd = "SOURCE_DATE_EPOCH=0 '" + g_cli + "' " + args + " 2>> '" +
                    (g_scratch / "stderr.log").string() + "'";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational parse_rational(const std::string& cell) {
  auto slash = cell.find('/');
  if (slash == std::string::npos) return Rational(BigInt(cell));
  return Rational(BigInt(cell.substr(0, slash)), BigInt(cell.substr(slash + 1)));
}

// Rows of a CSV file as (p, eps_unnormalized), skipping the header.
std::vector<std::pair<int64_t, Rational>> read_sweep(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::pair<int64_t, Rational>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    rows.emplace_back(std::stoll(line.substr(0, c1)),
                      parse_rational(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

void criterion_1_totals(Check& c) {
  for (int64_t n : {2, 10, 50, 100, 200}) {
    LatticeSpec spec(n);
    auto dist = full_distribution(spec);
    c.expect(dist.total() == spec.total_pairs(),
             "total mismatch at n=" + std::to_string(n));
    int64_t sum = 0;
    for (const auto& [d, freq] : dist.entries()) sum += freq;
    c.expect(sum == spec.total_pairs(), "entry sum mismatch at n=" + std::to_string(n));
  }
}

void criterion_2_brute_force(Check& c) {
  for (int64_t n = 2; n <= 12; ++n) {
    LatticeSpec spec(n);
    c.expect(full_distribution(spec) == oracles::brute_full_distribution(spec),
             "full distribution mismatch at n=" + std::to_string(n));

    std::vector<PointSet> sets{generate(spec, ConfigKind::Corners),
                               generate(spec, ConfigKind::Perimeter),
                               generate(spec, ConfigKind::Checkerboard)};
    for (int64_t m = 1; m <= (n + 1) / 2; ++m)
      sets.push_back(generate(spec, ConfigKind::FilledPerimeter, m));
    if (n % 2 == 1) {
      sets.push_back(generate(spec, ConfigKind::CornersCenter));
      sets.push_back(generate(spec, ConfigKind::Stretched3x3));
    }
    for (const auto& ps : sets) {
      c.expect(distribution(ps) == oracles::brute_subset_distribution(ps.points()),
               "subset distribution mismatch at n=" + std::to_string(n));
    }
  }
}

void criterion_3_r2_and_curve_minima(Check& c) {
  constexpr int64_t kLimit = 100000;
  auto brute = oracles::brute_r2_table(kLimit);
  auto table = numtheory::r2_table(kLimit);
  for (int64_t d = 1; d <= kLimit; ++d) {
    if (table[static_cast<size_t>(d)] != brute[static_cast<size_t>(d)]) {
      c.expect(false, "r2 mismatch at d=" + std::to_string(d));
      return;
    }
    // Four lattice points per representation, uniformly.
    if (4 * static_cast<int64_t>(numtheory::representations(d).size()) !=
        brute[static_cast<size_t>(d)]) {
      c.expect(false, "representation count mismatch at d=" + std::to_string(d));
      return;
    }
  }
  for (int64_t k = 1; k <= 8; ++k) {
    int64_t expected = 0;
    for (int64_t d = 1; d <= kLimit; ++d) {
      if (brute[static_cast<size_t>(d)] == 4 * k) {
        expected = d;
        break;
      }
    }
    int64_t nk = numtheory::curve_min(k, 1'000'000);
    c.expect(nk == expected, "curve minimum mismatch at k=" + std::to_string(k));
    auto bounds = numtheory::curve_min_bounds(k);
    c.expect(Count128(nk) <= bounds.constructive_upper,
             "constructive bound violated at k=" + std::to_string(k));
    c.expect(Count128(nk) <= bounds.simple_upper,
             "5^(k-1) bound violated at k=" + std::to_string(k));
  }
}

void criterion_4_checkerboard_closed_forms(Check& c) {
  for (int64_t n = 3; n <= 14; ++n) {
    LatticeSpec spec(n);
    auto cb = generate(spec, ConfigKind::Checkerboard);
    for (int64_t a = 2; a <= n - 1; a += 2) {
      c.expect(checkerboard_axis_count(spec, a) ==
                   oracles::brute_class_count(cb.points(), a, 0),
               "axis count mismatch n=" + std::to_string(n) + " a=" + std::to_string(a));
    }
    for (int64_t a = 1; a <= n - 1; ++a) {
      c.expect(checkerboard_diag_count(spec, a) ==
                   oracles::brute_class_count(cb.points(), a, a),
               "diagonal count mismatch n=" + std::to_string(n) + " a=" + std::to_string(a));
    }
  }
}

void criterion_5_example_conformance(Check& c) {
  for (int64_t n = 5; n <= 201; n += 2) {
    LatticeSpec spec(n);
    Rational n4(BigInt(n) * n * n * n);

    auto corners = error::epsilon(generate(spec, ConfigKind::Corners), true);
    c.expect(corners.pair_estimate <= error::closed_form_bound(ConfigKind::Corners, spec),
             "corners bound violated at n=" + std::to_string(n));
    int found = 0;
    for (const auto& [cls, eps] : *corners.per_class) {
      if (cls == PairClass{n - 1, n - 1}) {
        ++found;
        c.expect(eps == n4 / 8 - 2, "corner diagonal deviation wrong at n=" + std::to_string(n));
      }
      if (cls == PairClass{n - 1, 0}) {
        ++found;
        c.expect(eps == n4 / 4 - 2 * n, "corner axis deviation wrong at n=" + std::to_string(n));
      }
    }
    c.expect(found == 2, "per-class report missing a corner class at n=" + std::to_string(n));

    auto cc = error::epsilon(generate(spec, ConfigKind::CornersCenter));
    c.expect(cc.pair_estimate <= error::closed_form_bound(ConfigKind::CornersCenter, spec),
             "corners-center bound violated at n=" + std::to_string(n));
  }
}

void criterion_6_checkerboard_stretched_conformance(Check& c) {
  // Final tolerance: factor 1.0, i.e. the measured pair estimate must not
  // exceed the printed closed form at all. Derived from the exact ratios
  // recorded below at n = 5, 9, 15 (all near 1/2, trending down), which the
  // suite re-verifies on every run before using the tolerance.
  struct Recorded {
    int64_t n;
    Rational checkerboard, stretched;
  };
  const std::vector<Recorded> recorded{
      {5, Rational(1953, 4420), Rational(140544, 271705)},
      {9, Rational(455, 984), Rational(20608, 115079)},
      {15, Rational(203404, 427705), Rational(1338729, 20515490)},
  };
  for (const auto& r : recorded) {
    LatticeSpec spec(r.n);
    auto cb = error::epsilon(generate(spec, ConfigKind::Checkerboard)).pair_estimate /
              error::closed_form_bound(ConfigKind::Checkerboard, spec);
    auto st = error::epsilon(generate(spec, ConfigKind::Stretched3x3)).pair_estimate /
              error::closed_form_bound(ConfigKind::Stretched3x3, spec);
    c.expect(cb == r.checkerboard, "recorded checkerboard ratio drifted at n=" + std::to_string(r.n));
    c.expect(st == r.stretched, "recorded stretched ratio drifted at n=" + std::to_string(r.n));
  }

  for (int64_t n = 5; n <= 101; n += 2) {
    LatticeSpec spec(n);
    c.expect(error::epsilon(generate(spec, ConfigKind::Checkerboard)).pair_estimate <=
                 error::closed_form_bound(ConfigKind::Checkerboard, spec),
             "checkerboard bound violated at n=" + std::to_string(n));
    c.expect(error::epsilon(generate(spec, ConfigKind::Stretched3x3)).pair_estimate <=
                 error::closed_form_bound(ConfigKind::Stretched3x3, spec),
             "stretched bound violated at n=" + std::to_string(n));

    // Checkerboard aggregation identity: family averages, the stated zero
    // fractions (1/4, 1/2), scale 4, and subset counts equal to lattice
    // counts wherever nonzero reproduce the printed closed form exactly.
    Rational N(n);
    Rational avg_s = N * (5 * N - 1) / 6, avg_g = N * (3 * N - 1) / 3;
    Rational cb_aggregated =
        Rational(4) / (N + 2) * (Rational(3, 4) * 3 * avg_s + Rational(1, 4) * avg_s) +
        (N - 2) / (N + 2) * (Rational(1, 2) * 3 * avg_g + Rational(1, 2) * avg_g);
    c.expect(cb_aggregated == error::closed_form_bound(ConfigKind::Checkerboard, spec),
             "checkerboard aggregation identity broken at n=" + std::to_string(n));

    // The analogous stretched aggregation (zero fractions 2/(n-1) and
    // 4/(n-1)^2, scale n^4/81) does NOT reduce to the printed closed form:
    // it exceeds it by roughly n^2. Verified and recorded here rather than
    // asserted as an identity.
    Rational scale = N * N * N * N / 81;
    Rational st_aggregated =
        Rational(4) / (N + 2) *
            (Rational(2) / (N - 1) * (scale * avg_s - avg_s) +
             (1 - Rational(2) / (N - 1)) * avg_s) +
        (N - 2) / (N + 2) *
            (Rational(4) / ((N - 1) * (N - 1)) * (scale * avg_g - avg_g) +
             (1 - Rational(4) / ((N - 1) * (N - 1))) * avg_g);
    c.expect(st_aggregated >= error::closed_form_bound(ConfigKind::Stretched3x3, spec),
             "stretched aggregation unexpectedly below the closed form at n=" +
                 std::to_string(n));
    if (n == 5) {
      c.record("stretched aggregation exceeds the printed closed form (ratio at n=5: " +
               std::to_string(to_double(st_aggregated /
                                        error::closed_form_bound(ConfigKind::Stretched3x3, spec))) +
               "); measured estimates stay below both");
    }
  }
}

void criterion_7_optimal_curve(Check& c) {
  LatticeSpec spec(100);
  auto threshold = error::small_p_threshold(spec);
  const Rational head(spec.total_pairs());  // C(10^4, 2) = 49995000
  c.expect(head == Rational(49995000), "empty-subset error is not C(10^4,2)");

  fs::path head_csv = g_scratch / "curve_head.csv";
  fs::path coarse_csv = g_scratch / "curve_coarse.csv";
  fs::path last_csv = g_scratch / "curve_last.csv";
  c.expect(run_cli("optimal-curve --n 100 --p 1:" + std::to_string(threshold.floor_value + 3) +
                   ":1 --out '" + head_csv.string() + "'") == 0,
           "optimal-curve head run failed");
  c.expect(run_cli("optimal-curve --n 100 --p 1:10000:100 --out '" + coarse_csv.string() +
                   "'") == 0,
           "optimal-curve coarse run failed");
  c.expect(run_cli("optimal-curve --n 100 --p 10000 --out '" + last_csv.string() + "'") == 0,
           "optimal-curve endpoint run failed");

  auto head_rows = read_sweep(head_csv);
  for (const auto& [p, eps] : head_rows) {
    if (p <= threshold.floor_value)
      c.expect(eps == head, "head not flat at p=" + std::to_string(p));
  }

  auto coarse = read_sweep(coarse_csv);
  c.expect(coarse.size() == 100, "expected 100 coarse rows");
  for (const auto& [p, eps] : coarse) {
    // The head dominates everywhere: nearest-integer entries keep each
    // per-class deviation at or below the class frequency.
    c.expect(eps <= head, "curve exceeds the flat head at p=" + std::to_string(p));
    if (p >= spec.point_count() / 2)
      c.expect(eps < head, "tail not below head at p=" + std::to_string(p));
  }

  auto last = read_sweep(last_csv);
  c.expect(last.size() == 1 && last[0].second == Rational(0),
           "error at p = n^2 is not zero");
  c.record("threshold floor = " + std::to_string(threshold.floor_value));
}

void criterion_8_small_p_floor(Check& c) {
  std::mt19937_64 rng(0xACCE55);
  for (int64_t n = 2; n <= 30; ++n) {
    LatticeSpec spec(n);
    const int64_t floor_p = error::small_p_threshold(spec).floor_value;
    const Rational base(spec.total_pairs());
    for (int rep = 0; rep < 1000; ++rep) {
      int64_t p = 1 + static_cast<int64_t>(rng() % static_cast<uint64_t>(floor_p));
      PointSet ps(spec, oracles::sample_points(spec, p, rng));
      if (!(error::epsilon(ps).exact_unnormalized >= base)) {
        c.expect(false, "floor violated at n=" + std::to_string(n) + " rep=" +
                            std::to_string(rep));
        return;
      }
    }
  }
}

void criterion_9_extremal_verification(Check& c) {
  using search::Metric;
  using search::SearchTask;

  struct Case {
    int64_t n, p;
    ConfigKind expected;
    const char* name;
  };
  for (const Case& cs : {Case{4, 4, ConfigKind::Corners, "corners"},
                         Case{5, 5, ConfigKind::CornersCenter, "corners-center"}}) {
    LatticeSpec spec(cs.n);
    auto expected = search::canonicalize(generate(spec, cs.expected));

    SearchTask task{spec, cs.p};
    auto by_default = search::run(task);
    c.expect(by_default.best == expected,
             std::string("default-metric optimum is not ") + cs.name);

    for (Metric m : {Metric::ExactNormalized, Metric::PairEstimate}) {
      SearchTask variant = task;
      variant.metric = m;
      auto got = search::run(variant);
      if (got.best != by_default.best) {
        c.record(std::string("metric ") + io::metric_name(m) + " disagrees on " + cs.name +
                 " (recorded, not a failure)");
      }
    }
  }

  c.expect(run_cli("search --n 4 --p 4 --verify-config corners --out '" +
                   (g_scratch / "search4.jsonl").string() + "'") == 0,
           "CLI verify-config corners failed");
  c.expect(run_cli("search --n 5 --p 5 --verify-config corners-center --out '" +
                   (g_scratch / "search5.jsonl").string() + "'") == 0,
           "CLI verify-config corners-center failed");
  c.expect(run_cli("search --n 30 --p 15 --mode exhaustive --out '" +
                   (g_scratch / "search_budget.jsonl").string() + "'") == 3,
           "oversized exhaustive search did not exit with the budget code");
}

void criterion_10_byte_determinism(Check& c) {
  // Exit-code contract: 0 success, 2 usage/validation, 3 budget/overflow.
  c.expect(run_cli("lattice --n 1 --out '" + (g_scratch / "null.csv").string() + "'") == 2,
           "side below 2 did not exit with the usage code");
  c.expect(run_cli("error --n 4 --config corners-center --out '" +
                   (g_scratch / "null.json").string() + "'") == 2,
           "even-side corners-center did not exit with the usage code");
  c.expect(run_cli("lattice --n 2 --out '" + (g_scratch / "n2.csv").string() + "'") == 0,
           "lattice --n 2 failed");
  {
    std::istringstream rows(read_file(g_scratch / "n2.csv"));
    std::string line;
    int count = 0;
    while (std::getline(rows, line)) ++count;
    c.expect(count == 3, "lattice --n 2 should emit header plus two rows");
  }

  const std::vector<std::pair<std::string, std::string>> commands{
      {"lattice_n200.csv", "lattice --n 200"},
      {"lattice_n2.csv", "lattice --n 2"},
      {"nk_k8.csv", "nk --kmax 8"},
      {"error_corners5.json", "error --n 5 --config corners"},
      {"error_full5.json", "error --n 5 --config full"},
      {"curve_n100.csv", "optimal-curve --n 100 --p 1:10000:100"},
      {"search44.jsonl", "search --n 4 --p 4 --verify-config corners"},
      {"search_rr.jsonl", "search --n 5 --p 4 --mode random-restart --seed 11 --iterations 20"},
      {"config_cb5.json", "config --n 5 --config checkerboard"},
      {"lattice_n50.json", "lattice --n 50 --format json"},
      {"subset_cb9.json", "subset-dist --n 9 --config checkerboard --format json"},
      {"nk_k6.json", "nk --kmax 6 --format json"},
      {"curve_n20.json", "optimal-curve --n 20 --p 1:400:40 --format json"},
  };
  for (const auto& [name, args] : commands) {
    fs::path a = g_scratch / ("a_" + name);
    fs::path b = g_scratch / ("b_" + name);
    fs::remove(a);
    fs::remove(b);
    c.expect(run_cli(args + " --out '" + a.string() + "'") == 0, "run 1 failed: " + args);
    c.expect(run_cli(args + " --out '" + b.string() + "'") == 0, "run 2 failed: " + args);
    c.expect(read_file(a) == read_file(b) && !read_file(a).empty(),
             "outputs differ for: " + args);
  }

  auto lattice_json = nlohmann::json::parse(read_file(g_scratch / "a_lattice_n50.json"));
  c.expect(lattice_json["total"] == LatticeSpec(50).total_pairs(),
           "JSON lattice total wrong");
  auto nk_json = nlohmann::json::parse(read_file(g_scratch / "a_nk_k6.json"));
  c.expect(nk_json.size() == 6 && nk_json[5]["n_k"] == "325", "JSON nk table wrong");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli> [scratch-dir]\n";
    return 2;
  }
  g_cli = argv[1];
  g_scratch = argc > 2 ? fs::path(argv[2]) : fs::path("acceptance_scratch");
  fs::create_directories(g_scratch);

  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Check&)> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "total-count identity", 5, criterion_1_totals},
      {2, "brute-force equivalence", 30, criterion_2_brute_force},
      {3, "r2 and curve minima", 60, criterion_3_r2_and_curve_minima},
      {4, "checkerboard closed forms", 10, criterion_4_checkerboard_closed_forms},
      {5, "corner-example conformance", 60, criterion_5_example_conformance},
      {6, "checkerboard/stretched conformance", 120, criterion_6_checkerboard_stretched_conformance},
      {7, "optimal-curve shape", 120, criterion_7_optimal_curve},
      {8, "small-p floor", 120, criterion_8_small_p_floor},
      {9, "extremal verification", 600, criterion_9_extremal_verification},
      {10, "byte determinism", 600, criterion_10_byte_determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    Check check;
    auto start = Clock::now();
    try {
      crit.fn(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > crit.limit_seconds) {
      check.expect(false, "runtime " + std::to_string(secs) + "s over the " +
                              std::to_string(crit.limit_seconds) + "s limit");
    }
    if (!check.ok) ++failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", crit.id,
                crit.name, secs, check.note.empty() ? "" : " -- ", check.note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
