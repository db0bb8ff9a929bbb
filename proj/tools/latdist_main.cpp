// latdist: exact distance-distribution computations on the N x N integer
// lattice and its subsets. Every subcommand writes deterministic output:
// the same flags (plus seed, where one applies) always produce the same
// bytes. Set SOURCE_DATE_EPOCH to pin the timestamp in search logs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "latdist/error.hpp"
#include "latdist/io.hpp"
#include "latdist/lattice.hpp"
#include "latdist/numtheory.hpp"
#include "latdist/search.hpp"
#include "latdist/subset.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

using namespace latdist;

// Writes to a file, or to stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path, bool append = false) {
    if (path != "-") {
      auto mode = append ? std::ios::app : std::ios::trunc;
      file_.open(path, std::ios::out | mode);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct SubsetChoice {
  std::string subset_file;
  std::string config;
  int64_t depth = 1;
};

subset::PointSet resolve_subset(const lattice::LatticeSpec& spec, const SubsetChoice& choice) {
  if (!choice.subset_file.empty() && !choice.config.empty())
    throw std::invalid_argument("give either --subset or --config, not both");
  if (!choice.subset_file.empty()) {
    std::ifstream in(choice.subset_file);
    if (!in) throw std::invalid_argument("cannot open subset file: " + choice.subset_file);
    nlohmann::json j;
    in >> j;
    auto ps = io::point_set_from_json(j);
    if (ps.spec() != spec)
      throw std::invalid_argument("subset file is for a different lattice side");
    return ps;
  }
  if (choice.config.empty())
    throw std::invalid_argument("one of --subset or --config is required");
  if (choice.config == "full") return subset::PointSet::full(spec);
  auto kind = io::parse_config_kind(choice.config);
  if (!kind) throw std::invalid_argument("unknown configuration: " + choice.config);
  return subset::generate(spec, *kind, choice.depth);
}

std::vector<int64_t> parse_grid(const std::string& text, int64_t lo, int64_t hi) {
  int64_t start = 0, stop = 0, step = 1;
  char extra = 0;
  int fields = std::sscanf(text.c_str(), "%ld:%ld:%ld%c", &start, &stop, &step, &extra);
  if (fields == 1 && text.find(':') == std::string::npos) {
    stop = start;
  } else if (fields != 2 && fields != 3) {
    throw std::invalid_argument("grid must be START:STOP[:STEP] or a single integer");
  }
  if (step < 1) throw std::invalid_argument("grid step must be >= 1");
  std::vector<int64_t> out;
  for (int64_t p = start; p <= stop; p += step) {
    if (p < lo || p > hi)
      throw std::invalid_argument("grid value " + std::to_string(p) + " outside [" +
                                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
    out.push_back(p);
  }
  return out;
}

int cmd_lattice(int64_t n, const std::string& out_path, const std::string& format) {
  lattice::LatticeSpec spec(n);
  auto dist = lattice::full_distribution(spec);
  Output out(out_path);
  if (format == "json") {
    auto j = io::distribution_json(dist);
    j["N"] = spec.n;
    out.stream() << j << '\n';
  } else {
    io::write_distribution_csv(out.stream(), dist);
  }
  return 0;
}

int cmd_subset_dist(int64_t n, const SubsetChoice& choice, int64_t max_points,
                    const std::string& out_path, const std::string& format) {
  lattice::LatticeSpec spec(n);
  auto ps = resolve_subset(spec, choice);
  auto dist = subset::distribution(ps, max_points);
  Output out(out_path);
  if (format == "json") {
    auto j = io::distribution_json(dist);
    j["N"] = spec.n;
    j["p"] = ps.size();
    out.stream() << j << '\n';
  } else {
    io::write_distribution_csv(out.stream(), dist);
  }
  return 0;
}

int cmd_error(int64_t n, const SubsetChoice& choice, int64_t max_points,
              const std::string& out_path) {
  lattice::LatticeSpec spec(n);
  auto ps = resolve_subset(spec, choice);
  auto report = error::epsilon(ps, /*with_per_class=*/true, max_points);
  auto j = io::error_report_json(report);
  j["n"] = spec.n;
  if (!choice.config.empty()) {
    j["config"] = choice.config;
    auto kind = io::parse_config_kind(choice.config);
    if (kind) {
      try {
        j["closed_form_bound"] = io::rational_json(error::closed_form_bound(*kind, spec));
      } catch (const std::invalid_argument&) {
        // no closed form for this kind; omit the field
      }
    }
  }
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int cmd_optimal_curve(int64_t n, const std::string& grid_text, const std::string& out_path,
                      const std::string& format) {
  lattice::LatticeSpec spec(n);
  auto grid = parse_grid(grid_text, 1, spec.point_count());
  auto rows = error::epsilon_optimal_sweep(spec, grid);
  Output out(out_path);
  if (format == "json") {
    out.stream() << io::sweep_json(rows) << '\n';
  } else {
    io::write_sweep_csv(out.stream(), rows);
  }
  return 0;
}

int cmd_search(const search::SearchTask& task, const std::string& verify_config,
               int64_t verify_depth, const std::string& out_path) {
  auto result = search::run(task);
  auto record = io::search_record(task, result, io::timestamp_utc());
  {
    Output out(out_path, /*append=*/true);
    out.stream() << record.dump() << '\n';
  }
  if (result.budget_exceeded) {
    std::cerr << "search: exhaustive candidate count exceeds budget "
              << task.budget << "\n";
    return kExitBudget;
  }
  if (!verify_config.empty()) {
    auto kind = io::parse_config_kind(verify_config);
    if (!kind) throw std::invalid_argument("unknown configuration: " + verify_config);
    auto expected = search::canonicalize(subset::generate(task.spec, *kind, verify_depth));
    if (expected != result.best) {
      std::cerr << "search: optimum differs from " << verify_config
                << " (up to symmetry)\n";
      return 1;
    }
  }
  return 0;
}

int cmd_nk(int64_t kmax, int64_t budget, const std::string& out_path,
           const std::string& format) {
  if (kmax < 1 || kmax > 10) throw std::invalid_argument("nk: kmax must be in [1, 10]");
  struct Row {
    int64_t k;
    std::string nk, constructive, primorial, simple;
    std::string agree;
  };
  std::vector<Row> rows;
  for (int64_t k = 1; k <= kmax; ++k) {
    Row row{k, "", "", "", "", ""};
    try {
      auto bounds = numtheory::curve_min_bounds(k);
      row.constructive = bounds.constructive_upper.str();
      row.primorial = bounds.primorial_lower.str();
      row.simple = bounds.simple_upper.str();
      int64_t nk = numtheory::curve_min(k, budget);
      row.nk = std::to_string(nk);
      row.agree = Count128(nk) == bounds.constructive_upper ? "1" : "0";
    } catch (const std::overflow_error&) {
      row.nk = row.nk.empty() ? "overflow" : row.nk;
      if (row.constructive.empty()) row.constructive = "overflow";
      if (row.primorial.empty()) row.primorial = "overflow";
      if (row.simple.empty()) row.simple = "overflow";
      row.agree = "";
    }
    rows.push_back(std::move(row));
  }
  Output out(out_path);
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"k", r.k},
                   {"n_k", r.nk},
                   {"n_k_constructive", r.constructive},
                   {"primorial_lower", r.primorial},
                   {"simple_upper", r.simple},
                   {"agree", r.agree}});
    }
    out.stream() << j << '\n';
  } else {
    out.stream() << "k,n_k,n_k_constructive,primorial_lower,simple_upper,agree\n";
    for (const auto& r : rows) {
      out.stream() << r.k << ',' << r.nk << ',' << r.constructive << ',' << r.primorial << ','
                   << r.simple << ',' << r.agree << '\n';
    }
  }
  return 0;
}

int cmd_config(int64_t n, const std::string& config, int64_t depth,
               const std::string& out_path) {
  lattice::LatticeSpec spec(n);
  SubsetChoice choice{"", config, depth};
  auto ps = resolve_subset(spec, choice);
  Output out(out_path);
  out.stream() << io::point_set_json(ps).dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distance distributions of the integer lattice and its subsets"};
  app.require_subcommand(1);

  int64_t n = 0, p = 0, depth = 1, kmax = 8;
  int64_t budget = search::kDefaultBudget;
  int64_t size_budget = subset::kMaxDistributionPoints;
  int64_t iterations = 1000;
  uint64_t seed = 0;
  std::string out_path = "-", format = "csv", grid, subset_file, config, verify_config;
  std::string metric = "exact-unnormalized", mode = "exhaustive", objective = "maximize";

  auto* lat = app.add_subcommand("lattice", "Full-lattice distance distribution");
  lat->add_option("--n", n, "lattice side")->required()->check(CLI::Range(int64_t{2}, lattice::kMaxFullDistributionSide));
  lat->add_option("--out", out_path, "output path or -");
  lat->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* sd = app.add_subcommand("subset-dist", "Distance distribution of a subset");
  sd->add_option("--n", n, "lattice side")->required();
  sd->add_option("--subset", subset_file, "point-set JSON file");
  sd->add_option("--config", config, "named configuration or 'full'");
  sd->add_option("--depth", depth, "filled-perimeter depth");
  sd->add_option("--budget", size_budget, "max subset size for O(p^2) work");
  sd->add_option("--out", out_path);
  sd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* err = app.add_subcommand("error", "Error of a subset's distribution vs the lattice");
  err->add_option("--n", n, "lattice side")->required();
  err->add_option("--subset", subset_file, "point-set JSON file");
  err->add_option("--config", config, "named configuration or 'full'");
  err->add_option("--depth", depth, "filled-perimeter depth");
  err->add_option("--budget", size_budget, "max subset size for O(p^2) work");
  err->add_option("--out", out_path);

  auto* oc = app.add_subcommand("optimal-curve", "Error of the rounded theoretical distribution over a p grid");
  oc->add_option("--n", n, "lattice side")->required();
  oc->add_option("--p", grid, "p grid: START:STOP[:STEP] or a single value")->required();
  oc->add_option("--out", out_path);
  oc->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* se = app.add_subcommand("search", "Search for subsets extremizing the error");
  se->add_option("--n", n, "lattice side")->required();
  se->add_option("--p", p, "subset size")->required();
  se->add_option("--metric", metric)->check(CLI::IsMember({"exact-unnormalized", "exact-normalized", "pair-estimate"}));
  se->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random-restart"}));
  se->add_option("--objective", objective)->check(CLI::IsMember({"maximize", "minimize"}));
  se->add_option("--seed", seed, "random-restart seed");
  se->add_option("--iterations", iterations, "random-restart iterations");
  se->add_option("--budget", budget, "max exhaustive candidate count");
  se->add_option("--verify-config", verify_config, "compare the optimum to this configuration");
  se->add_option("--depth", depth, "depth for --verify-config filled-perimeter");
  se->add_option("--out", out_path, "JSON-lines log (appended)");

  auto* nk = app.add_subcommand("nk", "Smallest distance on each frequency curve, with bounds");
  nk->add_option("--kmax", kmax)->check(CLI::Range(int64_t{1}, int64_t{10}));
  nk->add_option("--budget", budget, "enumeration budget");
  nk->add_option("--out", out_path);
  nk->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* cf = app.add_subcommand("config", "Emit a named configuration as point-set JSON");
  cf->add_option("--n", n, "lattice side")->required();
  cf->add_option("--config", config, "named configuration or 'full'")->required();
  cf->add_option("--depth", depth, "filled-perimeter depth");
  cf->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    SubsetChoice choice{subset_file, config, depth};
    if (lat->parsed()) return cmd_lattice(n, out_path, format);
    if (sd->parsed()) return cmd_subset_dist(n, choice, size_budget, out_path, format);
    if (err->parsed()) return cmd_error(n, choice, size_budget, out_path);
    if (oc->parsed()) return cmd_optimal_curve(n, grid, out_path, format);
    if (se->parsed()) {
      search::SearchTask task{lattice::LatticeSpec(n), p};
      task.metric = *io::parse_metric(metric);
      task.mode = *io::parse_mode(mode);
      task.objective = *io::parse_objective(objective);
      task.budget = budget;
      task.iterations = iterations;
      task.seed = seed;
      return cmd_search(task, verify_config, depth, out_path);
    }
    if (nk->parsed()) return cmd_nk(kmax, budget, out_path, format);
    if (cf->parsed()) return cmd_config(n, config, depth, out_path);
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
