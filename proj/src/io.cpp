#include "latdist/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>

#include "latdist/numtheory.hpp"

namespace latdist::io {

namespace {

std::string significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

}  // namespace

nlohmann::json rational_json(const Rational& r) {
  return {{"num", numerator(r).str()},
          {"den", denominator(r).str()},
          {"float", to_double(r)}};
}

std::string rational_cell(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

void write_distribution_csv(std::ostream& os, const lattice::DistanceDistribution& dist) {
  os << "d,sqrt_d,frequency,curve_index\n";
  if (dist.entries().empty()) return;
  auto r2 = numtheory::r2_table(dist.entries().back().first);
  for (const auto& [d, freq] : dist.entries()) {
    os << d << ',' << significant(std::sqrt(static_cast<double>(d)), 12) << ',' << freq << ','
       << r2[static_cast<size_t>(d)] / 4 << '\n';
  }
}

nlohmann::json distribution_json(const lattice::DistanceDistribution& dist) {
  nlohmann::json rows = nlohmann::json::array();
  if (!dist.entries().empty()) {
    auto r2 = numtheory::r2_table(dist.entries().back().first);
    for (const auto& [d, freq] : dist.entries()) {
      rows.push_back({{"d", d},
                      {"sqrt_d", std::sqrt(static_cast<double>(d))},
                      {"frequency", freq},
                      {"curve_index", r2[static_cast<size_t>(d)] / 4}});
    }
  }
  return {{"total", dist.total()}, {"distinct", dist.distinct()}, {"entries", rows}};
}

nlohmann::json point_set_json(const subset::PointSet& ps) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : ps.points()) pts.push_back({p.x, p.y});
  return {{"N", ps.spec().n}, {"points", pts}};
}

subset::PointSet point_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("points"))
    throw std::invalid_argument("point set JSON must have \"N\" and \"points\"");
  lattice::LatticeSpec spec(j.at("N").get<int64_t>());
  std::vector<subset::Point> pts;
  for (const auto& e : j.at("points")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("point set JSON: each point must be [x, y]");
    pts.push_back({e.at(0).get<int64_t>(), e.at(1).get<int64_t>()});
  }
  return subset::PointSet(spec, std::move(pts));
}

nlohmann::json error_report_json(const error::ErrorReport& report) {
  nlohmann::json j{{"p", report.p},
                   {"scale", rational_json(report.scale)},
                   {"eps_exact_normalized", rational_json(report.exact_normalized)},
                   {"eps_exact_unnormalized", rational_json(report.exact_unnormalized)},
                   {"eps_pair_estimate", rational_json(report.pair_estimate)}};
  if (report.per_class) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [cls, eps] : *report.per_class) {
      rows.push_back({{"a", cls.a}, {"b", cls.b}, {"eps", rational_json(eps)}});
    }
    j["per_class"] = std::move(rows);
  }
  return j;
}

void write_sweep_csv(std::ostream& os,
                     const std::vector<std::pair<int64_t, error::OptimalEpsilon>>& rows) {
  os << "p,eps_unnormalized,eps_normalized,eps_pair_estimate\n";
  for (const auto& [p, eps] : rows) {
    os << p << ',' << rational_cell(eps.unnormalized) << ',' << rational_cell(eps.normalized)
       << ',' << rational_cell(eps.pair_estimate) << '\n';
  }
}

nlohmann::json sweep_json(const std::vector<std::pair<int64_t, error::OptimalEpsilon>>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [p, eps] : rows) {
    out.push_back({{"p", p},
                   {"eps_unnormalized", rational_json(eps.unnormalized)},
                   {"eps_normalized", rational_json(eps.normalized)},
                   {"eps_pair_estimate", rational_json(eps.pair_estimate)}});
  }
  return out;
}

std::string config_kind_name(subset::ConfigKind kind) {
  switch (kind) {
    case subset::ConfigKind::Corners: return "corners";
    case subset::ConfigKind::CornersCenter: return "corners-center";
    case subset::ConfigKind::Stretched3x3: return "stretched3x3";
    case subset::ConfigKind::Perimeter: return "perimeter";
    case subset::ConfigKind::FilledPerimeter: return "filled-perimeter";
    case subset::ConfigKind::Checkerboard: return "checkerboard";
  }
  return "unknown";
}

std::optional<subset::ConfigKind> parse_config_kind(std::string_view name) {
  using subset::ConfigKind;
  if (name == "corners") return ConfigKind::Corners;
  if (name == "corners-center") return ConfigKind::CornersCenter;
  if (name == "stretched3x3") return ConfigKind::Stretched3x3;
  if (name == "perimeter") return ConfigKind::Perimeter;
  if (name == "filled-perimeter") return ConfigKind::FilledPerimeter;
  if (name == "checkerboard") return ConfigKind::Checkerboard;
  return std::nullopt;
}

std::string metric_name(search::Metric m) {
  switch (m) {
    case search::Metric::ExactNormalized: return "exact-normalized";
    case search::Metric::ExactUnnormalized: return "exact-unnormalized";
    case search::Metric::PairEstimate: return "pair-estimate";
  }
  return "unknown";
}

std::optional<search::Metric> parse_metric(std::string_view name) {
  if (name == "exact-normalized") return search::Metric::ExactNormalized;
  if (name == "exact-unnormalized") return search::Metric::ExactUnnormalized;
  if (name == "pair-estimate") return search::Metric::PairEstimate;
  return std::nullopt;
}

std::string mode_name(search::Mode m) {
  return m == search::Mode::Exhaustive ? "exhaustive" : "random-restart";
}

std::optional<search::Mode> parse_mode(std::string_view name) {
  if (name == "exhaustive") return search::Mode::Exhaustive;
  if (name == "random-restart") return search::Mode::RandomRestart;
  return std::nullopt;
}

std::string objective_name(search::Objective o) {
  return o == search::Objective::Maximize ? "maximize" : "minimize";
}

std::optional<search::Objective> parse_objective(std::string_view name) {
  if (name == "maximize") return search::Objective::Maximize;
  if (name == "minimize") return search::Objective::Minimize;
  return std::nullopt;
}

nlohmann::json search_record(const search::SearchTask& task, const search::SearchResult& result,
                             const std::string& timestamp) {
  nlohmann::json t{{"n", task.spec.n},
                   {"p", task.p},
                   {"objective", objective_name(task.objective)},
                   {"metric", metric_name(task.metric)},
                   {"mode", mode_name(task.mode)},
                   {"budget", task.budget}};
  if (task.mode == search::Mode::RandomRestart) t["iterations"] = task.iterations;
  return {{"task", std::move(t)},
          {"best", point_set_json(result.best)},
          {"value", rational_json(result.value)},
          {"candidates_examined", result.candidates_examined},
          {"symmetry_class_size", result.symmetry_class_size},
          {"budget_exceeded", result.budget_exceeded},
          {"seed", task.seed},
          {"timestamp", timestamp}};
}

std::string timestamp_utc() {
  std::time_t t;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace latdist::io
