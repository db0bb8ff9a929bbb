#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "latdist/error.hpp"
#include "latdist/search.hpp"
#include "latdist/subset.hpp"

// Serialization shared by the CLI and the tests. Every writer is
// deterministic: same inputs, same bytes.
namespace latdist::io {

// {"num": "...", "den": "...", "float": ...} with decimal-string components.
nlohmann::json rational_json(const Rational& r);

// Exact CSV cell: "num" when integral, "num/den" otherwise.
std::string rational_cell(const Rational& r);

// Columns d,sqrt_d,frequency,curve_index; rows ascending in d; sqrt_d
// printed with 12 significant digits.
void write_distribution_csv(std::ostream& os, const lattice::DistanceDistribution& dist);
nlohmann::json distribution_json(const lattice::DistanceDistribution& dist);

// {"N": n, "points": [[x, y], ...]} with points sorted.
nlohmann::json point_set_json(const subset::PointSet& ps);
subset::PointSet point_set_from_json(const nlohmann::json& j);

nlohmann::json error_report_json(const error::ErrorReport& report);

// Columns p,eps_unnormalized,eps_normalized,eps_pair_estimate.
void write_sweep_csv(std::ostream& os,
                     const std::vector<std::pair<int64_t, error::OptimalEpsilon>>& rows);
nlohmann::json sweep_json(const std::vector<std::pair<int64_t, error::OptimalEpsilon>>& rows);

std::string config_kind_name(subset::ConfigKind kind);
std::optional<subset::ConfigKind> parse_config_kind(std::string_view name);

std::string metric_name(search::Metric m);
std::optional<search::Metric> parse_metric(std::string_view name);
std::string mode_name(search::Mode m);
std::optional<search::Mode> parse_mode(std::string_view name);
std::string objective_name(search::Objective o);
std::optional<search::Objective> parse_objective(std::string_view name);

// One JSON line per result: task echo, best set, value, counters, timestamp.
nlohmann::json search_record(const search::SearchTask& task, const search::SearchResult& result,
                             const std::string& timestamp);

// ISO-8601 UTC. Honors SOURCE_DATE_EPOCH so runs can be made byte-reproducible.
std::string timestamp_utc();

}  // namespace latdist::io
