#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "bcr/error.hpp"

namespace bcr {

/// Summary of one CLI run. Result values are exact rationals kept as
/// `num/den` strings; wall time is optional so reports can be byte-stable.
struct RunReport {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, std::string> results;
  std::optional<double> wall_seconds;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j{{"command", r.command}, {"parameters", r.parameters}, {"counts", r.counts}, {"results", r.results}};
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    r.counts = j.at("counts").get<std::map<std::string, std::int64_t>>();
    r.results = j.at("results").get<std::map<std::string, std::string>>();
    if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseFailure, e.what());
  }
}

}  // namespace bcr
