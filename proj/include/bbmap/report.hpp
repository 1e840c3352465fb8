// Copyright 2026 The bbmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Result serialization: one row per (policy, seed) run, emitted as ordered
// JSON (schema_version 1) or CSV with an identical field order. Output is
// byte-deterministic for identical inputs.

#ifndef BBMAP_REPORT_HPP
#define BBMAP_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "bbmap/cost.hpp"

namespace bbmap {

struct ReportRow {
  std::string policy;
  std::string topology;
  uint64_t seed = 0;
  bool priority_ties = false;
  InstructionTally tally;
  ErrorReport error;
};

inline nlohmann::ordered_json report_json(const ReportRow& row) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["policy"] = row.policy;
  j["topology"] = row.topology;
  j["seed"] = row.seed;
  j["priority_ties"] = row.priority_ties;
  nlohmann::ordered_json counts;
  counts["B"] = row.tally.b;
  counts["C_routing"] = row.tally.c_routing;
  counts["C_synth"] = row.tally.c_synth;
  counts["T_inject"] = row.tally.t_inject;
  counts["idle"] = row.tally.idle;
  counts["shift"] = row.tally.shift;
  j["counts"] = std::move(counts);
  j["timesteps"] = row.error.timesteps;
  j["P_total"] = row.error.p_total;
  j["P_non_fixed"] = row.error.p_non_fixed;
  j["P_fixed"] = row.error.p_fixed;
  return j;
}

inline nlohmann::ordered_json report_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) arr.push_back(report_json(row));
  return arr;
}

namespace detail {

// Shortest round-trip decimal form, identical to the JSON emitter's.
inline std::string number_str(double v) {
  return nlohmann::json(v).dump();
}

// Minimal CSV quoting: only policy/topology can contain text.
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace detail

inline std::string report_csv_header() {
  return "schema_version,policy,topology,seed,priority_ties,B,C_routing,"
         "C_synth,T_inject,idle,shift,timesteps,P_total,P_non_fixed,P_fixed";
}

inline std::string report_csv_row(const ReportRow& row) {
  std::string out;
  out += "1,";
  out += detail::csv_escape(row.policy) + ",";
  out += detail::csv_escape(row.topology) + ",";
  out += std::to_string(row.seed) + ",";
  out += row.priority_ties ? "true," : "false,";
  out += std::to_string(row.tally.b) + ",";
  out += std::to_string(row.tally.c_routing) + ",";
  out += std::to_string(row.tally.c_synth) + ",";
  out += std::to_string(row.tally.t_inject) + ",";
  out += std::to_string(row.tally.idle) + ",";
  out += std::to_string(row.tally.shift) + ",";
  out += std::to_string(row.error.timesteps) + ",";
  out += detail::number_str(row.error.p_total) + ",";
  out += detail::number_str(row.error.p_non_fixed) + ",";
  out += detail::number_str(row.error.p_fixed);
  return out;
}

inline std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = report_csv_header();
  out += "\n";
  for (const ReportRow& row : rows) {
    out += report_csv_row(row);
    out += "\n";
  }
  return out;
}

}  // namespace bbmap

#endif  // BBMAP_REPORT_HPP
