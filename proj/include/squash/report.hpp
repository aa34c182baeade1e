// Copyright 2026 The Squash Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "squash/conditions.hpp"
#include "squash/squash.hpp"

namespace squash {

const char* library_version();

/// Everything needed to replay a run: verbatim config echo, seed, the
/// hypothesis margins, the topology certificate, and a trace summary.
struct VerificationReport {
  nlohmann::ordered_json config;
  std::uint64_t seed = 0;
  std::optional<ConditionReport> conditions;
  TopologyCertificate certificate;
  size_t initial_top_count = 0;
  size_t collapse_count = 0;
  std::string trace_summary;
  std::map<std::string, double> timing_s;
};

nlohmann::ordered_json report_to_json(const VerificationReport& rep);
void write_report(const VerificationReport& rep, const std::string& path);

/// Versioned structural schema for report_to_json output; unknown fields
/// are rejected by validate_report.
nlohmann::ordered_json report_schema();

/// Structural validation against report_schema; returns the list of
/// violations (empty when valid).
std::vector<std::string> validate_report(const nlohmann::json& report);

}  // namespace squash
