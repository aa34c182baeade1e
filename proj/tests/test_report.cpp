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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "squash/report.hpp"

using namespace squash;

namespace {

VerificationReport sample_report() {
  VerificationReport rep;
  rep.config = {{"surface", "sphere r=1"}, {"epsilon", 0.2}, {"alpha", 0.359}};
  rep.seed = 7;
  ConditionReport c;
  c.gate_ok = true;
  c.beta = 0.28;
  c.c2_ok = c.c3_ok = c.c4_ok = c.c5_ok = true;
  c.c2_margin = 0.5;
  c.c3_margin = 0.4;
  c.c4_margin = 0.3;
  c.c5_margin = 0.2;
  c.c2_binding = make_simplex({1, 2});
  rep.conditions = c;
  rep.certificate.is_closed_surface = true;
  rep.certificate.euler_characteristic = 2;
  rep.certificate.num_components = 1;
  rep.certificate.orientable = true;
  rep.certificate.vertex_links_ok = true;
  rep.certificate.pure = true;
  rep.certificate.genus = 0;
  rep.initial_top_count = 10;
  rep.collapse_count = 4;
  rep.trace_summary = "no vertically free simplices remain";
  rep.timing_s["total"] = 1.25;
  return rep;
}

}  // namespace

TEST_CASE("report serializes and validates against its schema") {
  const nlohmann::ordered_json j = report_to_json(sample_report());
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("library_version") == library_version());
  CHECK(j.at("seed") == 7);
  CHECK(j.at("certificate").at("euler_characteristic") == 2);
  CHECK(validate_report(j).empty());
}

TEST_CASE("report without conditions still validates") {
  VerificationReport rep = sample_report();
  rep.conditions.reset();
  const nlohmann::ordered_json j = report_to_json(rep);
  CHECK(!j.contains("paper_conditions"));
  CHECK(validate_report(j).empty());
}

TEST_CASE("validator rejects unknown and missing fields") {
  nlohmann::json j = report_to_json(sample_report());
  j["surprise"] = 1;
  CHECK(!validate_report(j).empty());
  j.erase("surprise");
  CHECK(validate_report(j).empty());
  j.erase("certificate");
  CHECK(!validate_report(j).empty());
  nlohmann::json k = report_to_json(sample_report());
  k["certificate"]["euler_characteristic"] = "two";
  CHECK(!validate_report(k).empty());
}

TEST_CASE("write_report round trip") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "squash_report.json").string();
  write_report(sample_report(), path);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(validate_report(j).empty());
  CHECK(j.at("trace").at("collapses") == 4);
  std::remove(path.c_str());
}

TEST_CASE("schema is itself well formed") {
  const nlohmann::ordered_json s = report_schema();
  CHECK(s.contains("$schema"));
  CHECK(s.at("type") == "object");
  CHECK(s.at("properties").contains("certificate"));
}
