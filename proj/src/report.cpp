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

#include "squash/report.hpp"

#include <fstream>

namespace squash {

using nlohmann::json;
using nlohmann::ordered_json;

const char* library_version() { return "0.1.0"; }

namespace {

ordered_json condition_block(bool ok, double margin, const Simplex& binding) {
  ordered_json j;
  j["ok"] = ok;
  j["margin"] = margin;
  j["binding"] = binding;
  return j;
}

}  // namespace

ordered_json report_to_json(const VerificationReport& rep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["library_version"] = library_version();
  j["config"] = rep.config;
  j["seed"] = rep.seed;
  if (rep.conditions) {
    const ConditionReport& c = *rep.conditions;
    ordered_json pc;
    pc["gate_ok"] = c.gate_ok;
    pc["gate_failure"] = c.gate_failure;
    pc["beta"] = c.beta;
    pc["c2"] = condition_block(c.c2_ok, c.c2_margin, c.c2_binding);
    pc["c3"] = condition_block(c.c3_ok, c.c3_margin, c.c3_binding);
    pc["c4"] = condition_block(c.c4_ok, c.c4_margin, c.c4_binding);
    pc["c4"]["margin_grid"] = c.c4_margin_grid;
    pc["c5"] = condition_block(c.c5_ok, c.c5_margin, c.c5_binding);
    j["paper_conditions"] = pc;
  }
  ordered_json cert;
  cert["is_closed_surface"] = rep.certificate.is_closed_surface;
  cert["euler_characteristic"] = rep.certificate.euler_characteristic;
  cert["num_components"] = rep.certificate.num_components;
  cert["orientable"] = rep.certificate.orientable;
  cert["vertex_links_ok"] = rep.certificate.vertex_links_ok;
  cert["pure"] = rep.certificate.pure;
  cert["genus"] = rep.certificate.genus;
  cert["failure"] = rep.certificate.failure;
  j["certificate"] = cert;
  ordered_json trace;
  trace["initial_top_count"] = rep.initial_top_count;
  trace["collapses"] = rep.collapse_count;
  trace["summary"] = rep.trace_summary;
  j["trace"] = trace;
  j["timing_s"] = rep.timing_s;
  return j;
}

void write_report(const VerificationReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GeometryError("cannot open " + path);
  out << report_to_json(rep).dump(2) << "\n";
}

ordered_json report_schema() {
  const auto obj = [](ordered_json props, ordered_json required) {
    ordered_json s;
    s["type"] = "object";
    s["properties"] = std::move(props);
    s["required"] = std::move(required);
    s["additionalProperties"] = false;
    return s;
  };
  const auto typed = [](const char* t) {
    ordered_json s;
    s["type"] = t;
    return s;
  };
  ordered_json simplex;
  simplex["type"] = "array";
  simplex["items"] = typed("integer");

  ordered_json cond = obj({{"ok", typed("boolean")},
                           {"margin", typed("number")},
                           {"margin_grid", typed("number")},
                           {"binding", simplex}},
                          {"ok", "margin", "binding"});

  ordered_json pc = obj({{"gate_ok", typed("boolean")},
                         {"gate_failure", typed("string")},
                         {"beta", typed("number")},
                         {"c2", cond},
                         {"c3", cond},
                         {"c4", cond},
                         {"c5", cond}},
                        {"gate_ok", "gate_failure", "beta", "c2", "c3", "c4", "c5"});

  ordered_json cert = obj({{"is_closed_surface", typed("boolean")},
                           {"euler_characteristic", typed("integer")},
                           {"num_components", typed("integer")},
                           {"orientable", typed("boolean")},
                           {"vertex_links_ok", typed("boolean")},
                           {"pure", typed("boolean")},
                           {"genus", typed("integer")},
                           {"failure", typed("string")}},
                          {"is_closed_surface", "euler_characteristic", "num_components",
                           "orientable", "vertex_links_ok", "pure", "genus", "failure"});

  ordered_json trace = obj({{"initial_top_count", typed("integer")},
                            {"collapses", typed("integer")},
                            {"summary", typed("string")}},
                           {"initial_top_count", "collapses", "summary"});

  ordered_json config = typed("object");  // verbatim echo, free form

  ordered_json timing = typed("object");
  timing["additionalProperties"] = typed("number");

  ordered_json root = obj({{"schema_version", typed("integer")},
                           {"library_version", typed("string")},
                           {"config", config},
                           {"seed", typed("integer")},
                           {"paper_conditions", pc},
                           {"certificate", cert},
                           {"trace", trace},
                           {"timing_s", timing}},
                          {"schema_version", "library_version", "config", "seed",
                           "certificate", "trace", "timing_s"});
  root["$schema"] = "https://json-schema.org/draft/2020-12/schema";
  return root;
}

namespace {

bool type_matches(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (t == "number") return v.is_number();
  return false;
}

void validate(const json& v, const json& schema, const std::string& path,
              std::vector<std::string>& errs) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    if (!type_matches(v, t)) {
      errs.push_back(path + ": expected " + t);
      return;
    }
  }
  if (v.is_object()) {
    const json props =
        schema.contains("properties") ? schema["properties"] : json::object();
    if (schema.contains("required"))
      for (const auto& r : schema["required"])
        if (!v.contains(r.get<std::string>()))
          errs.push_back(path + ": missing required field " + r.get<std::string>());
    const bool closed = schema.contains("additionalProperties") &&
                        schema["additionalProperties"].is_boolean() &&
                        !schema["additionalProperties"].get<bool>();
    const json* extra_schema = nullptr;
    if (schema.contains("additionalProperties") && schema["additionalProperties"].is_object())
      extra_schema = &schema["additionalProperties"];
    for (const auto& [k, val] : v.items()) {
      if (props.contains(k)) {
        validate(val, props[k], path + "." + k, errs);
      } else if (extra_schema) {
        validate(val, *extra_schema, path + "." + k, errs);
      } else if (closed) {
        errs.push_back(path + ": unknown field " + k);
      }
    }
  }
  if (v.is_array() && schema.contains("items")) {
    for (size_t i = 0; i < v.size(); ++i)
      validate(v[i], schema["items"], path + "[" + std::to_string(i) + "]", errs);
  }
}

}  // namespace

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> errs;
  validate(report, report_schema(), "$", errs);
  return errs;
}

}  // namespace squash
