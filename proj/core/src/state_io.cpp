/*
 * Copyright 2026 The clickgbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clickgbs/state_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "clickgbs/errors.hpp"

namespace clickgbs {

using nlohmann::json;

namespace {

std::string expanded_ordering(std::size_t modes) {
  std::string out;
  for (std::size_t i = 1; i <= modes; ++i) {
    if (i > 1) out += ',';
    out += "q" + std::to_string(i) + ",p" + std::to_string(i);
  }
  return out;
}

std::vector<double> number_array(const json& doc, const char* key, std::size_t expected) {
  if (!doc.contains(key) || !doc[key].is_array()) throw SchemaError(std::string("missing array \"") + key + "\"");
  const json& arr = doc[key];
  if (arr.size() != expected) {
    throw SchemaError(std::string("\"") + key + "\" has " + std::to_string(arr.size()) + " entries, expected " +
                      std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const json& x : arr) {
    if (!x.is_number()) throw SchemaError(std::string("non-numeric entry in \"") + key + "\"");
    const double v = x.get<double>();
    if (!std::isfinite(v)) throw SchemaError(std::string("non-finite entry in \"") + key + "\"");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string state_to_json(const GaussianState& state) {
  const std::size_t dim = 2 * state.modes();
  json doc;
  doc["modes"] = state.modes();
  json cov = json::array();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) cov.push_back(state.cov()(i, j));
  doc["cov"] = std::move(cov);
  doc["mean"] = state.mean();
  doc["ordering"] = std::string(kOrderingTemplate);
  return doc.dump(2) + "\n";
}

GaussianState state_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("state document must be an object");
  if (!doc.contains("modes") || !doc["modes"].is_number_integer() || doc["modes"].get<long long>() < 1) {
    throw SchemaError("\"modes\" must be a positive integer");
  }
  const auto modes = doc["modes"].get<std::size_t>();
  if (!doc.contains("ordering") || !doc["ordering"].is_string()) throw SchemaError("missing string \"ordering\"");
  const auto ordering = doc["ordering"].get<std::string>();
  if (ordering != kOrderingTemplate && ordering != expanded_ordering(modes)) {
    throw SchemaError("unsupported ordering \"" + ordering + "\"");
  }
  const std::size_t dim = 2 * modes;
  std::vector<double> cov = number_array(doc, "cov", dim * dim);
  std::vector<double> mean = number_array(doc, "mean", dim);
  return GaussianState(RealSymMatrix(dim, std::move(cov)), std::move(mean));
}

}  // namespace clickgbs
