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

#pragma once

#include <string>
#include <string_view>

#include "clickgbs/gaussian.hpp"

namespace clickgbs {

/// Accepted values of the "ordering" key. The template form is what
/// state_to_json writes; the expanded form ("q1,p1,q2,p2" for M = 2) is
/// also read.
inline constexpr std::string_view kOrderingTemplate = "q1,p1,...,qM,pM";

/// {"modes": M, "cov": [4M^2 numbers], "mean": [2M numbers], "ordering": ...}
std::string state_to_json(const GaussianState& state);

/// Throws SchemaError on malformed documents and NotSymmetric on asymmetric
/// covariances; physicality failures surface as Unphysical.
GaussianState state_from_json(std::string_view text);

}  // namespace clickgbs
