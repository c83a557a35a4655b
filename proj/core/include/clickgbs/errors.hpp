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

#include <stdexcept>
#include <string>

namespace clickgbs {

/// Broad failure class. The CLI maps these onto its exit codes.
enum class ErrorCategory {
  Input,      // malformed or out-of-range caller data
  Numerical,  // well-formed input outside the numerical domain
  Resource,   // a size cap was exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define CLICKGBS_DEFINE_ERROR(Name, Category)                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what)                      \
        : Error(ErrorCategory::Category, #Name ": " + what) {}  \
  };

CLICKGBS_DEFINE_ERROR(SchemaError, Input)
CLICKGBS_DEFINE_ERROR(IndexOutOfRange, Input)
CLICKGBS_DEFINE_ERROR(DimensionMismatch, Input)
CLICKGBS_DEFINE_ERROR(NotSymmetric, Input)
CLICKGBS_DEFINE_ERROR(NegativeMeanPhotons, Input)
CLICKGBS_DEFINE_ERROR(PatternOutOfRange, Input)
CLICKGBS_DEFINE_ERROR(OutOfRange, Input)
CLICKGBS_DEFINE_ERROR(NotSwapSymmetric, Input)

CLICKGBS_DEFINE_ERROR(NotPositiveDefinite, Numerical)
CLICKGBS_DEFINE_ERROR(SingularConstantTerm, Numerical)
CLICKGBS_DEFINE_ERROR(Unphysical, Numerical)
CLICKGBS_DEFINE_ERROR(InvalidOrdering, Numerical)
CLICKGBS_DEFINE_ERROR(NotClassical, Numerical)
CLICKGBS_DEFINE_ERROR(ZeroConditional, Numerical)
CLICKGBS_DEFINE_ERROR(NegativeProbability, Numerical)
CLICKGBS_DEFINE_ERROR(TailTooHeavy, Numerical)

CLICKGBS_DEFINE_ERROR(TooLarge, Resource)

#undef CLICKGBS_DEFINE_ERROR

}  // namespace clickgbs
