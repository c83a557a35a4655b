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

// Extended-precision Cholesky for the alternating sums. Individual terms are
// O(1) while the result can be many orders smaller, so every term is formed
// in long double before it is accumulated.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "clickgbs/errors.hpp"
#include "clickgbs/matcore.hpp"

namespace clickgbs::detail {

using Extended = long double;

class ExtendedCholesky {
 public:
  // Row-major symmetric input of size n x n.
  ExtendedCholesky(std::vector<Extended> a, std::size_t n) : n_(n), lower_(std::move(a)) {
    for (std::size_t j = 0; j < n_; ++j) {
      Extended pivot = at(j, j);
      for (std::size_t k = 0; k < j; ++k) pivot -= at(j, k) * at(j, k);
      if (!(pivot > Cholesky::kPivotFloor)) {
        throw NotPositiveDefinite("Cholesky pivot " + std::to_string(static_cast<double>(pivot)) + " at row " +
                                  std::to_string(j));
      }
      const Extended d = std::sqrt(pivot);
      at(j, j) = d;
      for (std::size_t i = j + 1; i < n_; ++i) {
        Extended s = at(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
        at(i, j) = s / d;
      }
    }
  }

  static ExtendedCholesky of(const RealSymMatrix& a) {
    std::vector<Extended> m(a.dim() * a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) m[i * a.dim() + j] = a(i, j);
    return ExtendedCholesky(std::move(m), a.dim());
  }

  Extended log_det() const {
    Extended s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += std::log(lower_[i * n_ + i]);
    return 2 * s;
  }

  // v^T A^{-1} v = |L^{-1} v|^2.
  Extended inverse_quadratic_form(const std::vector<Extended>& v) const {
    std::vector<Extended> y(n_);
    Extended q = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      Extended s = v[i];
      for (std::size_t k = 0; k < i; ++k) s -= lower_[i * n_ + k] * y[k];
      y[i] = s / lower_[i * n_ + i];
      q += y[i] * y[i];
    }
    return q;
  }

 private:
  Extended& at(std::size_t i, std::size_t j) { return lower_[i * n_ + j]; }

  std::size_t n_;
  std::vector<Extended> lower_;
};

}  // namespace clickgbs::detail
