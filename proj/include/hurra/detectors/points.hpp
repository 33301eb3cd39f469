/*
 * Copyright 2026 The Hurra Authors
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

#include <cmath>
#include <cstddef>
#include <span>

#include "hurra/error.hpp"

namespace hurra {

// Read-only T x F row-major view: one row per timeslot.
class PointView {
 public:
  PointView(std::span<const double> data, std::size_t rows, std::size_t cols)
      : data_(data), rows_(rows), cols_(cols) {
    require(data.size() == rows * cols, ErrorCode::kInvalidArgument,
            "point buffer does not match rows x cols");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const double* row(std::size_t t) const { return data_.data() + t * cols_; }
  double operator()(std::size_t t, std::size_t j) const { return data_[t * cols_ + j]; }

 private:
  std::span<const double> data_;
  std::size_t rows_;
  std::size_t cols_;
};

// Resolves a fraction of n to a count (round half away from zero).
inline std::size_t fraction_of(double frac, std::size_t n) {
  return static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
}

}  // namespace hurra
