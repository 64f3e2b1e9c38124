// Copyright 2026 The FrameKit Authors
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

#pragma once

#include <gtest/gtest.h>

#include <random>

#include "framekit/error.hpp"
#include "framekit/numerics.hpp"

namespace framekit::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = d(rng);
  }
  return m;
}

inline Vector random_vec(std::mt19937_64& rng, Eigen::Index n) { return random_matrix(rng, n, 1).col(0); }

// R R^T + shift I, well conditioned for moderate shift.
inline SymMatrix random_spd(std::mt19937_64& rng, Eigen::Index n, double shift = 1.0) {
  const Matrix r = random_matrix(rng, n, n);
  return SymMatrix::symmetrize(r * r.transpose() / static_cast<double>(n) + shift * Matrix::Identity(n, n));
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  const double s = b.norm();
  return s > 0.0 ? (a - b).norm() / s : (a - b).norm();
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a framekit::Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace framekit::testing
