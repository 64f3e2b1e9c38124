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

#include <stdexcept>
#include <string>

namespace framekit {

enum class ErrorCode {
  DimensionMismatch,
  NotPositiveDefinite,
  NoConvergence,
  Inconsistent,
  DomainError,
  NotAFrame,
  IncompatiblePairing,
  SingularOperator,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the library. The code is what the C API
/// forwards as its status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by cg_solve when maxit is reached before the residual target.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

inline void require_dims(bool ok, const char* where) {
  if (!ok) raise(ErrorCode::DimensionMismatch, std::string(where) + ": dimension mismatch");
}

}  // namespace framekit
