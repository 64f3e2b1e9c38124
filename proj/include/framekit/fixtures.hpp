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

// Small hand-checkable frames on two-dimensional triples.
//
//   F1  {e1, e1, e2}                 unit triple      bounds (1, 2)
//   F2  {e1, e1, e2, e2}             unit triple      tight, A = B = 2
//   F3  {2e1, 2e1, e2/2, e2/2}       unit triple      bounds (1/2, 8)
//   F4  {e1, e2}                     H = diag(2, 1)   bounds (1, 2), dual (1/2, 1)
//
// F3 is the reweighted duplicate basis. Squaring the weights gives
// S = diag(8, 1/2), hence (1/2, 8); it is not the (1, 4) one might expect from
// the weights alone.

#pragma once

#include <string_view>
#include <vector>

#include "framekit/frames.hpp"

namespace framekit::fixtures {

/// N = 2, H = L^2 = identity.
TriplePtr unit_triple();

FrameSpec f1();
FrameSpec f2();
FrameSpec f3();
FrameSpec f4();

/// "F1".."F4" (case-insensitive). Throws InvalidArgument otherwise.
FrameSpec by_name(std::string_view name);

std::vector<std::string_view> names();

}  // namespace framekit::fixtures
