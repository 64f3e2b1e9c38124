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

#include "framekit/fixtures.hpp"

#include <array>
#include <cctype>
#include <string>

namespace framekit::fixtures {

namespace {

Matrix columns(std::initializer_list<std::pair<double, double>> cols) {
  Matrix m(2, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index k = 0;
  for (const auto& [a, b] : cols) {
    m(0, k) = a;
    m(1, k) = b;
    ++k;
  }
  return m;
}

}  // namespace

TriplePtr unit_triple() {
  static const TriplePtr t = DiscreteGelfandTriple::from_inner_product(SymMatrix::identity(2), std::nullopt, "unit(N=2)");
  return t;
}

FrameSpec f1() { return FrameSpec(unit_triple(), columns({{1, 0}, {1, 0}, {0, 1}})); }

FrameSpec f2() { return FrameSpec(unit_triple(), columns({{1, 0}, {1, 0}, {0, 1}, {0, 1}})); }

FrameSpec f3() {
  std::vector<ElementLabel> labels{{0, 0, 2.0}, {0, 1, 2.0}, {0, 2, 0.5}, {0, 3, 0.5}};
  return FrameSpec(unit_triple(), columns({{2, 0}, {2, 0}, {0, 0.5}, {0, 0.5}}), labels);
}

FrameSpec f4() {
  static const TriplePtr t = DiscreteGelfandTriple::from_inner_product(
      SymMatrix::diagonal(Vector::Map(std::array<double, 2>{2.0, 1.0}.data(), 2)), std::nullopt,
      "diag(2,1)(N=2)");
  return FrameSpec(t, columns({{1, 0}, {0, 1}}));
}

FrameSpec by_name(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "F1") return f1();
  if (up == "F2") return f2();
  if (up == "F3") return f3();
  if (up == "F4") return f4();
  raise(ErrorCode::InvalidArgument, "unknown fixture '" + std::string(name) + "' (expected F1..F4)");
}

std::vector<std::string_view> names() { return {"F1", "F2", "F3", "F4"}; }

}  // namespace framekit::fixtures
