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

// Discrete Gelfand triple H^q_0(0,1) c L^2 c (H^q_0)' on a uniform dyadic mesh.
//
// Elements of H are stored by their coefficients in the interior hat basis
// (PrimalVector); elements of H' by their action on that basis (DualVector).
// The two are distinct types and nothing converts between them except
// riesz_image / riesz_preimage, which exist for test oracles only, and the
// explicit L^2 pivot identification used by the multiscale module.

#pragma once

#include <memory>
#include <optional>
#include <string>

#include "framekit/numerics.hpp"

namespace framekit {

/// f in H, coefficients in the reference hat basis.
class PrimalVector {
 public:
  PrimalVector() = default;
  explicit PrimalVector(Vector coeffs) : coeffs_(std::move(coeffs)) {}
  static PrimalVector zero(Eigen::Index n) { return PrimalVector(Vector::Zero(n)); }

  const Vector& coeffs() const noexcept { return coeffs_; }
  Eigen::Index size() const noexcept { return coeffs_.size(); }

 private:
  Vector coeffs_;
};

/// g in H', action_i = <g, b_i>.
class DualVector {
 public:
  DualVector() = default;
  explicit DualVector(Vector action) : action_(std::move(action)) {}
  static DualVector zero(Eigen::Index n) { return DualVector(Vector::Zero(n)); }

  const Vector& action() const noexcept { return action_; }
  Eigen::Index size() const noexcept { return action_.size(); }

 private:
  Vector action_;
};

/// Gamma for continuous piecewise-linear elements: V_j c H^t iff t < 3/2.
inline constexpr double kLinearElementRegularity = 1.5;

class DiscreteGelfandTriple {
 public:
  /// Hat-basis triple on (0,1) with N = 2^J_fine - 1 interior nodes.
  static std::shared_ptr<const DiscreteGelfandTriple> build(int j_fine, double q);

  /// Abstract finite-dimensional triple with a given H inner product and L^2
  /// Gramian (identity by default). Used by the small hand-checkable fixtures.
  static std::shared_ptr<const DiscreteGelfandTriple> from_inner_product(
      SymMatrix inner_h, std::optional<SymMatrix> mass = std::nullopt, std::string label = "custom");

  Eigen::Index dim() const noexcept { return inner_h_.n(); }
  /// 0 for custom triples.
  int j_fine() const noexcept { return j_fine_; }
  /// Mesh width; 0 for custom triples.
  double h() const noexcept { return h_; }
  /// Sobolev exponent, or empty for custom triples.
  std::optional<double> q() const noexcept { return q_; }
  const std::string& label() const noexcept { return label_; }
  bool is_mesh() const noexcept { return j_fine_ > 0; }

  const SymMatrix& mass() const noexcept { return mass_; }
  /// Only meaningful for mesh triples (zero matrix otherwise).
  const SymMatrix& stiffness() const noexcept { return stiffness_; }
  const SymMatrix& inner_h() const noexcept { return inner_h_; }

  const SpdFactor& inner_h_factor() const noexcept { return *inner_h_factor_; }
  const SpdFactor& mass_factor() const noexcept { return *mass_factor_; }

  /// Nodal coordinates x_i = i*h, i = 1..N.
  Vector nodes() const;

 private:
  DiscreteGelfandTriple() = default;
  void factorize();

  int j_fine_ = 0;
  double h_ = 0.0;
  std::optional<double> q_;
  std::string label_;
  SymMatrix mass_;
  SymMatrix stiffness_;
  SymMatrix inner_h_;
  std::shared_ptr<const SpdFactor> inner_h_factor_;
  std::shared_ptr<const SpdFactor> mass_factor_;
};

using TriplePtr = std::shared_ptr<const DiscreteGelfandTriple>;

/// Closed-form tridiagonal hat matrices on n = 2^level - 1 interior nodes.
SymMatrix hat_mass_matrix(int level);
SymMatrix hat_stiffness_matrix(int level);

/// mass * W diag(lambda^q) W^T * mass from the (stiffness, mass) pencil with
/// mass-orthonormal eigenvectors W.
SymMatrix spectral_inner_product(const SymMatrix& stiffness, const SymMatrix& mass, double q);

double primal_norm(const DiscreteGelfandTriple& t, const PrimalVector& f);
double dual_norm(const DiscreteGelfandTriple& t, const DualVector& g);
double pairing(const DualVector& g, const PrimalVector& f);

/// Riesz isometry H -> H'. Test oracle only.
DualVector riesz_image(const DiscreteGelfandTriple& t, const PrimalVector& f);
/// Inverse Riesz isometry H' -> H. Test oracle only.
PrimalVector riesz_preimage(const DiscreteGelfandTriple& t, const DualVector& g);

/// Identification through the pivot space: the L^2 function whose L^2
/// pairings with the hat basis reproduce g (a mass solve).
PrimalVector l2_pivot_preimage(const DiscreteGelfandTriple& t, const DualVector& g);

/// L^2 norm of a mesh function.
double l2_norm(const DiscreteGelfandTriple& t, const PrimalVector& f);

}  // namespace framekit
