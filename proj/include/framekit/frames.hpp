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

// Frame calculus across the H / H' divide.
//
// A FrameSpec is a finite collection psi_k in H; its analysis operator tests
// functionals g in H' (c_k = <g, psi_k>), its synthesis lands in H and the
// frame operator S = D C maps H' -> H. The canonical dual collection
// psi~_k = S^{-1} psi_k lives in H' and is a DualFrameSpec, for which every
// role is mirrored. Both are instances of Collection<Element>; the side an
// operation lives on is carried by the element type.

#pragma once

#include <optional>
#include <random>
#include <type_traits>
#include <vector>

#include "framekit/spaces.hpp"

namespace framekit {

template <class Element>
struct OppositeSide;
template <>
struct OppositeSide<PrimalVector> {
  using type = DualVector;
};
template <>
struct OppositeSide<DualVector> {
  using type = PrimalVector;
};
template <class Element>
using Opposite = typename OppositeSide<Element>::type;

/// Per-column metadata: multiscale level, position in the level, weight.
struct ElementLabel {
  int level = 0;
  int position = 0;
  double weight = 1.0;
};

template <class Element>
class Collection {
 public:
  using element_type = Element;
  using tested_type = Opposite<Element>;

  /// elements is N x K; column k holds psi_k in its side's representation.
  Collection(TriplePtr triple, Matrix elements, std::vector<ElementLabel> labels = {});

  const DiscreteGelfandTriple& triple() const noexcept { return *triple_; }
  const TriplePtr& triple_ptr() const noexcept { return triple_; }
  const Matrix& elements() const noexcept { return elements_; }
  const std::vector<ElementLabel>& labels() const noexcept { return labels_; }

  Eigen::Index dim() const noexcept { return elements_.rows(); }
  Eigen::Index size() const noexcept { return elements_.cols(); }
  Element element(Eigen::Index k) const { return Element(elements_.col(k)); }

  int rank() const noexcept { return rank_; }
  /// rank(elements) == N, i.e. the lower frame bound is positive.
  bool spans() const noexcept { return rank_ == dim(); }

 private:
  TriplePtr triple_;
  Matrix elements_;
  std::vector<ElementLabel> labels_;
  int rank_ = 0;
};

using FrameSpec = Collection<PrimalVector>;
using DualFrameSpec = Collection<DualVector>;

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  double ratio = 1.0;
  PencilSpectrum spectrum;

  bool tight(double rel_tol = 1e-12) const { return ratio - 1.0 <= rel_tol; }
};

/// Raw storage of a Primal/DualVector (coefficients or action).
inline const Vector& raw(const PrimalVector& v) { return v.coeffs(); }
inline const Vector& raw(const DualVector& v) { return v.action(); }

/// Norm of an element of the space the collection is tested on.
double tested_norm(const DiscreteGelfandTriple& t, const PrimalVector& f);
double tested_norm(const DiscreteGelfandTriple& t, const DualVector& g);

/// c_k = <g, psi_k>.
template <class E>
Vector analysis(const Collection<E>& frame, const Opposite<E>& g);

/// sum_k c_k psi_k.
template <class E>
E synthesis(const Collection<E>& frame, const Vector& c);

template <class E>
E frame_operator_apply(const Collection<E>& frame, const Opposite<E>& g);

/// S = elements * elements^T in reference coordinates.
template <class E>
SymMatrix frame_operator_matrix(const Collection<E>& frame);

/// Optimal bounds: extreme eigenvalues of ||C g||^2 against ||g||^2 on the
/// tested space. Throws NotAFrame for rank-deficient collections (those are
/// upper semi-frames only).
template <class E>
FrameBounds frame_bounds(const Collection<E>& frame);

/// Canonical dual collection S^{-1} psi_k, on the opposite side.
template <class E>
Collection<Opposite<E>> dual_frame(const Collection<E>& frame);

/// D_Psi C_Psi~ f.
PrimalVector reconstruct_primal(const FrameSpec& frame, const DualFrameSpec& dual, const PrimalVector& f);
/// D_Psi~ C_Psi g.
DualVector reconstruct_dual(const FrameSpec& frame, const DualFrameSpec& dual, const DualVector& g);

/// G[k, l] = <b_l, a_k>. Opposite sides use the duality pairing, two primal
/// collections the H inner product. Two dual collections have no pairing and
/// raise IncompatiblePairing.
template <class A, class B>
Matrix cross_gramian(const Collection<A>& a, const Collection<B>& b);

/// C_Psi~ f = Psi^T S^{-1} f: the coefficients of minimal l^2 norm among all
/// d with D_Psi d = f.
Vector min_norm_coefficients(const FrameSpec& frame, const PrimalVector& f);

struct RieszCheck {
  bool is_riesz = false;
  /// Extreme eigenvalues of the H-Gramian Psi^T H Psi when is_riesz.
  std::optional<double> lower;
  std::optional<double> upper;
};

/// A frame is a Riesz basis iff D_Psi is injective, i.e. rank == K.
RieszCheck riesz_check(const FrameSpec& frame);

/// <f, S g>: an inner product on H' equivalent to the dual norm.
double equivalent_inner_product(const FrameSpec& frame, const DualVector& f, const DualVector& g);

/// Residual report for the canonical-dual statements on one frame.
struct DualTheoremReport {
  FrameBounds primal;
  FrameBounds dual;
  double dual_lower_rel_error = 0.0;   // |A~ B - 1|
  double dual_upper_rel_error = 0.0;   // |B~ A - 1|
  double inverse_rel_residual = 0.0;   // ||S~ S - I|| / ||I||
  double recon_primal_rel_error = 0.0; // max over samples
  double recon_dual_rel_error = 0.0;
  double dual_of_dual_rel_error = 0.0; // ||dual(dual(Psi)) - Psi|| / ||Psi||
  double range_angle_sine = 0.0;       // ran C_Psi vs ran C_Psi~
};

DualTheoremReport verify_dual_theorem(const FrameSpec& frame, std::mt19937_64& rng, int samples);

struct ProjectorReport {
  double idempotence = 0.0;     // ||G^2 - G||
  double symmetry = 0.0;        // max |G - G^T|
  double svd_projector = 0.0;   // ||G - P_ran(Psi^T)||
  double swapped = 0.0;         // ||G_{Psi,Psi~} - G_{Psi~,Psi}||
  double split_synthesis = 0.0; // max ||D_Psi (I-G) c|| / ||c||
  double split_range = 0.0;     // max dist(Gc, ran C_Psi) / ||c||
};

ProjectorReport verify_projector(const FrameSpec& frame, std::mt19937_64& rng, int samples);

struct MinNormReport {
  double svd_rel_error = 0.0;  // max over samples of ||C~f - pinv(Psi) f|| / ||C~f||
  int perturbations = 0;
  int violations = 0;          // count of ||d|| < ||C~f||
  double min_gap = 0.0;        // min over samples of ||d|| - ||C~f||
};

MinNormReport verify_min_norm(const FrameSpec& frame, std::mt19937_64& rng, int samples, int perturbations);

/// i.i.d. standard normal vector.
Vector random_vector(std::mt19937_64& rng, Eigen::Index n);

}  // namespace framekit
