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

#include "framekit/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

namespace framekit {

namespace {

void require_frame(int rank, Eigen::Index dim, const char* where) {
  if (rank < dim) {
    std::ostringstream os;
    os << where << ": collection has rank " << rank << " < " << dim
       << "; only an upper semi-frame (lower bound 0)";
    raise(ErrorCode::NotAFrame, os.str());
  }
}

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

}  // namespace

template <class E>
Collection<E>::Collection(TriplePtr triple, Matrix elements, std::vector<ElementLabel> labels)
    : triple_(std::move(triple)), elements_(std::move(elements)), labels_(std::move(labels)) {
  if (!triple_) raise(ErrorCode::InvalidArgument, "Collection: null triple");
  require_dims(elements_.rows() == triple_->dim(), "Collection");
  if (elements_.cols() < 1) raise(ErrorCode::InvalidArgument, "Collection: needs at least one element");
  if (!elements_.allFinite()) raise(ErrorCode::InvalidArgument, "Collection: non-finite element");
  if (labels_.empty()) {
    labels_.resize(static_cast<std::size_t>(elements_.cols()));
    for (std::size_t k = 0; k < labels_.size(); ++k) labels_[k].position = static_cast<int>(k);
  }
  require_dims(static_cast<Eigen::Index>(labels_.size()) == elements_.cols(), "Collection labels");
  rank_ = numerical_rank(elements_, 1e-10);
}

template class Collection<PrimalVector>;
template class Collection<DualVector>;

double tested_norm(const DiscreteGelfandTriple& t, const PrimalVector& f) { return primal_norm(t, f); }
double tested_norm(const DiscreteGelfandTriple& t, const DualVector& g) { return dual_norm(t, g); }

template <class E>
Vector analysis(const Collection<E>& frame, const Opposite<E>& g) {
  require_dims(g.size() == frame.dim(), "analysis");
  return frame.elements().transpose() * raw(g);
}

template <class E>
E synthesis(const Collection<E>& frame, const Vector& c) {
  require_dims(c.size() == frame.size(), "synthesis");
  return E(frame.elements() * c);
}

template <class E>
E frame_operator_apply(const Collection<E>& frame, const Opposite<E>& g) {
  return synthesis(frame, analysis(frame, g));
}

template <class E>
SymMatrix frame_operator_matrix(const Collection<E>& frame) {
  return SymMatrix::symmetrize(frame.elements() * frame.elements().transpose());
}

template <class E>
FrameBounds frame_bounds(const Collection<E>& frame) {
  require_frame(frame.rank(), frame.dim(), "frame_bounds");
  const SymMatrix s = frame_operator_matrix(frame);
  const SymMatrix& h = frame.triple().inner_h();
  FrameBounds b;
  if constexpr (std::is_same_v<E, PrimalVector>) {
    // ||C g||^2 = g^T S g against ||g||^2 = g^T H^{-1} g; substitute g = H x.
    b.spectrum = generalized_eigs(SymMatrix::symmetrize(h.dense() * s.dense() * h.dense()), h);
  } else {
    // tested on H: f^T S f against f^T H f
    b.spectrum = generalized_eigs(s, h);
  }
  b.lower = b.spectrum.min();
  b.upper = b.spectrum.max();
  if (!(b.lower > 0.0)) raise(ErrorCode::NotAFrame, "frame_bounds: non-positive lower bound");
  b.ratio = b.upper / b.lower;
  return b;
}

template <class E>
Collection<Opposite<E>> dual_frame(const Collection<E>& frame) {
  require_frame(frame.rank(), frame.dim(), "dual_frame");
  const SpdFactor s(frame_operator_matrix(frame));
  return Collection<Opposite<E>>(frame.triple_ptr(), s.solve(frame.elements()), frame.labels());
}

template Vector analysis(const FrameSpec&, const DualVector&);
template Vector analysis(const DualFrameSpec&, const PrimalVector&);
template PrimalVector synthesis(const FrameSpec&, const Vector&);
template DualVector synthesis(const DualFrameSpec&, const Vector&);
template PrimalVector frame_operator_apply(const FrameSpec&, const DualVector&);
template DualVector frame_operator_apply(const DualFrameSpec&, const PrimalVector&);
template SymMatrix frame_operator_matrix(const FrameSpec&);
template SymMatrix frame_operator_matrix(const DualFrameSpec&);
template FrameBounds frame_bounds(const FrameSpec&);
template FrameBounds frame_bounds(const DualFrameSpec&);
template DualFrameSpec dual_frame(const FrameSpec&);
template FrameSpec dual_frame(const DualFrameSpec&);

PrimalVector reconstruct_primal(const FrameSpec& frame, const DualFrameSpec& dual, const PrimalVector& f) {
  require_dims(frame.size() == dual.size() && frame.dim() == dual.dim(), "reconstruct_primal");
  return synthesis(frame, analysis(dual, f));
}

DualVector reconstruct_dual(const FrameSpec& frame, const DualFrameSpec& dual, const DualVector& g) {
  require_dims(frame.size() == dual.size() && frame.dim() == dual.dim(), "reconstruct_dual");
  return synthesis(dual, analysis(frame, g));
}

template <class A, class B>
Matrix cross_gramian(const Collection<A>& a, const Collection<B>& b) {
  require_dims(a.dim() == b.dim(), "cross_gramian");
  if (a.triple_ptr() != b.triple_ptr() &&
      (a.triple().inner_h().dense() - b.triple().inner_h().dense()).cwiseAbs().maxCoeff() != 0.0) {
    raise(ErrorCode::IncompatiblePairing, "cross_gramian: collections live on different triples");
  }
  if constexpr (!std::is_same_v<A, B>) {
    return a.elements().transpose() * b.elements();
  } else if constexpr (std::is_same_v<A, PrimalVector>) {
    return a.elements().transpose() * (a.triple().inner_h().dense() * b.elements());
  } else {
    raise(ErrorCode::IncompatiblePairing, "cross_gramian: two dual-side collections have no pairing");
  }
}

template Matrix cross_gramian(const FrameSpec&, const DualFrameSpec&);
template Matrix cross_gramian(const DualFrameSpec&, const FrameSpec&);
template Matrix cross_gramian(const FrameSpec&, const FrameSpec&);
template Matrix cross_gramian(const DualFrameSpec&, const DualFrameSpec&);

Vector min_norm_coefficients(const FrameSpec& frame, const PrimalVector& f) {
  require_frame(frame.rank(), frame.dim(), "min_norm_coefficients");
  require_dims(f.size() == frame.dim(), "min_norm_coefficients");
  const SpdFactor s(frame_operator_matrix(frame));
  return frame.elements().transpose() * s.solve(f.coeffs());
}

RieszCheck riesz_check(const FrameSpec& frame) {
  RieszCheck out;
  out.is_riesz = frame.rank() == frame.size();
  if (out.is_riesz) {
    const Matrix& psi = frame.elements();
    const PencilSpectrum sp =
        symmetric_eigs(SymMatrix::symmetrize(psi.transpose() * frame.triple().inner_h().dense() * psi));
    out.lower = sp.min();
    out.upper = sp.max();
  }
  return out;
}

double equivalent_inner_product(const FrameSpec& frame, const DualVector& f, const DualVector& g) {
  require_frame(frame.rank(), frame.dim(), "equivalent_inner_product");
  return pairing(f, frame_operator_apply(frame, g));
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

DualTheoremReport verify_dual_theorem(const FrameSpec& frame, std::mt19937_64& rng, int samples) {
  DualTheoremReport r;
  r.primal = frame_bounds(frame);
  const DualFrameSpec dual = dual_frame(frame);
  r.dual = frame_bounds(dual);
  r.dual_lower_rel_error = std::abs(r.dual.lower * r.primal.upper - 1.0);
  r.dual_upper_rel_error = std::abs(r.dual.upper * r.primal.lower - 1.0);

  const SymMatrix s = frame_operator_matrix(frame);
  const SymMatrix s_dual = frame_operator_matrix(dual);
  const Eigen::Index n = frame.dim();
  const Matrix s_inv = SpdFactor(s).solve(Matrix(Matrix::Identity(n, n)));
  r.inverse_rel_residual = rel((s_dual.dense() - s_inv).norm(), s_inv.norm());

  const DiscreteGelfandTriple& t = frame.triple();
  for (int i = 0; i < samples; ++i) {
    const PrimalVector f(random_vector(rng, n));
    const DualVector g(random_vector(rng, n));
    const PrimalVector fr = reconstruct_primal(frame, dual, f);
    const DualVector gr = reconstruct_dual(frame, dual, g);
    const double ef = rel(primal_norm(t, PrimalVector(fr.coeffs() - f.coeffs())), primal_norm(t, f));
    const double eg = rel(dual_norm(t, DualVector(gr.action() - g.action())), dual_norm(t, g));
    r.recon_primal_rel_error = std::max(r.recon_primal_rel_error, ef);
    r.recon_dual_rel_error = std::max(r.recon_dual_rel_error, eg);
  }

  const FrameSpec back = dual_frame(dual);
  r.dual_of_dual_rel_error = rel((back.elements() - frame.elements()).norm(), frame.elements().norm());
  r.range_angle_sine = max_principal_angle_sine(range_basis(frame.elements().transpose()),
                                                range_basis(dual.elements().transpose()));
  return r;
}

ProjectorReport verify_projector(const FrameSpec& frame, std::mt19937_64& rng, int samples) {
  ProjectorReport r;
  const DualFrameSpec dual = dual_frame(frame);
  const Matrix g = cross_gramian(frame, dual);
  const Matrix g_swapped = cross_gramian(dual, frame);
  const Matrix p_svd = range_projector(frame.elements().transpose());
  r.idempotence = (g * g - g).cwiseAbs().maxCoeff();
  r.symmetry = symmetry_residual(g);
  r.svd_projector = (g - p_svd).cwiseAbs().maxCoeff();
  r.swapped = (g - g_swapped).cwiseAbs().maxCoeff();

  const Eigen::Index k = frame.size();
  const Matrix id = Matrix::Identity(k, k);
  Eigen::BDCSVD<Matrix> svd(frame.elements());
  const double psi_norm = svd.singularValues()(0);
  for (int i = 0; i < samples; ++i) {
    const Vector c = random_vector(rng, k);
    const Vector in_range = g * c;
    const Vector in_kernel = (id - g) * c;
    const double syn = synthesis(frame, in_kernel).coeffs().norm() / (psi_norm * c.norm());
    const double ran = (in_range - p_svd * in_range).norm() / c.norm();
    r.split_synthesis = std::max(r.split_synthesis, syn);
    r.split_range = std::max(r.split_range, ran);
  }
  return r;
}

MinNormReport verify_min_norm(const FrameSpec& frame, std::mt19937_64& rng, int samples, int perturbations) {
  MinNormReport r;
  r.min_gap = std::numeric_limits<double>::infinity();
  const Matrix kernel = null_space(frame.elements());
  const Eigen::Index n = frame.dim();
  for (int i = 0; i < samples; ++i) {
    const PrimalVector f(random_vector(rng, n));
    const Vector c = min_norm_coefficients(frame, f);
    const Vector oracle = min_norm_solve(frame.elements(), f.coeffs());
    r.svd_rel_error = std::max(r.svd_rel_error, rel((c - oracle).norm(), c.norm()));
    const double cn = c.norm();
    for (int p = 0; p < perturbations; ++p) {
      Vector d = c;
      if (kernel.cols() > 0) d += kernel * random_vector(rng, kernel.cols());
      const double gap = d.norm() - cn;
      ++r.perturbations;
      if (gap < -1e-12 * cn) ++r.violations;
      r.min_gap = std::min(r.min_gap, gap);
    }
  }
  if (r.perturbations == 0) r.min_gap = 0.0;
  return r;
}

}  // namespace framekit
