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

#include "framekit/operator_repr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace framekit {

namespace {

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

}  // namespace

OperatorSpec::OperatorSpec(TriplePtr triple, Matrix matrix_l) : map_(std::move(triple), std::move(matrix_l)) {
  const Matrix& l = map_.matrix();
  const DiscreteGelfandTriple& t = map_.triple();
  const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
  symmetric_ = symmetry_residual(l) <= 1e-12 * scale;

  // ||O u||_{H'}^2 = u^T L^T H^{-1} L u against ||u||_H^2.
  const Matrix hinv_l = t.inner_h_factor().solve(l);
  const PencilSpectrum norm_sp = generalized_eigs(SymMatrix::symmetrize(l.transpose() * hinv_l), t.inner_h());
  c_s_ = std::sqrt(std::max(0.0, norm_sp.max()));
  const double smin = std::sqrt(std::max(0.0, norm_sp.min()));
  inv_norm_ = smin > c_s_ * 1e-13 ? 1.0 / smin : std::numeric_limits<double>::infinity();

  const PencilSpectrum coer = generalized_eigs(SymMatrix::symmetrize(l), t.inner_h());
  c_e_ = coer.min();
  elliptic_ = c_e_ > 0.0;
}

OperatorSpec poisson_operator(const TriplePtr& triple) {
  if (!triple->is_mesh() || triple->q() != 1.0) {
    raise(ErrorCode::DomainError, "poisson_operator: triple must be a hat triple with q = 1");
  }
  return OperatorSpec(triple, triple->stiffness().dense());
}

LinearMap<DualVector, PrimalVector> inverse(const OperatorSpec& op) {
  if (!std::isfinite(op.inverse_norm())) {
    raise(ErrorCode::SingularOperator, "inverse: operator matrix is singular");
  }
  Eigen::FullPivLU<Matrix> lu(op.matrix());
  if (!lu.isInvertible()) raise(ErrorCode::SingularOperator, "inverse: operator matrix is singular");
  return LinearMap<DualVector, PrimalVector>(op.triple_ptr(), lu.inverse());
}

double composition_check(const FrameSpec& frame, const FrameSpec& xi, const OperatorSpec& o,
                         const LinearMap<PrimalVector, PrimalVector>& p) {
  require_dims(frame.dim() == xi.dim() && o.matrix().rows() == frame.dim() && p.matrix().rows() == frame.dim(),
               "composition_check");
  const Matrix lhs = matrix_representation(frame, compose(o.map(), p), frame);
  const DualFrameSpec xi_dual = dual_frame(xi);
  const Matrix rhs = matrix_representation(frame, o.map(), xi) * matrix_representation(xi_dual, p, frame);
  return rel((lhs - rhs).norm(), lhs.norm());
}

GramIdentityReport gram_identity_check(const FrameSpec& frame, const OperatorSpec& op) {
  const auto op_inv = inverse(op);
  const DualFrameSpec dual = dual_frame(frame);
  const Matrix m = matrix_representation(frame, op, frame);
  const Matrix m_dual_inv = matrix_representation(dual, op_inv, dual);
  const Matrix g = cross_gramian(dual, frame);
  GramIdentityReport r;
  const double gn = g.norm();
  r.forward = rel((m_dual_inv * m - g).norm(), gn);
  r.reversed = rel((m * m_dual_inv - g).norm(), gn);

  const Matrix ker_d = null_space(frame.elements());
  r.kernel_dim = ker_d.cols();
  r.kernel_repr = max_principal_angle_sine(null_space(m), ker_d);
  r.kernel_dual_repr = max_principal_angle_sine(null_space(m_dual_inv), ker_d);
  return r;
}

double pseudo_inverse_identity_check(const FrameSpec& frame, const OperatorSpec& op) {
  const auto op_inv = inverse(op);
  const DualFrameSpec dual = dual_frame(frame);
  const Matrix m = matrix_representation(frame, op, frame);
  const Matrix m_dual_inv = matrix_representation(dual, op_inv, dual);
  const Matrix g = cross_gramian(frame, dual);
  const Matrix pinv = pseudo_inverse(m, 1e-10);
  return rel((g * (pinv - m_dual_inv) * g).norm(), m_dual_inv.norm());
}

double operator_reconstruction_check(const FrameSpec& frame, const OperatorSpec& op) {
  const DualFrameSpec dual = dual_frame(frame);
  const Matrix m = matrix_representation(frame, op, frame);
  const LinearMap<PrimalVector, DualVector> rebuilt = operator_from_matrix(dual, m, dual);
  return rel((rebuilt.matrix() - op.matrix()).norm(), op.matrix().norm());
}

RepresentationBounds representation_bounds(const FrameSpec& frame, const OperatorSpec& op) {
  RepresentationBounds r;
  const Matrix m = matrix_representation(frame, op, frame);
  const FrameBounds fb = frame_bounds(frame);
  Eigen::BDCSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  r.norm = sv(0);
  r.upper_bound = fb.upper * op.continuity();
  // rank of M equals rank of D_Psi, i.e. N
  r.min_nonzero_sv = sv(frame.dim() - 1);
  r.lower_bound = fb.lower / op.inverse_norm();
  r.symmetry = symmetry_residual(m);
  const PencilSpectrum sp = symmetric_eigs(SymMatrix::symmetrize(m));
  r.min_eigenvalue = sp.min();
  return r;
}

GalerkinSolution galerkin_solve(const FrameSpec& frame, const OperatorSpec& op, const DualVector& b, double tol,
                                int maxit) {
  if (!op.symmetric() || !op.elliptic()) {
    raise(ErrorCode::DomainError, "galerkin_solve: operator must be symmetric and elliptic");
  }
  if (!frame.spans()) raise(ErrorCode::NotAFrame, "galerkin_solve: collection does not span H");
  require_dims(b.size() == frame.dim(), "galerkin_solve");
  const Matrix m = matrix_representation(frame, op, frame);
  const Vector rhs = analysis(frame, b);
  if (maxit <= 0) maxit = static_cast<int>(10 * frame.size());
  const CgResult cg = cg_solve([&m](const Vector& x) -> Vector { return m * x; }, rhs, tol, maxit);
  GalerkinSolution s;
  s.coefficients = cg.x;
  s.solution = synthesis(frame, cg.x);
  s.iterations = cg.iterations;
  s.residual = cg.residual;
  return s;
}

DualVector manufactured_sine_load(const DiscreteGelfandTriple& triple) {
  if (!triple.is_mesh()) raise(ErrorCode::DomainError, "manufactured_sine_load: needs a hat triple");
  const double pi = std::numbers::pi;
  const double h = triple.h();
  const double w = 2.0 * (1.0 - std::cos(pi * h)) / h;
  const Vector x = triple.nodes();
  return DualVector(w * (pi * x.array()).sin().matrix());
}

PoissonStudy solve_poisson_manufactured(int finest_level, double tol) {
  const MultiscaleHierarchy hy = MultiscaleHierarchy::build(finest_level);
  const TriplePtr t = DiscreteGelfandTriple::build(hy.j_fine(), 1.0);
  const FrameSpec frame = bpx_frame(hy, t);
  const OperatorSpec op = poisson_operator(t);
  const DualVector b = manufactured_sine_load(*t);

  const GalerkinSolution sol = galerkin_solve(frame, op, b, tol);
  const PrimalVector direct(solve_spd(t->stiffness(), b.action()));

  PoissonStudy s;
  s.finest_level = finest_level;
  s.n = frame.dim();
  s.k = frame.size();
  s.iterations = sol.iterations;
  s.residual = sol.residual;
  const PrimalVector diff(sol.solution.coeffs() - direct.coeffs());
  s.h1_vs_direct = rel(primal_norm(*t, diff), primal_norm(*t, direct));

  // |u - u_h|^2 = |u|^2 - 2 l(u_h) + a(u_h, u_h), |u|^2 = pi^2 / 2
  const double pi = std::numbers::pi;
  const double exact2 = pi * pi / 2.0;
  const Vector& uh = sol.solution.coeffs();
  const double err2 = exact2 - 2.0 * b.action().dot(uh) + uh.dot(t->stiffness() * uh);
  s.h1_vs_exact = std::sqrt(std::max(0.0, err2) / exact2);

  const Vector min_norm = min_norm_coefficients(frame, direct);
  s.coeff_vs_min_norm = rel((sol.coefficients - min_norm).norm(), min_norm.norm());

  const Vector orth = analysis(frame, op(diff));
  s.galerkin_orthogonality = rel(orth.cwiseAbs().maxCoeff(), b.action().norm());
  return s;
}

ConditioningRow conditioning_row(int finest_level, double q, double tol, std::uint64_t seed) {
  const MultiscaleHierarchy hy = MultiscaleHierarchy::build(finest_level);
  const TriplePtr t = DiscreteGelfandTriple::build(hy.j_fine(), q);
  const FrameSpec frame = bpx_frame(hy, t);
  const FrameBounds fb = frame_bounds(frame);

  ConditioningRow row;
  row.finest_level = finest_level;
  row.n = frame.dim();
  row.k = frame.size();
  row.lower = fb.lower;
  row.upper = fb.upper;
  row.ratio = fb.ratio;

  const SymMatrix& stiff = t->stiffness();
  const PencilSpectrum single = symmetric_eigs(stiff);
  row.kappa_single = single.max() / single.min();

  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(finest_level));
  const DualVector b(random_vector(rng, frame.dim()));
  const int maxit = static_cast<int>(10 * frame.size());
  row.cg_single =
      cg_solve([&stiff](const Vector& x) -> Vector { return stiff * x; }, b.action(), tol, maxit).iterations;

  if (q == 1.0) {
    const OperatorSpec op = poisson_operator(t);
    const Matrix m = matrix_representation(frame, op, frame);
    const PencilSpectrum sp = symmetric_eigs(SymMatrix::symmetrize(m));
    const auto first_nonzero = static_cast<std::size_t>(frame.size() - frame.dim());
    row.kappa_bpx = sp.max() / sp.eigenvalues[first_nonzero];
    row.cg_bpx = galerkin_solve(frame, op, b, tol).iterations;
  }
  return row;
}

std::vector<ConditioningRow> conditioning_study(double q, int j_lo, int j_hi, double tol, std::uint64_t seed) {
  std::vector<ConditioningRow> rows;
  for (int j = j_lo; j <= j_hi; ++j) rows.push_back(conditioning_row(j, q, tol, seed));
  return rows;
}

}  // namespace framekit
