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

#include "framekit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace framekit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::IncompatiblePairing: return "IncompatiblePairing";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

namespace {

std::string no_convergence_message(int iterations, double residual) {
  std::ostringstream os;
  os << "cg_solve: no convergence after " << iterations
     << " iterations (relative residual " << residual << ")";
  return os.str();
}

}  // namespace

NoConvergenceError::NoConvergenceError(int iterations, double residual)
    : Error(ErrorCode::NoConvergence, no_convergence_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix SymMatrix::from_upper(const Matrix& m) {
  require_dims(m.rows() == m.cols(), "SymMatrix::from_upper");
  SymMatrix s;
  s.a_ = m.selfadjointView<Eigen::Upper>();
  return s;
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  require_dims(m.rows() == m.cols(), "SymMatrix::symmetrize");
  return from_upper(0.5 * (m + m.transpose()));
}

SymMatrix SymMatrix::identity(Eigen::Index n) {
  SymMatrix s;
  s.a_ = Matrix::Identity(n, n);
  return s;
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix s;
  s.a_ = d.asDiagonal();
  return s;
}

// ---------------------------------------------------------------------------
// Factorizations

SpdFactor::SpdFactor(const SymMatrix& a) : llt_(a.dense()), n_(a.n()) {
  if (a.n() == 0) raise(ErrorCode::DimensionMismatch, "SpdFactor: empty matrix");
  // Eigen reports failure on a non-positive pivot.
  if (llt_.info() != Eigen::Success) {
    raise(ErrorCode::NotPositiveDefinite, "Cholesky pivot <= 0: matrix is not positive definite");
  }
}

Vector SpdFactor::solve(const Vector& b) const {
  require_dims(b.size() == n_, "SpdFactor::solve");
  return llt_.solve(b);
}

Matrix SpdFactor::solve(const Matrix& b) const {
  require_dims(b.rows() == n_, "SpdFactor::solve");
  return llt_.solve(b);
}

Matrix SpdFactor::lower() const { return llt_.matrixL(); }

Vector solve_spd(const SymMatrix& a, const Vector& b) {
  require_dims(a.n() == b.size(), "solve_spd");
  SpdFactor f(a);
  Vector x = f.solve(b);
  // One step of iterative refinement keeps the residual at the 1e-12 level
  // for moderately conditioned inputs.
  Vector r = b - a * x;
  x += f.solve(r);
  return x;
}

namespace {

PencilSpectrum spectrum_from(const Eigen::SelfAdjointEigenSolver<Matrix>& es, const Matrix& back) {
  if (es.info() != Eigen::Success) {
    raise(ErrorCode::InvalidArgument, "symmetric eigensolver failed");
  }
  PencilSpectrum s;
  const Vector& ev = es.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  s.eigenvectors = back;
  const double top = ev.size() ? ev(ev.size() - 1) : 0.0;
  s.rank = 0;
  if (top > 0.0) {
    for (double l : s.eigenvalues) {
      if (l > top * 1e-10) ++s.rank;
    }
  }
  return s;
}

}  // namespace

PencilSpectrum generalized_eigs(const SymMatrix& a, const SymMatrix& b) {
  require_dims(a.n() == b.n(), "generalized_eigs");
  SpdFactor fb(b);
  const Matrix l = fb.lower();
  // C = L^{-1} A L^{-T}
  const auto tri = l.triangularView<Eigen::Lower>();
  Matrix c = tri.solve(a.dense());
  c = tri.solve(c.transpose()).transpose();
  c = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  // x = L^{-T} y is B-orthonormal.
  Matrix back = l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  return spectrum_from(es, back);
}

PencilSpectrum symmetric_eigs(const SymMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.dense());
  return spectrum_from(es, es.eigenvectors());
}

// ---------------------------------------------------------------------------
// Conjugate gradients

CgResult cg_solve(const LinearApply& apply, const Vector& b, double tol, int maxit) {
  CgResult out;
  out.x = Vector::Zero(b.size());
  const double bnorm = b.norm();
  if (bnorm == 0.0) return out;

  Vector r = b;
  Vector p = r;
  double rr = r.squaredNorm();
  const double target = tol * bnorm;
  for (int it = 1; it <= maxit; ++it) {
    Vector ap = apply(p);
    require_dims(ap.size() == b.size(), "cg_solve");
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) {
      // p is in the kernel of a PSD map: only possible if b left the range.
      raise(ErrorCode::Inconsistent, "cg_solve: search direction in the kernel; system not consistent");
    }
    const double alpha = rr / pap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rr_new = r.squaredNorm();
    out.iterations = it;
    if (std::sqrt(rr_new) <= target) {
      // Confirm against the true residual; recursion drift can fake convergence.
      const double true_res = (b - apply(out.x)).norm();
      if (true_res <= target) {
        out.residual = true_res / bnorm;
        return out;
      }
      r = b - apply(out.x);
      p = r;
      rr = r.squaredNorm();
      continue;
    }
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  const double res = (b - apply(out.x)).norm() / bnorm;
  throw NoConvergenceError(out.iterations, res);
}

// ---------------------------------------------------------------------------
// SVD based kernels

namespace {

Eigen::BDCSVD<Matrix> full_svd(const Matrix& a) {
  return Eigen::BDCSVD<Matrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from(const Vector& sv, double rel_cutoff) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = sv(0) * rel_cutoff;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++r;
  }
  return r;
}

}  // namespace

Matrix pseudo_inverse(const Matrix& a, double rel_cutoff) {
  auto svd = full_svd(a);
  const Vector& sv = svd.singularValues();
  const int r = rank_from(sv, rel_cutoff);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  for (int i = 0; i < r; ++i) {
    out += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).transpose();
  }
  return out;
}

Vector min_norm_solve(const Matrix& a, const Vector& b) {
  require_dims(a.rows() == b.size(), "min_norm_solve");
  Vector x = pseudo_inverse(a, 1e-12) * b;
  const double bnorm = b.norm();
  const double res = (a * x - b).norm();
  if (res > 1e-8 * bnorm) {
    std::ostringstream os;
    os << "min_norm_solve: right-hand side not in range (residual " << res << ")";
    raise(ErrorCode::Inconsistent, os.str());
  }
  return x;
}

int numerical_rank(const Matrix& a, double rel_cutoff) {
  Eigen::BDCSVD<Matrix> svd(a);
  return rank_from(svd.singularValues(), rel_cutoff);
}

Matrix range_basis(const Matrix& a, double rel_cutoff) {
  auto svd = full_svd(a);
  const int r = rank_from(svd.singularValues(), rel_cutoff);
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& a, double rel_cutoff) {
  auto svd = full_svd(a);
  const int r = rank_from(svd.singularValues(), rel_cutoff);
  return svd.matrixV().rightCols(a.cols() - r);
}

Matrix range_projector(const Matrix& a, double rel_cutoff) {
  const Matrix u = range_basis(a, rel_cutoff);
  return u * u.transpose();
}

double max_principal_angle_sine(const Matrix& basis_a, const Matrix& basis_b) {
  if (basis_a.rows() != basis_b.rows() || basis_a.cols() != basis_b.cols()) return 1.0;
  if (basis_a.cols() == 0) return 0.0;
  // sin of the largest angle is ||(I - A A^T) B||_2; avoids the sqrt(1 - c^2)
  // cancellation near zero
  const Matrix residual = basis_b - basis_a * (basis_a.transpose() * basis_b);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return std::min(1.0, svd.singularValues()(0));
}

double symmetry_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
  }
}

void write_matrix_market(const std::string& path, const Matrix& m) {
  std::ofstream f(path);
  if (!f) raise(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  write_matrix_market(f, m);
}

}  // namespace framekit
