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

// Dense linear-algebra kernels shared by every other module. Problem sizes are
// desk scale (a few hundred unknowns), so everything is dense.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framekit/error.hpp"

namespace framekit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense symmetric matrix. Only the upper triangle of the source is read, so
/// the stored matrix is exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Eigen::Index n) : a_(Matrix::Zero(n, n)) {}

  static SymMatrix from_upper(const Matrix& m);
  /// Rounds (m + m^T)/2 into exact symmetry; for products that are symmetric
  /// only up to rounding.
  static SymMatrix symmetrize(const Matrix& m);
  static SymMatrix identity(Eigen::Index n);
  static SymMatrix diagonal(const Vector& d);

  Eigen::Index n() const noexcept { return a_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }
  const Matrix& dense() const noexcept { return a_; }

  /// Sets a_ij and a_ji together.
  void set(Eigen::Index i, Eigen::Index j, double v) {
    a_(i, j) = v;
    a_(j, i) = v;
  }

  Vector operator*(const Vector& x) const { return a_ * x; }

 private:
  Matrix a_;
};

struct PencilSpectrum {
  std::vector<double> eigenvalues;  // ascending
  int rank = 0;                     // count of eigenvalues > lambda_max * 1e-10
  Matrix eigenvectors;              // B-orthonormal, column i <-> eigenvalue i

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

/// Cholesky factorization kept around for repeated solves.
class SpdFactor {
 public:
  explicit SpdFactor(const SymMatrix& a);

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  Eigen::Index n() const noexcept { return n_; }
  /// Lower-triangular L with A = L L^T.
  Matrix lower() const;

 private:
  Eigen::LLT<Matrix> llt_;
  Eigen::Index n_ = 0;
};

Vector solve_spd(const SymMatrix& a, const Vector& b);

/// Eigenvalues of A x = lambda B x, via Cholesky of B and the symmetric
/// eigendecomposition of L^{-1} A L^{-T}.
PencilSpectrum generalized_eigs(const SymMatrix& a, const SymMatrix& b);

/// Eigenvalues of a symmetric matrix (B = I).
PencilSpectrum symmetric_eigs(const SymMatrix& a);

struct CgResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0;  // final ||apply(x) - b|| / ||b||
};

using LinearApply = std::function<Vector(const Vector&)>;

/// Plain conjugate gradients from the zero vector. For a consistent singular
/// PSD system the iterates stay in the range of the map.
CgResult cg_solve(const LinearApply& apply, const Vector& b, double tol, int maxit);

/// Minimal-norm solution of A x = b by SVD with cutoff sigma_max * 1e-12.
Vector min_norm_solve(const Matrix& a, const Vector& b);

/// Moore-Penrose pseudo-inverse with the same cutoff as min_norm_solve.
Matrix pseudo_inverse(const Matrix& a, double rel_cutoff = 1e-12);

/// Numerical rank via SVD, singular values above sigma_max * rel_cutoff.
int numerical_rank(const Matrix& a, double rel_cutoff = 1e-10);

/// Orthonormal basis of range(a) (columns), from the SVD.
Matrix range_basis(const Matrix& a, double rel_cutoff = 1e-10);

/// Orthonormal basis of ker(a) (columns), from the SVD.
Matrix null_space(const Matrix& a, double rel_cutoff = 1e-10);

/// Orthogonal projector onto range(a).
Matrix range_projector(const Matrix& a, double rel_cutoff = 1e-10);

/// Sine of the largest principal angle between two subspaces given by
/// orthonormal bases. Returns 1 when dimensions differ.
double max_principal_angle_sine(const Matrix& basis_a, const Matrix& basis_b);

double symmetry_residual(const Matrix& m);

/// Writes a dense matrix in Matrix Market "array real general" format.
void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market(const std::string& path, const Matrix& m);

}  // namespace framekit
