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

// Operators in frame coordinates and the frame-Galerkin solver.
//
// Linear maps between the two sides of the triple are typed by their domain
// and codomain, so M = C_test O D_ansatz only compiles when the ansatz
// collection lives in the domain of O and the test collection pairs with its
// codomain.

#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

#include "framekit/frames.hpp"
#include "framekit/multiscale.hpp"

namespace framekit {

/// Matrix of a linear map in reference coordinates: coefficients for H,
/// actions for H'.
template <class From, class To>
class LinearMap {
 public:
  using domain_type = From;
  using codomain_type = To;

  LinearMap(TriplePtr triple, Matrix matrix) : triple_(std::move(triple)), matrix_(std::move(matrix)) {
    require_dims(matrix_.rows() == triple_->dim() && matrix_.cols() == triple_->dim(), "LinearMap");
  }

  To operator()(const From& x) const {
    require_dims(x.size() == matrix_.cols(), "LinearMap::apply");
    return To(matrix_ * raw(x));
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  const DiscreteGelfandTriple& triple() const noexcept { return *triple_; }
  const TriplePtr& triple_ptr() const noexcept { return triple_; }

 private:
  TriplePtr triple_;
  Matrix matrix_;
};

template <class A, class B, class C>
LinearMap<A, C> compose(const LinearMap<B, C>& outer, const LinearMap<A, B>& inner) {
  require_dims(outer.matrix().cols() == inner.matrix().rows(), "compose");
  return LinearMap<A, C>(outer.triple_ptr(), outer.matrix() * inner.matrix());
}

/// O : H -> H' with entry (i, j) = <O b_j, b_i>.
class OperatorSpec {
 public:
  OperatorSpec(TriplePtr triple, Matrix matrix_l);

  const LinearMap<PrimalVector, DualVector>& map() const noexcept { return map_; }
  const Matrix& matrix() const noexcept { return map_.matrix(); }
  const DiscreteGelfandTriple& triple() const noexcept { return map_.triple(); }
  const TriplePtr& triple_ptr() const noexcept { return map_.triple_ptr(); }

  DualVector operator()(const PrimalVector& u) const { return map_(u); }

  bool symmetric() const noexcept { return symmetric_; }
  bool elliptic() const noexcept { return elliptic_; }
  /// a(u, v) <= C_S ||u|| ||v||; equals ||O||_{H -> H'}.
  double continuity() const noexcept { return c_s_; }
  /// a(u, u) >= C_E ||u||^2; non-positive if not elliptic.
  double ellipticity() const noexcept { return c_e_; }
  /// ||O^{-1}||_{H' -> H}, infinite when singular.
  double inverse_norm() const noexcept { return inv_norm_; }

 private:
  LinearMap<PrimalVector, DualVector> map_;
  bool symmetric_ = false;
  bool elliptic_ = false;
  double c_s_ = 0.0;
  double c_e_ = 0.0;
  double inv_norm_ = 0.0;
};

/// Stiffness of -u'' = f with homogeneous Dirichlet data. Needs a q = 1 triple.
OperatorSpec poisson_operator(const TriplePtr& triple);

/// O^{-1} : H' -> H. Throws SingularOperator.
LinearMap<DualVector, PrimalVector> inverse(const OperatorSpec& op);

/// M_{m,n} = <O ansatz_n, test_m>.
template <class Test, class From, class To, class Ansatz>
Matrix matrix_representation(const Collection<Test>& test, const LinearMap<From, To>& op,
                             const Collection<Ansatz>& ansatz) {
  static_assert(std::is_same_v<Ansatz, From>, "ansatz elements must lie in the domain of the operator");
  static_assert(std::is_same_v<Test, Opposite<To>>, "test elements must pair with the codomain");
  require_dims(test.dim() == op.matrix().rows() && ansatz.dim() == op.matrix().cols(),
               "matrix_representation");
  return test.elements().transpose() * op.matrix() * ansatz.elements();
}

template <class Test, class Ansatz>
Matrix matrix_representation(const Collection<Test>& test, const OperatorSpec& op, const Collection<Ansatz>& ansatz) {
  return matrix_representation(test, op.map(), ansatz);
}

/// D_syn M C_ana : the map h -> sum_k (sum_j M_kj <h, ana_j>) syn_k.
template <class Syn, class Ana>
LinearMap<Opposite<Ana>, Syn> operator_from_matrix(const Collection<Syn>& syn, const Matrix& m,
                                                   const Collection<Ana>& ana) {
  require_dims(m.rows() == syn.size() && m.cols() == ana.size() && syn.dim() == ana.dim(),
               "operator_from_matrix");
  return LinearMap<Opposite<Ana>, Syn>(syn.triple_ptr(), syn.elements() * m * ana.elements().transpose());
}

/// ||M(O∘P) - M^{(F,Xi)}(O) M^{(Xi~,F)}(P)|| / ||M(O∘P)|| (absolute when the
/// left side vanishes).
double composition_check(const FrameSpec& frame, const FrameSpec& xi, const OperatorSpec& o,
                         const LinearMap<PrimalVector, PrimalVector>& p);

struct GramIdentityReport {
  double forward = 0.0;    // ||M~(O^-1) M(O) - G_{Psi~,Psi}|| / ||G||
  double reversed = 0.0;   // ||M(O) M~(O^-1) - G|| / ||G||
  double kernel_repr = 0.0;     // sin angle ker M(O) vs ker D_Psi
  double kernel_dual_repr = 0.0; // sin angle ker M~(O^-1) vs ker D_Psi
  Eigen::Index kernel_dim = 0;
};

GramIdentityReport gram_identity_check(const FrameSpec& frame, const OperatorSpec& op);

/// ||G (pinv(M(O)) - M~(O^-1)) G|| / ||M~(O^-1)||.
double pseudo_inverse_identity_check(const FrameSpec& frame, const OperatorSpec& op);

/// || O - D_Psi~ M(O) C_Psi~ || / ||O|| with the reconstruction built by
/// operator_from_matrix.
double operator_reconstruction_check(const FrameSpec& frame, const OperatorSpec& op);

struct RepresentationBounds {
  double norm = 0.0;            // ||M||_2
  double upper_bound = 0.0;     // sqrt(B_test B_ansatz) ||O||
  double min_nonzero_sv = 0.0;  // smallest nonzero singular value of M(O), single frame
  double lower_bound = 0.0;     // A_Psi / ||O^{-1}||
  double symmetry = 0.0;        // max |M - M^T|
  double min_eigenvalue = 0.0;  // smallest eigenvalue of sym(M)
};

RepresentationBounds representation_bounds(const FrameSpec& frame, const OperatorSpec& op);

struct GalerkinSolution {
  Vector coefficients;
  PrimalVector solution;
  int iterations = 0;
  double residual = 0.0;
};

/// Assemble M = Psi^T L Psi and C_Psi b, solve by zero-start CG and
/// synthesize u = D_Psi u_coeffs.
GalerkinSolution galerkin_solve(const FrameSpec& frame, const OperatorSpec& op, const DualVector& b, double tol,
                                int maxit = 0);

/// Load vector of f = pi^2 sin(pi x) on a hat triple, exact integrals.
DualVector manufactured_sine_load(const DiscreteGelfandTriple& triple);

struct PoissonStudy {
  int finest_level = 0;
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  int iterations = 0;
  double residual = 0.0;
  double h1_vs_direct = 0.0;  // ||u - u_direct||_{H1} / ||u_direct||_{H1}
  double h1_vs_exact = 0.0;   // relative energy error against sin(pi x)
  double coeff_vs_min_norm = 0.0;
  double galerkin_orthogonality = 0.0;  // max_k |a(u - u_direct, psi_k)| / ||b||
};

/// Frame-Galerkin solve of -u'' = pi^2 sin(pi x) with the H^1 BPX frame.
PoissonStudy solve_poisson_manufactured(int finest_level, double tol);

struct ConditioningRow {
  int finest_level = 0;
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  double lower = 0.0;
  double upper = 0.0;
  double ratio = 0.0;
  double kappa_bpx = 0.0;     // effective condition number of Psi^T L Psi
  double kappa_single = 0.0;  // condition number of the fine stiffness matrix
  int cg_bpx = 0;
  int cg_single = 0;
};

/// One row of the BPX conditioning study at finest level J (q = 1); the CG
/// right-hand side is a seeded random functional.
ConditioningRow conditioning_row(int finest_level, double q, double tol, std::uint64_t seed);

std::vector<ConditioningRow> conditioning_study(double q, int j_lo, int j_hi, double tol, std::uint64_t seed);

}  // namespace framekit
