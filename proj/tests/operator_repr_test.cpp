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

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "framekit/fixtures.hpp"
#include "framekit/operator_repr.hpp"
#include "support.hpp"

namespace framekit {
namespace {

using testing::code_of;
using testing::random_matrix;
using testing::random_spd;
using testing::random_vec;
using testing::rel_err;

FrameSpec reference_basis(const TriplePtr& t) { return FrameSpec(t, Matrix::Identity(t->dim(), t->dim())); }

FrameSpec with_duplicate(const FrameSpec& f, Eigen::Index col) {
  Matrix e(f.dim(), f.size() + 1);
  e << f.elements(), f.elements().col(col);
  return FrameSpec(f.triple_ptr(), e);
}

FrameSpec bpx(int big_j) {
  const MultiscaleHierarchy hy = MultiscaleHierarchy::build(big_j);
  return bpx_frame(hy, DiscreteGelfandTriple::build(hy.j_fine(), 1.0));
}

OperatorSpec poisson_for(const FrameSpec& f) { return poisson_operator(f.triple_ptr()); }

TEST(Poisson, SingleHat) {
  const OperatorSpec op = poisson_operator(DiscreteGelfandTriple::build(1, 1.0));
  ASSERT_EQ(op.matrix().rows(), 1);
  EXPECT_DOUBLE_EQ(op.matrix()(0, 0), 4.0);
  EXPECT_TRUE(op.symmetric());
  EXPECT_TRUE(op.elliptic());
}

TEST(Poisson, IsometryInEnergySpace) {
  for (int jf : {1, 3, 6}) {
    const OperatorSpec op = poisson_operator(DiscreteGelfandTriple::build(jf, 1.0));
    EXPECT_NEAR(op.continuity(), 1.0, 1e-10) << jf;
    EXPECT_NEAR(op.ellipticity(), 1.0, 1e-10) << jf;
    EXPECT_NEAR(op.inverse_norm(), 1.0, 1e-10) << jf;
  }
}

TEST(Poisson, NeedsEnergyTriple) {
  EXPECT_EQ(code_of([] { poisson_operator(DiscreteGelfandTriple::build(3, 0.5)); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { poisson_operator(fixtures::unit_triple()); }), ErrorCode::DomainError);
}

TEST(Poisson, SineLoadMatchesQuadrature) {
  const TriplePtr t = DiscreteGelfandTriple::build(4, 1.0);
  const Vector b = manufactured_sine_load(*t).action();
  const double h = t->h();
  const double pi = std::numbers::pi;
  const int n = 20000;  // composite midpoint per element
  for (Eigen::Index i = 0; i < t->dim(); ++i) {
    const double c = (i + 1) * h;
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = c - h + (k + 0.5) * (2.0 * h / n);
      s += pi * pi * std::sin(pi * x) * (1.0 - std::abs(x - c) / h);
    }
    EXPECT_NEAR(b(i), s * 2.0 * h / n, 1e-8) << i;
  }
}

TEST(OperatorSpec, DetectsStructure) {
  std::mt19937_64 rng(211);
  const TriplePtr t = DiscreteGelfandTriple::build(3, 1.0);
  const Matrix skew = [&] {
    const Matrix a = random_matrix(rng, 7, 7);
    return Matrix(a - a.transpose());
  }();
  const OperatorSpec s(t, skew);
  EXPECT_FALSE(s.symmetric());
  EXPECT_FALSE(s.elliptic());
  const OperatorSpec z(t, Matrix::Zero(7, 7));
  EXPECT_TRUE(std::isinf(z.inverse_norm()));
  EXPECT_EQ(code_of([&] { inverse(z); }), ErrorCode::SingularOperator);
  EXPECT_EQ(code_of([&] { OperatorSpec(t, Matrix::Zero(6, 7)); }), ErrorCode::DimensionMismatch);
}

TEST(OperatorSpec, InverseRoundTrip) {
  std::mt19937_64 rng(223);
  const TriplePtr t = DiscreteGelfandTriple::build(4, 0.5);
  const OperatorSpec op(t, random_spd(rng, t->dim(), 1.0).dense());
  const auto inv = inverse(op);
  const PrimalVector u(random_vec(rng, t->dim()));
  EXPECT_LE((inv(op(u)).coeffs() - u.coeffs()).norm(), 1e-12 * u.coeffs().norm());
}

TEST(MatrixRepresentation, ReferenceBasisGivesStiffness) {
  const TriplePtr t = DiscreteGelfandTriple::build(4, 1.0);
  const FrameSpec e = reference_basis(t);
  const OperatorSpec op = poisson_operator(t);
  EXPECT_EQ((matrix_representation(e, op, e) - t->stiffness().dense()).norm(), 0.0);
}

TEST(MatrixRepresentation, DuplicatedElementDuplicatesRowAndColumn) {
  const FrameSpec f = bpx(3);
  const FrameSpec g = with_duplicate(f, 4);
  const OperatorSpec op = poisson_for(f);
  const Matrix m = matrix_representation(g, op, g);
  const Eigen::Index last = g.size() - 1;
  EXPECT_EQ((m.row(last) - m.row(4)).norm(), 0.0);
  EXPECT_EQ((m.col(last) - m.col(4)).norm(), 0.0);
  EXPECT_EQ((m.topLeftCorner(f.size(), f.size()) - matrix_representation(f, op, f)).norm(), 0.0);
}

TEST(MatrixRepresentation, BoundsAndSymmetry) {
  std::mt19937_64 rng(227);
  for (int big_j = 1; big_j <= 5; ++big_j) {
    const FrameSpec f = bpx(big_j);
    const RepresentationBounds r = representation_bounds(f, poisson_for(f));
    EXPECT_LE(r.symmetry, 1e-12 * r.norm);
    EXPECT_LE(r.norm, r.upper_bound * (1.0 + 1e-10));
    EXPECT_GE(r.min_nonzero_sv, r.lower_bound * (1.0 - 1e-10));
    EXPECT_GE(r.min_eigenvalue, -1e-10 * r.norm);  // positive semidefinite
  }
  // nonsymmetric operator on a random frame
  const TriplePtr t = DiscreteGelfandTriple::build(3, 0.5);
  const FrameSpec f(t, random_matrix(rng, t->dim(), 12));
  const OperatorSpec op(t, random_matrix(rng, t->dim(), t->dim()) + 8.0 * Matrix::Identity(t->dim(), t->dim()));
  const RepresentationBounds r = representation_bounds(f, op);
  EXPECT_LE(r.norm, r.upper_bound * (1.0 + 1e-10));
  EXPECT_GE(r.min_nonzero_sv, r.lower_bound * (1.0 - 1e-10));
}

TEST(MatrixRepresentation, RankEqualsDimension) {
  const FrameSpec f = bpx(4);
  const Matrix m = matrix_representation(f, poisson_for(f), f);
  EXPECT_EQ(numerical_rank(m), f.dim());
}

TEST(OperatorFromMatrix, IdentityMatrixGivesIdentity) {
  std::mt19937_64 rng(229);
  const TriplePtr t = DiscreteGelfandTriple::build(3, 1.0);
  const FrameSpec riesz(t, random_matrix(rng, t->dim(), t->dim()));
  const DualFrameSpec dual = dual_frame(riesz);
  const auto id = operator_from_matrix(riesz, Matrix::Identity(riesz.size(), riesz.size()), dual);
  EXPECT_LE((id.matrix() - Matrix::Identity(t->dim(), t->dim())).norm(), 1e-10);
  // redundant frames reproduce the identity too: D_Psi C_Psi~ = I
  const FrameSpec redundant = bpx(3);
  const auto id2 =
      operator_from_matrix(redundant, Matrix::Identity(redundant.size(), redundant.size()), dual_frame(redundant));
  EXPECT_LE((id2.matrix() - Matrix::Identity(redundant.dim(), redundant.dim())).norm(), 1e-10);
}

TEST(OperatorFromMatrix, ZeroMatrixGivesZero) {
  const FrameSpec f = bpx(2);
  const auto z = operator_from_matrix(f, Matrix::Zero(f.size(), f.size()), dual_frame(f));
  EXPECT_EQ(z.matrix().norm(), 0.0);
  EXPECT_EQ(code_of([&] { operator_from_matrix(f, Matrix::Zero(f.size(), 3), dual_frame(f)); }),
            ErrorCode::DimensionMismatch);
}

TEST(OperatorFromMatrix, ReconstructsPoisson) {
  for (int big_j = 1; big_j <= 4; ++big_j) {
    const FrameSpec f = bpx(big_j);
    EXPECT_LE(operator_reconstruction_check(f, poisson_for(f)), 1e-9) << big_j;
  }
  for (const auto name : fixtures::names()) {
    const FrameSpec f = fixtures::by_name(name);
    const OperatorSpec op(f.triple_ptr(), (Matrix(2, 2) << 3.0, 1.0, -1.0, 2.0).finished());
    EXPECT_LE(operator_reconstruction_check(f, op), 1e-12) << name;
  }
}

TEST(Composition, MatchesProductThroughIntermediateFrame) {
  std::mt19937_64 rng(233);
  const FrameSpec f = bpx(3);
  const OperatorSpec op = poisson_for(f);
  const TriplePtr& t = f.triple_ptr();
  const LinearMap<PrimalVector, PrimalVector> p(t, random_matrix(rng, t->dim(), t->dim()));
  const FrameSpec riesz(t, random_matrix(rng, t->dim(), t->dim()));
  EXPECT_LE(composition_check(f, riesz, op, p), 1e-9);
  EXPECT_LE(composition_check(f, f, op, p), 1e-9);
  EXPECT_LE(composition_check(f, bpx(3), op, LinearMap<PrimalVector, PrimalVector>(t, Matrix::Zero(t->dim(), t->dim()))),
            1e-14);
}

TEST(Composition, ComposeTypes) {
  const TriplePtr t = DiscreteGelfandTriple::build(2, 1.0);
  const LinearMap<PrimalVector, PrimalVector> p(t, 2.0 * Matrix::Identity(3, 3));
  const OperatorSpec op = poisson_operator(t);
  const LinearMap<PrimalVector, DualVector> c = compose(op.map(), p);
  EXPECT_EQ((c.matrix() - 2.0 * t->stiffness().dense()).norm(), 0.0);
}

TEST(GramIdentities, HoldOnFixturesAndBpx) {
  std::mt19937_64 rng(239);
  std::vector<std::pair<FrameSpec, OperatorSpec>> cases;
  for (const auto name : fixtures::names()) {
    const FrameSpec f = fixtures::by_name(name);
    cases.emplace_back(f, OperatorSpec(f.triple_ptr(), (Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished()));
  }
  const FrameSpec b = bpx(3);
  cases.emplace_back(b, poisson_for(b));
  const TriplePtr t = DiscreteGelfandTriple::build(3, 1.0);
  const FrameSpec riesz(t, random_matrix(rng, t->dim(), t->dim()));
  cases.emplace_back(riesz, OperatorSpec(t, random_spd(rng, t->dim(), 0.5).dense()));

  for (const auto& [f, op] : cases) {
    const GramIdentityReport r = gram_identity_check(f, op);
    EXPECT_LE(r.forward, 1e-10);
    EXPECT_LE(r.reversed, 1e-10);
    EXPECT_EQ(r.kernel_dim, f.size() - f.dim());
    if (r.kernel_dim > 0) {
      EXPECT_LE(r.kernel_repr, 1e-8);
      EXPECT_LE(r.kernel_dual_repr, 1e-8);
    }
    EXPECT_LE(pseudo_inverse_identity_check(f, op), 1e-10);
  }
}

TEST(GramIdentities, PseudoInverseOracle) {
  // independent check: pinv from a full SVD, compared on range(G)
  const FrameSpec f = bpx(2);
  const OperatorSpec op = poisson_for(f);
  const Matrix m = matrix_representation(f, op, f);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vector inv_sv = Vector::Zero(m.rows());
  for (Eigen::Index i = 0; i < f.dim(); ++i) inv_sv(i) = 1.0 / svd.singularValues()(i);
  const Matrix pinv = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
  const DualFrameSpec dual = dual_frame(f);
  const Matrix m_dual_inv = matrix_representation(dual, inverse(op), dual);
  // the kernel of M is ker D_Psi, so pinv(M) and M~(O^-1) agree exactly here
  EXPECT_LE((pinv - m_dual_inv).norm(), 1e-10 * m_dual_inv.norm());
}

TEST(Galerkin, ReferenceBasisMatchesDirectSolve) {
  const TriplePtr t = DiscreteGelfandTriple::build(5, 1.0);
  const OperatorSpec op = poisson_operator(t);
  const DualVector b = manufactured_sine_load(*t);
  const GalerkinSolution s = galerkin_solve(reference_basis(t), op, b, 1e-12);
  const Vector direct = solve_spd(t->stiffness(), b.action());
  EXPECT_LE(rel_err(s.solution.coeffs(), direct), 1e-10);
  EXPECT_EQ(s.coefficients, s.solution.coeffs());
}

TEST(Galerkin, NodalValuesOfSine) {
  // linear elements in 1-D are nodally exact for -u'' = f
  const TriplePtr t = DiscreteGelfandTriple::build(5, 1.0);
  const GalerkinSolution s = galerkin_solve(bpx(4), poisson_operator(t), manufactured_sine_load(*t), 1e-12);
  const Vector x = t->nodes();
  EXPECT_LE((s.solution.coeffs() - (std::numbers::pi * x.array()).sin().matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Galerkin, CoefficientsAreMinimalNorm) {
  for (int big_j = 2; big_j <= 5; ++big_j) {
    const PoissonStudy s = solve_poisson_manufactured(big_j, 1e-10);
    EXPECT_LE(s.h1_vs_direct, 1e-8) << big_j;
    EXPECT_LE(s.coeff_vs_min_norm, 1e-8) << big_j;
    EXPECT_LE(s.galerkin_orthogonality, 1e-8) << big_j;
    EXPECT_EQ(s.n, (Eigen::Index{1} << (big_j + 1)) - 1);
  }
}

TEST(Galerkin, EnergyErrorIsFirstOrder) {
  double prev = 0.0;
  for (int big_j = 2; big_j <= 6; ++big_j) {
    const PoissonStudy s = solve_poisson_manufactured(big_j, 1e-11);
    if (prev > 0.0) {
      EXPECT_NEAR(s.h1_vs_exact / prev, 0.5, 0.02) << big_j;
    }
    prev = s.h1_vs_exact;
  }
}

TEST(Galerkin, InvariantUnderDuplicatedElement) {
  const FrameSpec f = bpx(3);
  const OperatorSpec op = poisson_for(f);
  const DualVector b = manufactured_sine_load(f.triple());
  const GalerkinSolution a = galerkin_solve(f, op, b, 1e-12);
  const GalerkinSolution d = galerkin_solve(with_duplicate(f, 2), op, b, 1e-12);
  EXPECT_LE(rel_err(d.solution.coeffs(), a.solution.coeffs()), 1e-9);
  // the duplicate splits its coefficient evenly
  EXPECT_NEAR(d.coefficients(2), d.coefficients(f.size()), 1e-9);
}

TEST(Galerkin, Preconditions) {
  std::mt19937_64 rng(241);
  const TriplePtr t = DiscreteGelfandTriple::build(3, 1.0);
  const DualVector b(random_vec(rng, t->dim()));
  const Matrix a = random_matrix(rng, t->dim(), t->dim());
  const OperatorSpec skew(t, a - a.transpose());
  EXPECT_EQ(code_of([&] { galerkin_solve(reference_basis(t), skew, b, 1e-8); }), ErrorCode::DomainError);
  const OperatorSpec indefinite(t, -Matrix::Identity(t->dim(), t->dim()));
  EXPECT_EQ(code_of([&] { galerkin_solve(reference_basis(t), indefinite, b, 1e-8); }), ErrorCode::DomainError);
  const FrameSpec thin(t, random_matrix(rng, t->dim(), 3));
  EXPECT_EQ(code_of([&] { galerkin_solve(thin, poisson_operator(t), b, 1e-8); }), ErrorCode::NotAFrame);
  EXPECT_EQ(code_of([&] { galerkin_solve(reference_basis(t), poisson_operator(t), DualVector::zero(2), 1e-8); }),
            ErrorCode::DimensionMismatch);
}

TEST(Conditioning, BpxBoundedSingleScaleGrows) {
  const std::vector<ConditioningRow> rows = conditioning_study(1.0, 2, 6, 1e-8, 7);
  ASSERT_EQ(rows.size(), 5u);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].kappa_bpx, rows[i].ratio, 1e-8 * rows[i].ratio);
    EXPECT_LE(rows[i].kappa_bpx, 60.0);
    if (i > 0) {
      EXPECT_NEAR(rows[i].kappa_single / rows[i - 1].kappa_single, 4.0, 0.8);
    }
  }
  EXPECT_LT(rows.back().cg_bpx, rows.back().cg_single);
}

}  // namespace
}  // namespace framekit
