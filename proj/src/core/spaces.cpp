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

#include "framekit/spaces.hpp"

#include <cmath>
#include <sstream>

namespace framekit {

SymMatrix hat_mass_matrix(int level) {
  const Eigen::Index n = (Eigen::Index{1} << level) - 1;
  const double h = std::ldexp(1.0, -level);
  SymMatrix m(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.set(i, i, h * 2.0 / 3.0);
    if (i + 1 < n) m.set(i, i + 1, h / 6.0);
  }
  return m;
}

SymMatrix hat_stiffness_matrix(int level) {
  const Eigen::Index n = (Eigen::Index{1} << level) - 1;
  const double h = std::ldexp(1.0, -level);
  SymMatrix a(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.set(i, i, 2.0 / h);
    if (i + 1 < n) a.set(i, i + 1, -1.0 / h);
  }
  return a;
}

SymMatrix spectral_inner_product(const SymMatrix& stiffness, const SymMatrix& mass, double q) {
  const PencilSpectrum sp = generalized_eigs(stiffness, mass);
  Vector lq(sp.eigenvalues.size());
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    lq(static_cast<Eigen::Index>(i)) = std::pow(sp.eigenvalues[i], q);
  }
  const Matrix mw = mass.dense() * sp.eigenvectors;
  return SymMatrix::symmetrize(mw * lq.asDiagonal() * mw.transpose());
}

TriplePtr DiscreteGelfandTriple::build(int j_fine, double q) {
  if (j_fine < 1 || j_fine > 14) {
    raise(ErrorCode::DomainError, "build_triple: J_fine must lie in [1, 14]");
  }
  if (!(q >= 0.0) || q >= kLinearElementRegularity) {
    std::ostringstream os;
    os << "build_triple: q = " << q << " outside [0, 3/2) (regularity of linear elements)";
    raise(ErrorCode::DomainError, os.str());
  }
  auto t = std::shared_ptr<DiscreteGelfandTriple>(new DiscreteGelfandTriple());
  t->j_fine_ = j_fine;
  t->h_ = std::ldexp(1.0, -j_fine);
  t->q_ = q;
  std::ostringstream lbl;
  lbl << "hat(J_fine=" << j_fine << ", q=" << q << ")";
  t->label_ = lbl.str();
  t->mass_ = hat_mass_matrix(j_fine);
  t->stiffness_ = hat_stiffness_matrix(j_fine);
  if (q == 0.0) {
    t->inner_h_ = t->mass_;
  } else if (q == 1.0) {
    t->inner_h_ = t->stiffness_;
  } else {
    t->inner_h_ = spectral_inner_product(t->stiffness_, t->mass_, q);
  }
  t->factorize();
  return t;
}

TriplePtr DiscreteGelfandTriple::from_inner_product(SymMatrix inner_h, std::optional<SymMatrix> mass,
                                                    std::string label) {
  auto t = std::shared_ptr<DiscreteGelfandTriple>(new DiscreteGelfandTriple());
  const Eigen::Index n = inner_h.n();
  if (mass) require_dims(mass->n() == n, "from_inner_product");
  t->label_ = std::move(label);
  t->inner_h_ = std::move(inner_h);
  t->mass_ = mass ? std::move(*mass) : SymMatrix::identity(n);
  t->stiffness_ = SymMatrix(n);
  t->factorize();
  return t;
}

void DiscreteGelfandTriple::factorize() {
  inner_h_factor_ = std::make_shared<const SpdFactor>(inner_h_);
  mass_factor_ = std::make_shared<const SpdFactor>(mass_);
}

Vector DiscreteGelfandTriple::nodes() const {
  Vector x(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) x(i) = static_cast<double>(i + 1) * h_;
  return x;
}

double primal_norm(const DiscreteGelfandTriple& t, const PrimalVector& f) {
  require_dims(f.size() == t.dim(), "primal_norm");
  return std::sqrt(std::max(0.0, f.coeffs().dot(t.inner_h() * f.coeffs())));
}

double dual_norm(const DiscreteGelfandTriple& t, const DualVector& g) {
  require_dims(g.size() == t.dim(), "dual_norm");
  return std::sqrt(std::max(0.0, g.action().dot(t.inner_h_factor().solve(g.action()))));
}

double pairing(const DualVector& g, const PrimalVector& f) {
  require_dims(g.size() == f.size(), "pairing");
  return g.action().dot(f.coeffs());
}

DualVector riesz_image(const DiscreteGelfandTriple& t, const PrimalVector& f) {
  require_dims(f.size() == t.dim(), "riesz_image");
  return DualVector(t.inner_h() * f.coeffs());
}

PrimalVector riesz_preimage(const DiscreteGelfandTriple& t, const DualVector& g) {
  require_dims(g.size() == t.dim(), "riesz_preimage");
  return PrimalVector(solve_spd(t.inner_h(), g.action()));
}

PrimalVector l2_pivot_preimage(const DiscreteGelfandTriple& t, const DualVector& g) {
  require_dims(g.size() == t.dim(), "l2_pivot_preimage");
  return PrimalVector(solve_spd(t.mass(), g.action()));
}

double l2_norm(const DiscreteGelfandTriple& t, const PrimalVector& f) {
  require_dims(f.size() == t.dim(), "l2_norm");
  return std::sqrt(std::max(0.0, f.coeffs().dot(t.mass() * f.coeffs())));
}

}  // namespace framekit
