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

#include "framekit/multiscale.hpp"

#include <cmath>
#include <sstream>

namespace framekit {

namespace {

Matrix interpolation_stencil(Eigen::Index coarse_dim) {
  const Eigen::Index fine_dim = 2 * coarse_dim + 1;
  Matrix p = Matrix::Zero(fine_dim, coarse_dim);
  // coarse node i (0-based) sits at fine node 2i+1
  for (Eigen::Index i = 0; i < coarse_dim; ++i) {
    p(2 * i, i) = 0.5;
    p(2 * i + 1, i) = 1.0;
    p(2 * i + 2, i) = 0.5;
  }
  return p;
}

void check_q(double q, bool allow_zero, const char* where) {
  const bool low_ok = allow_zero ? q >= 0.0 : q > 0.0;
  if (!low_ok || !(q < kLinearElementRegularity)) {
    std::ostringstream os;
    os << where << ": q = " << q << " outside " << (allow_zero ? "[0" : "(0") << ", 3/2)";
    raise(ErrorCode::DomainError, os.str());
  }
}

void check_fine_triple(const MultiscaleHierarchy& hy, const DiscreteGelfandTriple& t, const char* where) {
  if (t.j_fine() != hy.j_fine()) {
    raise(ErrorCode::DimensionMismatch, std::string(where) + ": triple is not the hierarchy's fine triple");
  }
}

}  // namespace

MultiscaleHierarchy MultiscaleHierarchy::build(int finest_level) {
  if (finest_level < 1 || finest_level > 10) {
    raise(ErrorCode::DomainError, "build_hierarchy: J must lie in [1, 10]");
  }
  MultiscaleHierarchy hy;
  hy.finest_ = finest_level;
  for (int j = 0; j <= finest_level; ++j) {
    LevelInfo li;
    li.level = j;
    li.dim = (Eigen::Index{1} << (j + 1)) - 1;
    li.h = std::ldexp(1.0, -(j + 1));
    hy.levels_.push_back(li);
    hy.masses_.push_back(hat_mass_matrix(j + 1));
    hy.stiffnesses_.push_back(hat_stiffness_matrix(j + 1));
    hy.mass_factors_.push_back(std::make_shared<const SpdFactor>(hy.masses_.back()));
  }
  for (int j = 0; j < finest_level; ++j) {
    hy.prolongations_.push_back(interpolation_stencil(hy.levels_[static_cast<std::size_t>(j)].dim));
  }
  hy.embeddings_.resize(static_cast<std::size_t>(finest_level) + 1);
  const Eigen::Index n = hy.levels_.back().dim;
  hy.embeddings_.back() = Matrix::Identity(n, n);
  for (int j = finest_level - 1; j >= 0; --j) {
    const auto u = static_cast<std::size_t>(j);
    hy.embeddings_[u] = hy.embeddings_[u + 1] * hy.prolongations_[u];
  }
  hy.fine_ = DiscreteGelfandTriple::build(finest_level + 1, 0.0);
  return hy;
}

void MultiscaleHierarchy::check_level(int j) const {
  if (j < 0 || j > finest_) {
    std::ostringstream os;
    os << "level " << j << " outside [0, " << finest_ << "]";
    raise(ErrorCode::DimensionMismatch, os.str());
  }
}

const LevelInfo& MultiscaleHierarchy::level(int j) const {
  check_level(j);
  return levels_[static_cast<std::size_t>(j)];
}

const Matrix& MultiscaleHierarchy::prolongation(int j) const {
  if (j < 0 || j >= finest_) raise(ErrorCode::DimensionMismatch, "prolongation: level out of range");
  return prolongations_[static_cast<std::size_t>(j)];
}

const Matrix& MultiscaleHierarchy::embedding(int j) const {
  check_level(j);
  return embeddings_[static_cast<std::size_t>(j)];
}

const SymMatrix& MultiscaleHierarchy::level_mass(int j) const {
  check_level(j);
  return masses_[static_cast<std::size_t>(j)];
}

const SymMatrix& MultiscaleHierarchy::level_stiffness(int j) const {
  check_level(j);
  return stiffnesses_[static_cast<std::size_t>(j)];
}

const SpdFactor& MultiscaleHierarchy::level_mass_factor(int j) const {
  check_level(j);
  return *mass_factors_[static_cast<std::size_t>(j)];
}

PrimalVector embed(const MultiscaleHierarchy& hy, int j, const PrimalVector& level_coeffs) {
  require_dims(level_coeffs.size() == hy.level(j).dim, "embed");
  return PrimalVector(hy.embedding(j) * level_coeffs.coeffs());
}

PrimalVector l2_project(const MultiscaleHierarchy& hy, int j, const PrimalVector& fine) {
  require_dims(fine.size() == hy.fine_dim(), "l2_project");
  const Matrix& e = hy.embedding(j);
  const Vector rhs = e.transpose() * (hy.fine_triple()->mass() * fine.coeffs());
  return PrimalVector(hy.level_mass_factor(j).solve(rhs));
}

PrimalVector l2_project_fine(const MultiscaleHierarchy& hy, int j, const PrimalVector& fine) {
  return embed(hy, j, l2_project(hy, j, fine));
}

PrimalVector sample_fine(const MultiscaleHierarchy& hy, const std::function<double(double)>& f) {
  const Vector x = hy.fine_triple()->nodes();
  Vector v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v(i) = f(x(i));
  return PrimalVector(v);
}

std::vector<double> RateReport::growth_factors() const {
  std::vector<double> g;
  for (std::size_t i = 1; i < values.size(); ++i) g.push_back(values[i] / values[i - 1]);
  return g;
}

void fit_rate(RateReport& report) {
  const std::size_t m = report.levels.size();
  if (m != report.values.size()) raise(ErrorCode::DimensionMismatch, "fit_rate");
  if (m < 2) {
    report.slope = 0.0;
    report.constant = m ? report.values[0] : 0.0;
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = report.levels[i];
    const double y = std::log2(report.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dm = static_cast<double>(m);
  report.slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  report.constant = std::exp2((sy - report.slope * sx) / dm);
}

RateReport jackson_rate(const MultiscaleHierarchy& hy, const std::function<double(double)>& f, int j_lo,
                        int j_hi) {
  if (j_hi < 0) j_hi = hy.finest_level() - 3;
  if (j_lo < 0 || j_hi > hy.finest_level() || j_lo > j_hi) {
    raise(ErrorCode::DomainError, "jackson_rate: empty or invalid level range");
  }
  const PrimalVector fine = sample_fine(hy, f);
  const DiscreteGelfandTriple& t = *hy.fine_triple();
  RateReport r;
  for (int j = j_lo; j <= j_hi; ++j) {
    const PrimalVector pj = l2_project_fine(hy, j, fine);
    r.levels.push_back(j);
    r.values.push_back(l2_norm(t, PrimalVector(fine.coeffs() - pj.coeffs())));
  }
  fit_rate(r);
  return r;
}

RateReport bernstein_rate(const MultiscaleHierarchy& hy, const DiscreteGelfandTriple& fine_q) {
  check_fine_triple(hy, fine_q, "bernstein_rate");
  RateReport r;
  for (int j = 0; j <= hy.finest_level(); ++j) {
    const Matrix& e = hy.embedding(j);
    const SymMatrix hq = SymMatrix::symmetrize(e.transpose() * fine_q.inner_h().dense() * e);
    const PencilSpectrum sp = generalized_eigs(hq, hy.level_mass(j));
    r.levels.push_back(j);
    r.values.push_back(sp.max());
  }
  fit_rate(r);
  return r;
}

RateReport bernstein_rate(const MultiscaleHierarchy& hy, double q) {
  check_q(q, true, "bernstein_rate");
  return bernstein_rate(hy, *DiscreteGelfandTriple::build(hy.j_fine(), q));
}

FrameSpec single_scale_system(const MultiscaleHierarchy& hy, int j) {
  const LevelInfo& li = hy.level(j);
  const double w = 1.0 / std::sqrt(li.h * 2.0 / 3.0);
  std::vector<ElementLabel> labels;
  for (Eigen::Index k = 0; k < li.dim; ++k) labels.push_back({j, static_cast<int>(k), w});
  return FrameSpec(hy.fine_triple(), w * hy.embedding(j), labels);
}

StabilityBounds single_scale_stability(const MultiscaleHierarchy& hy, int j) {
  const LevelInfo& li = hy.level(j);
  const double w2 = 1.0 / (li.h * 2.0 / 3.0);
  const SymMatrix g = SymMatrix::from_upper(w2 * hy.level_mass(j).dense());
  const PencilSpectrum sp = symmetric_eigs(g);
  return {sp.min(), sp.max()};
}

double norm_equivalence_ratio(const MultiscaleHierarchy& hy, const DiscreteGelfandTriple& fine_q,
                              const DualVector& g) {
  check_fine_triple(hy, fine_q, "norm_equivalence_ratio");
  const double q = fine_q.q().value_or(0.0);
  check_q(q, false, "norm_equivalence_ratio");
  require_dims(g.size() == hy.fine_dim(), "norm_equivalence_ratio");
  const DiscreteGelfandTriple& l2 = *hy.fine_triple();
  const PrimalVector f = l2_pivot_preimage(l2, g);
  double num = 0.0;
  Vector prev = Vector::Zero(f.size());  // P_{-1} f = 0
  for (int j = 0; j <= hy.finest_level(); ++j) {
    const Vector pj = l2_project_fine(hy, j, f).coeffs();
    const double d = l2_norm(l2, PrimalVector(pj - prev));
    num += std::exp2(-2.0 * j * q) * d * d;
    prev = pj;
  }
  const double den = dual_norm(fine_q, g);
  return num / (den * den);
}

double norm_equivalence_ratio(const MultiscaleHierarchy& hy, double q, const DualVector& g) {
  check_q(q, false, "norm_equivalence_ratio");
  return norm_equivalence_ratio(hy, *DiscreteGelfandTriple::build(hy.j_fine(), q), g);
}

FrameSpec bpx_frame(const MultiscaleHierarchy& hy, const TriplePtr& fine_q) {
  check_fine_triple(hy, *fine_q, "bpx_frame");
  const double q = fine_q->q().value_or(0.0);
  check_q(q, true, "bpx_frame");
  Eigen::Index k_total = 0;
  for (const auto& li : hy.levels()) k_total += li.dim;
  Matrix elements(hy.fine_dim(), k_total);
  std::vector<ElementLabel> labels;
  labels.reserve(static_cast<std::size_t>(k_total));
  Eigen::Index col = 0;
  for (const auto& li : hy.levels()) {
    const double w = std::exp2(-li.level * q) / std::sqrt(li.h * 2.0 / 3.0);
    elements.middleCols(col, li.dim) = w * hy.embedding(li.level);
    for (Eigen::Index k = 0; k < li.dim; ++k) labels.push_back({li.level, static_cast<int>(k), w});
    col += li.dim;
  }
  return FrameSpec(fine_q, std::move(elements), std::move(labels));
}

FrameSpec bpx_frame(const MultiscaleHierarchy& hy, double q) {
  check_q(q, true, "bpx_frame");
  return bpx_frame(hy, DiscreteGelfandTriple::build(hy.j_fine(), q));
}

ScaleSums scale_sums(const MultiscaleHierarchy& hy, double q, const PrimalVector& fine) {
  check_q(q, false, "scale_sums");
  require_dims(fine.size() == hy.fine_dim(), "scale_sums");
  const DiscreteGelfandTriple& l2 = *hy.fine_triple();
  const int big_j = hy.finest_level();
  const double decay = std::exp2(-2.0 * q);
  ScaleSums s;
  Vector prev = Vector::Zero(fine.size());
  for (int l = 0; l <= big_j; ++l) {
    const Vector pl = l2_project_fine(hy, l, fine).coeffs();
    const double pn = l2_norm(l2, PrimalVector(pl));
    const double qn = l2_norm(l2, PrimalVector(pl - prev));
    s.direct += std::pow(decay, l) * pn * pn;
    double inner = 0.0;
    for (int j = l; j <= big_j; ++j) inner += std::pow(decay, j);
    s.reordered += qn * qn * inner;
    s.geometric_tail += qn * qn * std::pow(decay, l) / (1.0 - decay);
    prev = pl;
  }
  const double fn = l2_norm(l2, fine);
  s.tail_bound = std::pow(decay, big_j + 1) / (1.0 - decay) * fn * fn;
  return s;
}

}  // namespace framekit
