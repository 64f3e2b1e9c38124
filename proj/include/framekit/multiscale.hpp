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

// Dyadic hat-function hierarchy V_0 c V_1 c ... c V_J on (0,1).
//
// Level j has mesh width 2^-(j+1) and 2^(j+1) - 1 interior hats, so V_0 is the
// single hat on [0,1]. The hierarchy lives on the fine triple with
// J_fine = J + 1, where V_J is the whole fine space.

#pragma once

#include <functional>
#include <vector>

#include "framekit/frames.hpp"

namespace framekit {

struct LevelInfo {
  int level = 0;
  Eigen::Index dim = 0;
  double h = 0.0;
};

class MultiscaleHierarchy {
 public:
  /// 1 <= J <= 10.
  static MultiscaleHierarchy build(int finest_level);

  int finest_level() const noexcept { return finest_; }
  int j_fine() const noexcept { return finest_ + 1; }
  Eigen::Index fine_dim() const noexcept { return levels_.back().dim; }
  const std::vector<LevelInfo>& levels() const noexcept { return levels_; }
  const LevelInfo& level(int j) const;

  /// n_{j+1} x n_j interpolation stencil (1/2, 1, 1/2), j < J.
  const Matrix& prolongation(int j) const;
  /// Composite prolongation V_j -> V_J (identity for j = J).
  const Matrix& embedding(int j) const;

  const SymMatrix& level_mass(int j) const;
  const SymMatrix& level_stiffness(int j) const;
  const SpdFactor& level_mass_factor(int j) const;

  /// Fine L^2 triple (q = 0).
  const TriplePtr& fine_triple() const noexcept { return fine_; }

  static constexpr double gamma() { return kLinearElementRegularity; }
  static constexpr int order() { return 2; }

 private:
  MultiscaleHierarchy() = default;
  void check_level(int j) const;

  int finest_ = 0;
  std::vector<LevelInfo> levels_;
  std::vector<Matrix> prolongations_;
  std::vector<Matrix> embeddings_;
  std::vector<SymMatrix> masses_;
  std::vector<SymMatrix> stiffnesses_;
  std::vector<std::shared_ptr<const SpdFactor>> mass_factors_;
  TriplePtr fine_;
};

/// Level-j coefficients -> fine coefficients.
PrimalVector embed(const MultiscaleHierarchy& hy, int j, const PrimalVector& level_coeffs);

/// L^2-orthogonal projection P_j of a fine function, as level-j coefficients.
PrimalVector l2_project(const MultiscaleHierarchy& hy, int j, const PrimalVector& fine);

/// Same projection expressed on the fine grid.
PrimalVector l2_project_fine(const MultiscaleHierarchy& hy, int j, const PrimalVector& fine);

/// Nodal interpolant of f on the fine grid.
PrimalVector sample_fine(const MultiscaleHierarchy& hy, const std::function<double(double)>& f);

struct RateReport {
  std::vector<int> levels;
  std::vector<double> values;
  double slope = 0.0;     // least-squares slope of log2(values) against level
  double constant = 0.0;  // 2^intercept of the same fit

  /// values[i+1] / values[i].
  std::vector<double> growth_factors() const;
};

/// Least-squares log2 fit of an already filled report.
void fit_rate(RateReport& report);

/// ||f - P_j f||_{L^2} for j in [j_lo, j_hi]. Defaults to 2..J-3.
RateReport jackson_rate(const MultiscaleHierarchy& hy, const std::function<double(double)>& f, int j_lo = 2,
                        int j_hi = -1);

/// Largest Rayleigh quotient ||v||_{H^q}^2 / ||v||_{L^2}^2 over V_j, j = 0..J.
RateReport bernstein_rate(const MultiscaleHierarchy& hy, double q);
/// Same with a prebuilt fine triple carrying the H^q inner product.
RateReport bernstein_rate(const MultiscaleHierarchy& hy, const DiscreteGelfandTriple& fine_q);

/// L^2-normalized level-j hats embedded into the fine L^2 triple.
FrameSpec single_scale_system(const MultiscaleHierarchy& hy, int j);

struct StabilityBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of the Gramian of the normalized level-j hats.
StabilityBounds single_scale_stability(const MultiscaleHierarchy& hy, int j);

/// [sum_j 4^{-jq} ||(P_j - P_{j-1}) f||^2] / ||g||^2_{(H^q)'} with f the L^2
/// pivot preimage of g. fine_q must be the hierarchy's fine triple with H^q.
double norm_equivalence_ratio(const MultiscaleHierarchy& hy, const DiscreteGelfandTriple& fine_q,
                              const DualVector& g);
double norm_equivalence_ratio(const MultiscaleHierarchy& hy, double q, const DualVector& g);

/// {2^{-jq} phi_{j,k}} with L^2-normalized hats, all levels, on the fine
/// H^q triple. q = 0 is accepted as the L^2 negative control.
FrameSpec bpx_frame(const MultiscaleHierarchy& hy, double q);
FrameSpec bpx_frame(const MultiscaleHierarchy& hy, const TriplePtr& fine_q);

/// sum_j 4^{-jq} ||P_j f||^2 evaluated directly and after exchanging the
/// order of summation.
struct ScaleSums {
  double direct = 0.0;
  double reordered = 0.0;      // sum_l ||Q_l f||^2 sum_{j=l}^{J} 4^{-jq}, exact rearrangement
  double geometric_tail = 0.0; // sum_l ||Q_l f||^2 4^{-lq} / (1 - 4^{-q})
  double tail_bound = 0.0;     // 4^{-q(J+1)} / (1 - 4^{-q}) * ||f||^2
};

ScaleSums scale_sums(const MultiscaleHierarchy& hy, double q, const PrimalVector& fine);

}  // namespace framekit
