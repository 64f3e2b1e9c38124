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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never relaxed at runtime.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "framekit/fixtures.hpp"
#include "framekit/frames.hpp"
#include "framekit/multiscale.hpp"
#include "framekit/operator_repr.hpp"

#ifndef FRAMEKIT_CLI_PATH
#error "FRAMEKIT_CLI_PATH must name the CLI binary"
#endif

namespace fk = framekit;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int g_failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.passed) ++g_failures;
  std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " |" << o.detail.str()
            << std::endl;
}

// Oracle for frame bounds: eigenvalues of L^T S L with H = L L^T, computed
// without the library's pencil solver.
std::pair<double, double> bounds_oracle(const fk::FrameSpec& f) {
  const Eigen::LLT<fk::Matrix> llt(f.triple().inner_h().dense());
  const fk::Matrix l = llt.matrixL();
  const fk::Matrix a = l.transpose() * f.elements() * f.elements().transpose() * l;
  const Eigen::SelfAdjointEigenSolver<fk::Matrix> es(a);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

fk::FrameSpec random_spanning_frame(std::mt19937_64& rng, int j_fine, double q, Eigen::Index k) {
  const fk::TriplePtr t = fk::DiscreteGelfandTriple::build(j_fine, q);
  std::normal_distribution<double> gauss;
  fk::Matrix e(t->dim(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < t->dim(); ++r) e(r, c) = gauss(rng);
  }
  return fk::FrameSpec(t, e);
}

// 20 frames with N in {3, 7, 15}, N <= K <= 60, q cycling through 0, 1/2, 1.
std::vector<fk::FrameSpec> random_frames(std::mt19937_64& rng) {
  std::vector<fk::FrameSpec> out;
  const double qs[] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 20; ++i) {
    const int j_fine = 2 + i % 3;
    const Eigen::Index n = (Eigen::Index{1} << j_fine) - 1;
    std::uniform_int_distribution<Eigen::Index> kd(n, 60);
    out.push_back(random_spanning_frame(rng, j_fine, qs[(i / 3) % 3], kd(rng)));
  }
  return out;
}

std::string run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + FRAMEKIT_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

void c1(Outcome& o) {
  constexpr double tol = 1e-10;
  const std::pair<double, double> want[] = {{1.0, 2.0}, {2.0, 2.0}, {0.5, 8.0}, {1.0, 2.0}};
  const auto names = fk::fixtures::names();
  double worst = 0.0;
  for (size_t i = 0; i < names.size(); ++i) {
    const fk::FrameSpec f = fk::fixtures::by_name(names[i]);
    const fk::FrameBounds b = fk::frame_bounds(f);
    const auto [lo, hi] = bounds_oracle(f);
    const double err = std::max({std::abs(b.lower - want[i].first), std::abs(b.upper - want[i].second),
                                 std::abs(b.lower - lo), std::abs(b.upper - hi)});
    worst = std::max(worst, err);
    o.require(err <= tol, std::string(names[i]) + " bounds");
    if (names[i] == "F2") o.require(std::abs(b.lower - 2.0) <= 1e-12 && std::abs(b.upper - 2.0) <= 1e-12, "F2 tight");
  }
  const fk::FrameBounds d4 = fk::frame_bounds(fk::dual_frame(fk::fixtures::f4()));
  const double derr = std::max(std::abs(d4.lower - 0.5), std::abs(d4.upper - 1.0));
  o.require(derr <= tol, "F4 dual bounds");
  o.detail << " max_err=" << std::max(worst, derr) << " tol=" << tol;
}

void c2(Outcome& o) {
  std::mt19937_64 rng(kSeed);
  const std::vector<fk::FrameSpec> frames = random_frames(rng);
  double bounds = 0.0, inv = 0.0, recon = 0.0;
  for (const auto& f : frames) {
    const fk::DualTheoremReport r = fk::verify_dual_theorem(f, rng, 10);
    // independent bound oracle for the primal side
    const auto [lo, hi] = bounds_oracle(f);
    bounds = std::max({bounds, r.dual_lower_rel_error, r.dual_upper_rel_error,
                       std::abs(r.dual.lower * hi - 1.0), std::abs(r.dual.upper * lo - 1.0)});
    inv = std::max(inv, r.inverse_rel_residual);
    recon = std::max({recon, r.recon_primal_rel_error, r.recon_dual_rel_error});
  }
  o.require(bounds <= 1e-8, "dual bounds");
  o.require(inv <= 1e-9, "S~ S = I");
  o.require(recon <= 1e-10, "reconstruction");
  o.detail << " frames=" << frames.size() << " dual_bounds=" << bounds << " (1e-8) inverse=" << inv
           << " (1e-9) reconstruction=" << recon << " (1e-10)";
}

std::vector<fk::FrameSpec> decomposition_frames() {
  std::mt19937_64 rng(kSeed + 1);
  std::vector<fk::FrameSpec> frames = random_frames(rng);
  for (const auto name : fk::fixtures::names()) frames.push_back(fk::fixtures::by_name(name));
  frames.push_back(fk::bpx_frame(fk::MultiscaleHierarchy::build(3), 1.0));
  return frames;
}

void c3(Outcome& o) {
  std::mt19937_64 rng(kSeed + 2);
  double proj = 0.0, split = 0.0;
  for (const auto& f : decomposition_frames()) {
    const fk::ProjectorReport r = fk::verify_projector(f, rng, 10);
    // independent oracle: range projector of Psi^T from a full SVD
    const fk::Matrix g = fk::cross_gramian(f, fk::dual_frame(f));
    Eigen::JacobiSVD<fk::Matrix> svd(f.elements().transpose(), Eigen::ComputeThinU);
    const fk::Matrix u = svd.matrixU().leftCols(f.dim());
    const double oracle = (g - u * u.transpose()).norm();
    proj = std::max({proj, r.idempotence, r.symmetry, r.svd_projector, r.swapped, oracle});
    split = std::max({split, r.split_synthesis, r.split_range});
  }
  o.require(proj <= 1e-10, "projector");
  o.require(split <= 1e-10, "l2 splitting");
  o.detail << " projector=" << proj << " splitting=" << split << " tol=1e-10";
}

void c4(Outcome& o) {
  std::mt19937_64 rng(kSeed + 3);
  double svd = 0.0;
  int violations = 0, perturbations = 0;
  for (const auto& f : decomposition_frames()) {
    const fk::MinNormReport r = fk::verify_min_norm(f, rng, 5, 100);
    svd = std::max(svd, r.svd_rel_error);
    violations += r.violations;
    perturbations += r.perturbations;
  }
  o.require(svd <= 1e-8, "svd min-norm");
  o.require(violations == 0, "perturbed coefficients shorter");
  o.detail << " svd_rel=" << svd << " (1e-8) perturbed=" << perturbations << " violations=" << violations;
}

void c5(Outcome& o) {
  const fk::MultiscaleHierarchy hy = fk::MultiscaleHierarchy::build(8);
  const fk::RateReport r = fk::jackson_rate(hy, [](double x) { return std::sin(std::acos(-1.0) * x); });
  o.require(hy.j_fine() == 9 && r.levels.front() == 2 && r.levels.back() == hy.finest_level() - 3, "level range");
  o.require(std::abs(r.slope + 2.0) <= 0.15, "slope");
  o.detail << " J_fine=" << hy.j_fine() << " levels=" << r.levels.front() << ".." << r.levels.back()
           << " slope=" << r.slope << " (-2 +- 0.15)";
}

void c6(Outcome& o) {
  const fk::MultiscaleHierarchy hy = fk::MultiscaleHierarchy::build(8);
  for (const double q : {1.0, 0.5}) {
    const fk::RateReport r = fk::bernstein_rate(hy, q);
    const std::vector<double> g = r.growth_factors();
    const double target = std::exp2(2.0 * q);
    double worst = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
      if (r.levels[i + 1] >= 3) worst = std::max(worst, std::abs(g[i] / target - 1.0));
    }
    o.require(worst <= 0.2, "q=" + std::to_string(q));
    o.detail << " q=" << q << ": max_dev=" << worst << " from " << target;
  }
  o.detail << " (20%)";
}

void c7(Outcome& o) {
  const fk::MultiscaleHierarchy hy = fk::MultiscaleHierarchy::build(6);
  const fk::TriplePtr t = fk::DiscreteGelfandTriple::build(hy.j_fine(), 1.0);
  std::mt19937_64 rng(kSeed);
  double lo = INFINITY, hi = 0.0, homog = 0.0;
  for (int s = 0; s < 200; ++s) {
    const fk::DualVector g(fk::random_vector(rng, hy.fine_dim()));
    const double r = fk::norm_equivalence_ratio(hy, *t, g);
    const double r2 = fk::norm_equivalence_ratio(hy, *t, fk::DualVector(2.0 * g.action()));
    homog = std::max(homog, std::abs(r2 - r) / r);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  o.require(lo > 0.0 && hi / lo <= 20.0, "spread");
  o.require(homog <= 1e-12, "homogeneity");
  o.detail << " interval=[" << lo << ", " << hi << "] spread=" << hi / lo << " (20) homogeneity=" << homog
           << " (1e-12)";
}

void c8(Outcome& o) {
  const std::vector<fk::ConditioningRow> rows = fk::conditioning_study(1.0, 2, 7, 1e-8, kSeed);
  double max_ratio = 0.0, kappa_dev = 0.0;
  bool kappa_nondecreasing = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    max_ratio = std::max(max_ratio, rows[i].ratio);
    if (i > 0) {
      const double growth = rows[i].kappa_single / rows[i - 1].kappa_single;
      kappa_nondecreasing = kappa_nondecreasing && growth >= 1.0;
      kappa_dev = std::max(kappa_dev, std::abs(growth / 4.0 - 1.0));
    }
  }
  o.require(max_ratio <= 60.0, "q=1 ratio");
  o.require(kappa_nondecreasing && kappa_dev <= 0.2, "single-level growth");

  std::vector<double> r0;
  for (int j = 2; j <= 7; ++j) r0.push_back(fk::frame_bounds(fk::bpx_frame(fk::MultiscaleHierarchy::build(j), 0.0)).ratio);
  const bool increasing = std::adjacent_find(r0.begin(), r0.end(), std::greater_equal<double>()) == r0.end();
  o.require(increasing, "q=0 growth");
  o.detail << " max_ratio_q1=" << max_ratio << " (60) kappa_single_dev=" << kappa_dev << " (20%) ratio_q0="
           << r0.front() << ".." << r0.back() << (increasing ? " strictly increasing" : " not increasing");
}

void c9(Outcome& o) {
  const fk::PoissonStudy s = fk::solve_poisson_manufactured(6, 1e-8);
  o.require(s.h1_vs_direct <= 1e-7, "H1 vs direct");
  o.require(s.coeff_vs_min_norm <= 1e-7, "coefficients vs min-norm");
  int it_min = 1 << 30, it_max = 0;
  std::ostringstream its;
  for (int j = 2; j <= 7; ++j) {
    const int it = fk::solve_poisson_manufactured(j, 1e-8).iterations;
    it_min = std::min(it_min, it);
    it_max = std::max(it_max, it);
    its << (j == 2 ? "" : ",") << it;
  }
  const double spread = static_cast<double>(it_max) / it_min;
  o.require(spread <= 2.0, "iteration spread");
  o.detail << " J=6: h1=" << s.h1_vs_direct << " coeff=" << s.coeff_vs_min_norm << " (1e-7) iterations J=2..7: "
           << its.str() << " spread=" << spread << " (2)";
}

void c10(Outcome& o) {
  std::mt19937_64 rng(kSeed + 4);
  struct Case {
    std::string name;
    fk::FrameSpec frame;
    fk::OperatorSpec op;
  };
  std::vector<Case> cases;
  {
    const fk::FrameSpec f1 = fk::fixtures::f1();
    cases.push_back({"F1", f1, fk::OperatorSpec(f1.triple_ptr(), (fk::Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished())});
  }
  {
    const fk::TriplePtr t = fk::DiscreteGelfandTriple::build(3, 1.0);
    std::normal_distribution<double> gauss;
    const fk::Matrix a =
        fk::Matrix::Identity(7, 7) + 0.3 * fk::Matrix::NullaryExpr(7, 7, [&] { return gauss(rng); });
    cases.push_back({"Riesz", fk::FrameSpec(t, a), fk::poisson_operator(t)});
  }
  {
    const fk::MultiscaleHierarchy hy = fk::MultiscaleHierarchy::build(3);
    const fk::FrameSpec b = fk::bpx_frame(hy, fk::DiscreteGelfandTriple::build(hy.j_fine(), 1.0));
    cases.push_back({"BPX-J3", b, fk::poisson_operator(b.triple_ptr())});
  }
  constexpr double tol = 1e-8;
  double worst = 0.0;
  for (const auto& c : cases) {
    const fk::RepresentationBounds rb = fk::representation_bounds(c.frame, c.op);
    const fk::GramIdentityReport g = fk::gram_identity_check(c.frame, c.op);
    const auto& l = c.op.matrix();
    const fk::LinearMap<fk::PrimalVector, fk::PrimalVector> p(c.frame.triple_ptr(), l / l.norm());
    const double values[] = {
        rb.symmetry / rb.norm,
        std::max(0.0, -rb.min_eigenvalue) / rb.norm,
        std::max(0.0, rb.norm / rb.upper_bound - 1.0),
        std::max(0.0, 1.0 - rb.min_nonzero_sv / rb.lower_bound),
        g.forward,
        g.reversed,
        g.kernel_repr,
        g.kernel_dual_repr,
        fk::composition_check(c.frame, c.frame, c.op, p),
        fk::operator_reconstruction_check(c.frame, c.op),
        fk::pseudo_inverse_identity_check(c.frame, c.op),
    };
    double case_worst = 0.0;
    for (double v : values) case_worst = std::max(case_worst, v);
    o.require(case_worst <= tol, c.name);
    o.detail << " " << c.name << "=" << case_worst;
    worst = std::max(worst, case_worst);
  }
  o.detail << " (1e-8)";
}

void c11(Outcome& o) {
  const char* commands[] = {
      "bounds --fixture F3",
      "dual --fixture F4 --seed 7",
      "gramian --fixture F1 --seed 7",
      "norm-equiv --J 5 --samples 50 --seed 11",
      "bpx --J 2..5",
      "solve-poisson --J 2..5",
      "identities --fixture F1",
      "rates --J-fine 8",
  };
  int identical = 0, total = 0;
  for (const char* c : commands) {
    const std::string a = run_cli(c);
    const std::string b = run_cli(c);
    const std::string serial = run_cli(c, "FRAMEKIT_THREADS=1");
    const std::string parallel = run_cli(c, "FRAMEKIT_THREADS=4");
    ++total;
    const bool same = !a.empty() && a == b && a == serial && a == parallel;
    identical += same ? 1 : 0;
    o.require(same, c);
  }
  o.detail << " byte-identical " << identical << "/" << total << " commands (repeat and 1 vs 4 threads)";
}

}  // namespace

int main() {
  std::cout.precision(4);
  criterion(1, "fixture frame bounds", c1);
  criterion(2, "canonical dual frame on random frames", c2);
  criterion(3, "cross-Gramian projector and l2 splitting", c3);
  criterion(4, "minimal-norm coefficients", c4);
  criterion(5, "Jackson rate of the L2 projection", c5);
  criterion(6, "Bernstein growth of Rayleigh quotients", c6);
  criterion(7, "multiscale dual norm equivalence", c7);
  criterion(8, "BPX frame bounds and single-level conditioning", c8);
  criterion(9, "frame-Galerkin Poisson solve", c9);
  criterion(10, "operator representation identities", c10);
  criterion(11, "CLI determinism", c11);
  std::cout << (g_failures == 0 ? "ALL PASS" : std::to_string(g_failures) + " criterion(s) failed") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
