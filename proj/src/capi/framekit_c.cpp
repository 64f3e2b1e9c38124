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

// extern "C" bridge: every entry point catches, records the message in a
// thread-local slot and returns a status code.

#include "framekit/framekit.h"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

#include "framekit/fixtures.hpp"
#include "framekit/frames.hpp"
#include "framekit/multiscale.hpp"
#include "framekit/operator_repr.hpp"

struct fk_triple {
  framekit::TriplePtr ptr;
};

struct fk_frame {
  framekit::FrameSpec frame;
};

struct fk_dual_frame {
  framekit::DualFrameSpec dual;
};

struct fk_hierarchy {
  framekit::MultiscaleHierarchy hy;
};

struct fk_operator {
  framekit::OperatorSpec op;
};

namespace {

using framekit::ErrorCode;
using framekit::Matrix;
using framekit::Vector;

thread_local std::string g_last_error;

fk_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return FK_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotPositiveDefinite: return FK_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::NoConvergence: return FK_ERR_NO_CONVERGENCE;
    case ErrorCode::Inconsistent: return FK_ERR_INCONSISTENT;
    case ErrorCode::DomainError: return FK_ERR_DOMAIN;
    case ErrorCode::NotAFrame: return FK_ERR_NOT_A_FRAME;
    case ErrorCode::IncompatiblePairing: return FK_ERR_INCOMPATIBLE_PAIRING;
    case ErrorCode::SingularOperator: return FK_ERR_SINGULAR_OPERATOR;
    case ErrorCode::InvalidArgument: return FK_ERR_INVALID_ARGUMENT;
  }
  return FK_ERR_INTERNAL;
}

template <class F>
fk_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return FK_OK;
  } catch (const framekit::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return FK_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) framekit::raise(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void need_n(int n, Eigen::Index expected, const char* where) {
  framekit::require_dims(n == expected, where);
}

Vector read_vec(const double* p, int n) {
  need(p, "vector");
  return Eigen::Map<const Vector>(p, n);
}

void write_vec(const Vector& v, double* out) {
  need(out, "output vector");
  std::copy(v.data(), v.data() + v.size(), out);
}

void write_mat(const Matrix& m, double* out, size_t len) {
  need(out, "output matrix");
  if (len < static_cast<size_t>(m.size())) {
    framekit::raise(ErrorCode::DimensionMismatch, "output buffer too small");
  }
  std::copy(m.data(), m.data() + m.size(), out);  // Eigen default storage is column-major
}

fk_bounds to_c(const framekit::FrameBounds& b) { return {b.lower, b.upper, b.ratio}; }

void fill_rate(const framekit::RateReport& r, int* levels, double* values, int capacity, int* count,
               fk_rate_fit* fit) {
  need(count, "count");
  const int m = static_cast<int>(r.levels.size());
  if (capacity < m) framekit::raise(ErrorCode::DimensionMismatch, "rate buffers too small");
  for (int i = 0; i < m; ++i) {
    if (levels) levels[i] = r.levels[static_cast<size_t>(i)];
    if (values) values[i] = r.values[static_cast<size_t>(i)];
  }
  *count = m;
  if (fit) *fit = {r.slope, r.constant};
}

}  // namespace

extern "C" {

const char* fk_status_name(fk_status status) {
  switch (status) {
    case FK_OK: return "OK";
    case FK_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case FK_ERR_NOT_POSITIVE_DEFINITE: return "NotPositiveDefinite";
    case FK_ERR_NO_CONVERGENCE: return "NoConvergence";
    case FK_ERR_INCONSISTENT: return "Inconsistent";
    case FK_ERR_DOMAIN: return "DomainError";
    case FK_ERR_NOT_A_FRAME: return "NotAFrame";
    case FK_ERR_INCOMPATIBLE_PAIRING: return "IncompatiblePairing";
    case FK_ERR_SINGULAR_OPERATOR: return "SingularOperator";
    case FK_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FK_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* fk_last_error(void) { return g_last_error.c_str(); }

const char* fk_version(void) { return "0.1.0"; }

// ---- triples ----------------------------------------------------------------

fk_status fk_triple_build(int j_fine, double q, fk_triple** out) {
  return guarded([&] {
    need(out, "out");
    *out = new fk_triple{framekit::DiscreteGelfandTriple::build(j_fine, q)};
  });
}

fk_status fk_triple_from_inner_product(int n, const double* inner_h, fk_triple** out) {
  return guarded([&] {
    need(out, "out");
    need(inner_h, "inner_h");
    if (n < 1) framekit::raise(ErrorCode::InvalidArgument, "n must be positive");
    const Matrix h = Eigen::Map<const Matrix>(inner_h, n, n);
    if (framekit::symmetry_residual(h) != 0.0) {
      framekit::raise(ErrorCode::InvalidArgument, "inner product matrix is not symmetric");
    }
    *out = new fk_triple{framekit::DiscreteGelfandTriple::from_inner_product(framekit::SymMatrix::from_upper(h))};
  });
}

void fk_triple_destroy(fk_triple* t) { delete t; }

fk_status fk_triple_dim(const fk_triple* t, int* n) {
  return guarded([&] {
    need(t, "triple");
    need(n, "n");
    *n = static_cast<int>(t->ptr->dim());
  });
}

fk_status fk_triple_inner_product(const fk_triple* t, double* out, size_t len) {
  return guarded([&] {
    need(t, "triple");
    write_mat(t->ptr->inner_h().dense(), out, len);
  });
}

fk_status fk_primal_norm(const fk_triple* t, const double* coeffs, int n, double* out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    *out = framekit::primal_norm(*t->ptr, framekit::PrimalVector(read_vec(coeffs, n)));
  });
}

fk_status fk_dual_norm(const fk_triple* t, const double* action, int n, double* out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    *out = framekit::dual_norm(*t->ptr, framekit::DualVector(read_vec(action, n)));
  });
}

fk_status fk_pairing(const double* action, const double* coeffs, int n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = framekit::pairing(framekit::DualVector(read_vec(action, n)), framekit::PrimalVector(read_vec(coeffs, n)));
  });
}

// ---- frames -----------------------------------------------------------------

fk_status fk_frame_create(const fk_triple* t, const double* elements, int n, int k, fk_frame** out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    need(elements, "elements");
    if (n < 1 || k < 1) framekit::raise(ErrorCode::InvalidArgument, "n and k must be positive");
    need_n(n, t->ptr->dim(), "fk_frame_create");
    Matrix e = Eigen::Map<const Matrix>(elements, n, k);
    *out = new fk_frame{framekit::FrameSpec(t->ptr, std::move(e))};
  });
}

fk_status fk_frame_fixture(const char* name, fk_frame** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new fk_frame{framekit::fixtures::by_name(name)};
  });
}

void fk_frame_destroy(fk_frame* f) { delete f; }

fk_status fk_frame_size(const fk_frame* f, int* n, int* k) {
  return guarded([&] {
    need(f, "frame");
    if (n) *n = static_cast<int>(f->frame.dim());
    if (k) *k = static_cast<int>(f->frame.size());
  });
}

fk_status fk_frame_elements(const fk_frame* f, double* out, size_t len) {
  return guarded([&] {
    need(f, "frame");
    write_mat(f->frame.elements(), out, len);
  });
}

fk_status fk_frame_triple(const fk_frame* f, fk_triple** out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    *out = new fk_triple{f->frame.triple_ptr()};
  });
}

fk_status fk_frame_labels(const fk_frame* f, int* levels, int* positions, double* weights, int k) {
  return guarded([&] {
    need(f, "frame");
    need_n(k, f->frame.size(), "fk_frame_labels");
    const auto& labels = f->frame.labels();
    for (int i = 0; i < k; ++i) {
      const auto& l = labels[static_cast<size_t>(i)];
      if (levels) levels[i] = l.level;
      if (positions) positions[i] = l.position;
      if (weights) weights[i] = l.weight;
    }
  });
}

fk_status fk_frame_analysis(const fk_frame* f, const double* action, int n, double* coeffs, int k) {
  return guarded([&] {
    need(f, "frame");
    need_n(k, f->frame.size(), "fk_frame_analysis");
    write_vec(framekit::analysis(f->frame, framekit::DualVector(read_vec(action, n))), coeffs);
  });
}

fk_status fk_frame_synthesis(const fk_frame* f, const double* coeffs, int k, double* out_coeffs, int n) {
  return guarded([&] {
    need(f, "frame");
    need_n(n, f->frame.dim(), "fk_frame_synthesis");
    write_vec(framekit::synthesis(f->frame, read_vec(coeffs, k)).coeffs(), out_coeffs);
  });
}

fk_status fk_frame_operator_apply(const fk_frame* f, const double* action, int n, double* out_coeffs) {
  return guarded([&] {
    need(f, "frame");
    write_vec(framekit::frame_operator_apply(f->frame, framekit::DualVector(read_vec(action, n))).coeffs(),
              out_coeffs);
  });
}

fk_status fk_frame_bounds(const fk_frame* f, fk_bounds* out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    *out = to_c(framekit::frame_bounds(f->frame));
  });
}

fk_status fk_frame_riesz_check(const fk_frame* f, int* is_riesz, fk_bounds* out) {
  return guarded([&] {
    need(f, "frame");
    need(is_riesz, "is_riesz");
    const framekit::RieszCheck rc = framekit::riesz_check(f->frame);
    *is_riesz = rc.is_riesz ? 1 : 0;
    if (out && rc.is_riesz) *out = {*rc.lower, *rc.upper, *rc.upper / *rc.lower};
  });
}

fk_status fk_frame_min_norm_coefficients(const fk_frame* f, const double* coeffs, int n, double* out, int k) {
  return guarded([&] {
    need(f, "frame");
    need_n(k, f->frame.size(), "fk_frame_min_norm_coefficients");
    write_vec(framekit::min_norm_coefficients(f->frame, framekit::PrimalVector(read_vec(coeffs, n))), out);
  });
}

fk_status fk_frame_equivalent_inner_product(const fk_frame* f, const double* action_a, const double* action_b, int n,
                                            double* out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    *out = framekit::equivalent_inner_product(f->frame, framekit::DualVector(read_vec(action_a, n)),
                                              framekit::DualVector(read_vec(action_b, n)));
  });
}

fk_status fk_frame_dual(const fk_frame* f, fk_dual_frame** out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    *out = new fk_dual_frame{framekit::dual_frame(f->frame)};
  });
}

void fk_dual_frame_destroy(fk_dual_frame* d) { delete d; }

fk_status fk_dual_frame_elements(const fk_dual_frame* d, double* out, size_t len) {
  return guarded([&] {
    need(d, "dual frame");
    write_mat(d->dual.elements(), out, len);
  });
}

fk_status fk_dual_frame_bounds(const fk_dual_frame* d, fk_bounds* out) {
  return guarded([&] {
    need(d, "dual frame");
    need(out, "out");
    *out = to_c(framekit::frame_bounds(d->dual));
  });
}

fk_status fk_reconstruct_primal(const fk_frame* f, const fk_dual_frame* d, const double* coeffs, int n, double* out) {
  return guarded([&] {
    need(f, "frame");
    need(d, "dual frame");
    write_vec(framekit::reconstruct_primal(f->frame, d->dual, framekit::PrimalVector(read_vec(coeffs, n))).coeffs(),
              out);
  });
}

fk_status fk_reconstruct_dual(const fk_frame* f, const fk_dual_frame* d, const double* action, int n, double* out) {
  return guarded([&] {
    need(f, "frame");
    need(d, "dual frame");
    write_vec(framekit::reconstruct_dual(f->frame, d->dual, framekit::DualVector(read_vec(action, n))).action(), out);
  });
}

fk_status fk_cross_gramian(const fk_frame* f, const fk_dual_frame* d, double* out, size_t len) {
  return guarded([&] {
    need(f, "frame");
    need(d, "dual frame");
    write_mat(framekit::cross_gramian(f->frame, d->dual), out, len);
  });
}

fk_status fk_verify_dual_theorem(const fk_frame* f, uint64_t seed, int samples, fk_dual_report* out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    std::mt19937_64 rng(seed);
    const auto r = framekit::verify_dual_theorem(f->frame, rng, samples);
    *out = {to_c(r.primal),
            to_c(r.dual),
            r.dual_lower_rel_error,
            r.dual_upper_rel_error,
            r.inverse_rel_residual,
            r.recon_primal_rel_error,
            r.recon_dual_rel_error,
            r.dual_of_dual_rel_error,
            r.range_angle_sine};
  });
}

fk_status fk_verify_projector(const fk_frame* f, uint64_t seed, int samples, fk_projector_report* out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    std::mt19937_64 rng(seed);
    const auto r = framekit::verify_projector(f->frame, rng, samples);
    *out = {r.idempotence, r.symmetry, r.svd_projector, r.swapped, r.split_synthesis, r.split_range};
  });
}

fk_status fk_verify_min_norm(const fk_frame* f, uint64_t seed, int samples, int perturbations,
                             fk_min_norm_report* out) {
  return guarded([&] {
    need(f, "frame");
    need(out, "out");
    std::mt19937_64 rng(seed);
    const auto r = framekit::verify_min_norm(f->frame, rng, samples, perturbations);
    *out = {r.svd_rel_error, r.perturbations, r.violations, r.min_gap};
  });
}

// ---- multiscale -------------------------------------------------------------

fk_status fk_hierarchy_build(int finest_level, fk_hierarchy** out) {
  return guarded([&] {
    need(out, "out");
    *out = new fk_hierarchy{framekit::MultiscaleHierarchy::build(finest_level)};
  });
}

void fk_hierarchy_destroy(fk_hierarchy* h) { delete h; }

fk_status fk_hierarchy_level_dims(const fk_hierarchy* h, int* dims, int count) {
  return guarded([&] {
    need(h, "hierarchy");
    need(dims, "dims");
    const auto& levels = h->hy.levels();
    need_n(count, static_cast<Eigen::Index>(levels.size()), "fk_hierarchy_level_dims");
    for (size_t i = 0; i < levels.size(); ++i) dims[i] = static_cast<int>(levels[i].dim);
  });
}

fk_status fk_bpx_frame(const fk_hierarchy* h, double q, fk_frame** out) {
  return guarded([&] {
    need(h, "hierarchy");
    need(out, "out");
    *out = new fk_frame{framekit::bpx_frame(h->hy, q)};
  });
}

fk_status fk_single_scale_system(const fk_hierarchy* h, int level, fk_frame** out) {
  return guarded([&] {
    need(h, "hierarchy");
    need(out, "out");
    *out = new fk_frame{framekit::single_scale_system(h->hy, level)};
  });
}

fk_status fk_single_scale_stability(const fk_hierarchy* h, int level, fk_bounds* out) {
  return guarded([&] {
    need(h, "hierarchy");
    need(out, "out");
    const auto b = framekit::single_scale_stability(h->hy, level);
    *out = {b.lower, b.upper, b.upper / b.lower};
  });
}

fk_status fk_jackson_rate_sine(const fk_hierarchy* h, int j_lo, int j_hi, int* levels, double* values, int capacity,
                               int* count, fk_rate_fit* fit) {
  return guarded([&] {
    need(h, "hierarchy");
    const auto r = framekit::jackson_rate(h->hy, [](double x) { return std::sin(M_PI * x); }, j_lo, j_hi);
    fill_rate(r, levels, values, capacity, count, fit);
  });
}

fk_status fk_bernstein_rate(const fk_hierarchy* h, double q, int* levels, double* values, int capacity, int* count,
                            fk_rate_fit* fit) {
  return guarded([&] {
    need(h, "hierarchy");
    fill_rate(framekit::bernstein_rate(h->hy, q), levels, values, capacity, count, fit);
  });
}

fk_status fk_norm_equivalence_ratio(const fk_hierarchy* h, double q, const double* action, int n, double* out) {
  return guarded([&] {
    need(h, "hierarchy");
    need(out, "out");
    *out = framekit::norm_equivalence_ratio(h->hy, q, framekit::DualVector(read_vec(action, n)));
  });
}

fk_status fk_norm_equivalence_study(const fk_hierarchy* h, double q, uint64_t seed, int samples,
                                    fk_norm_equiv_report* out) {
  return guarded([&] {
    need(h, "hierarchy");
    need(out, "out");
    if (samples < 1) framekit::raise(ErrorCode::InvalidArgument, "samples must be positive");
    const auto fine_q = framekit::DiscreteGelfandTriple::build(h->hy.j_fine(), q);
    std::mt19937_64 rng(seed);
    fk_norm_equiv_report r{samples, INFINITY, 0.0, 0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
      const Vector a = framekit::random_vector(rng, h->hy.fine_dim());
      const double ratio = framekit::norm_equivalence_ratio(h->hy, *fine_q, framekit::DualVector(a));
      const double scaled = framekit::norm_equivalence_ratio(h->hy, *fine_q, framekit::DualVector(2.0 * a));
      r.r_min = std::min(r.r_min, ratio);
      r.r_max = std::max(r.r_max, ratio);
      r.homogeneity_error = std::max(r.homogeneity_error, std::abs(scaled - ratio) / ratio);
    }
    r.spread = r.r_max / r.r_min;
    *out = r;
  });
}

// ---- operators --------------------------------------------------------------

fk_status fk_poisson_operator(const fk_triple* t, fk_operator** out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    *out = new fk_operator{framekit::poisson_operator(t->ptr)};
  });
}

fk_status fk_operator_create(const fk_triple* t, const double* matrix, int n, fk_operator** out) {
  return guarded([&] {
    need(t, "triple");
    need(out, "out");
    need(matrix, "matrix");
    need_n(n, t->ptr->dim(), "fk_operator_create");
    *out = new fk_operator{framekit::OperatorSpec(t->ptr, Eigen::Map<const Matrix>(matrix, n, n))};
  });
}

void fk_operator_destroy(fk_operator* op) { delete op; }

fk_status fk_operator_info_get(const fk_operator* op, fk_operator_info* out) {
  return guarded([&] {
    need(op, "operator");
    need(out, "out");
    *out = {op->op.symmetric() ? 1 : 0, op->op.elliptic() ? 1 : 0, op->op.continuity(), op->op.ellipticity(),
            op->op.inverse_norm()};
  });
}

fk_status fk_matrix_representation(const fk_frame* f, const fk_operator* op, double* out, size_t len) {
  return guarded([&] {
    need(f, "frame");
    need(op, "operator");
    write_mat(framekit::matrix_representation(f->frame, op->op, f->frame), out, len);
  });
}

fk_status fk_galerkin_solve(const fk_frame* f, const fk_operator* op, const double* action, int n, double tol,
                            double* u, double* coefficients, int k, fk_galerkin_result* out) {
  return guarded([&] {
    need(f, "frame");
    need(op, "operator");
    const auto sol = framekit::galerkin_solve(f->frame, op->op, framekit::DualVector(read_vec(action, n)), tol);
    write_vec(sol.solution.coeffs(), u);
    if (coefficients) {
      need_n(k, f->frame.size(), "fk_galerkin_solve");
      write_vec(sol.coefficients, coefficients);
    }
    if (out) *out = {sol.iterations, sol.residual};
  });
}

fk_status fk_operator_identities(const fk_frame* f, const fk_operator* op, fk_identity_report* out) {
  return guarded([&] {
    need(f, "frame");
    need(op, "operator");
    need(out, "out");
    const auto& frame = f->frame;
    const auto& o = op->op;
    const auto rb = framekit::representation_bounds(frame, o);
    const auto gi = framekit::gram_identity_check(frame, o);
    const framekit::LinearMap<framekit::PrimalVector, framekit::PrimalVector> p(o.triple_ptr(),
                                                                              o.matrix() / o.matrix().norm());
    fk_identity_report r{};
    r.symmetry = rb.symmetry;
    r.min_eigenvalue = rb.min_eigenvalue;
    r.norm = rb.norm;
    r.norm_bound = rb.upper_bound;
    r.min_nonzero_sv = rb.min_nonzero_sv;
    r.lower_bound = rb.lower_bound;
    r.gram_forward = gi.forward;
    r.gram_reversed = gi.reversed;
    r.kernel_repr = gi.kernel_repr;
    r.kernel_dual_repr = gi.kernel_dual_repr;
    r.composition = framekit::composition_check(frame, frame, o, p);
    r.reconstruction = framekit::operator_reconstruction_check(frame, o);
    r.pseudo_inverse = framekit::pseudo_inverse_identity_check(frame, o);
    *out = r;
  });
}

fk_status fk_solve_poisson_manufactured(int finest_level, double tol, fk_poisson_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto s = framekit::solve_poisson_manufactured(finest_level, tol);
    *out = {s.finest_level,      static_cast<int>(s.n), static_cast<int>(s.k), s.iterations, s.residual,
            s.h1_vs_direct,      s.h1_vs_exact,         s.coeff_vs_min_norm,   s.galerkin_orthogonality};
  });
}

fk_status fk_conditioning_row_compute(int finest_level, double q, double tol, uint64_t seed, fk_conditioning_row* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = framekit::conditioning_row(finest_level, q, tol, seed);
    *out = {r.finest_level, static_cast<int>(r.n), static_cast<int>(r.k), r.lower,     r.upper,
            r.ratio,        r.kappa_bpx,           r.kappa_single,        r.cg_bpx,    r.cg_single};
  });
}

}  // extern "C"
