/*
 * Copyright 2026 The FrameKit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libframekit.
 *
 * Objects are opaque handles created by fk_*_create / fk_*_build and released
 * with the matching fk_*_destroy. Every call returns an fk_status; on failure
 * fk_last_error() holds a message for the calling thread. Handles are
 * immutable after creation and can be shared between threads.
 *
 * Vectors are plain double arrays. Matrices are column-major (N x K means
 * element (i, k) at [i + k * N]). A primal vector holds coefficients in the
 * reference hat basis, a dual vector its action on that basis; the API never
 * converts one into the other.
 */

#ifndef FRAMEKIT_FRAMEKIT_H
#define FRAMEKIT_FRAMEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(FRAMEKIT_BUILDING_LIBRARY)
#define FK_API __attribute__((visibility("default")))
#else
#define FK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fk_status {
  FK_OK = 0,
  FK_ERR_DIMENSION_MISMATCH = 1,
  FK_ERR_NOT_POSITIVE_DEFINITE = 2,
  FK_ERR_NO_CONVERGENCE = 3,
  FK_ERR_INCONSISTENT = 4,
  FK_ERR_DOMAIN = 5,
  FK_ERR_NOT_A_FRAME = 6,
  FK_ERR_INCOMPATIBLE_PAIRING = 7,
  FK_ERR_SINGULAR_OPERATOR = 8,
  FK_ERR_INVALID_ARGUMENT = 9,
  FK_ERR_INTERNAL = 10
} fk_status;

typedef struct fk_triple fk_triple;
typedef struct fk_frame fk_frame;
typedef struct fk_dual_frame fk_dual_frame;
typedef struct fk_hierarchy fk_hierarchy;
typedef struct fk_operator fk_operator;

FK_API const char* fk_status_name(fk_status status);
/* Message of the last failed call on this thread ("" if none). */
FK_API const char* fk_last_error(void);
FK_API const char* fk_version(void);

/* ---- Gelfand triples -------------------------------------------------- */

/* Hat triple on (0,1): N = 2^j_fine - 1, 1 <= j_fine <= 14, 0 <= q < 3/2. */
FK_API fk_status fk_triple_build(int j_fine, double q, fk_triple** out);
/* Abstract triple with an n x n H inner product (column-major) and L^2 = I. */
FK_API fk_status fk_triple_from_inner_product(int n, const double* inner_h, fk_triple** out);
FK_API void fk_triple_destroy(fk_triple* t);
FK_API fk_status fk_triple_dim(const fk_triple* t, int* n);
/* Copies the n x n H inner product (column-major). */
FK_API fk_status fk_triple_inner_product(const fk_triple* t, double* out, size_t len);

FK_API fk_status fk_primal_norm(const fk_triple* t, const double* coeffs, int n, double* out);
FK_API fk_status fk_dual_norm(const fk_triple* t, const double* action, int n, double* out);
FK_API fk_status fk_pairing(const double* action, const double* coeffs, int n, double* out);

/* ---- frames ----------------------------------------------------------- */

typedef struct fk_bounds {
  double lower;
  double upper;
  double ratio;
} fk_bounds;

/* N x K elements (column-major), each column a primal vector. */
FK_API fk_status fk_frame_create(const fk_triple* t, const double* elements, int n, int k, fk_frame** out);
/* "F1".."F4". */
FK_API fk_status fk_frame_fixture(const char* name, fk_frame** out);
FK_API void fk_frame_destroy(fk_frame* f);
FK_API fk_status fk_frame_size(const fk_frame* f, int* n, int* k);
FK_API fk_status fk_frame_elements(const fk_frame* f, double* out, size_t len);
/* The triple the frame lives on; release with fk_triple_destroy. */
FK_API fk_status fk_frame_triple(const fk_frame* f, fk_triple** out);
/* Per-column level, position, weight; each array has length k. */
FK_API fk_status fk_frame_labels(const fk_frame* f, int* levels, int* positions, double* weights, int k);

FK_API fk_status fk_frame_analysis(const fk_frame* f, const double* action, int n, double* coeffs, int k);
FK_API fk_status fk_frame_synthesis(const fk_frame* f, const double* coeffs, int k, double* out_coeffs, int n);
FK_API fk_status fk_frame_operator_apply(const fk_frame* f, const double* action, int n, double* out_coeffs);
FK_API fk_status fk_frame_bounds(const fk_frame* f, fk_bounds* out);
/* Riesz basis iff rank == K; bounds are filled only when *is_riesz != 0. */
FK_API fk_status fk_frame_riesz_check(const fk_frame* f, int* is_riesz, fk_bounds* out);
FK_API fk_status fk_frame_min_norm_coefficients(const fk_frame* f, const double* coeffs, int n, double* out, int k);
FK_API fk_status fk_frame_equivalent_inner_product(const fk_frame* f, const double* action_a, const double* action_b,
                                                   int n, double* out);

FK_API fk_status fk_frame_dual(const fk_frame* f, fk_dual_frame** out);
FK_API void fk_dual_frame_destroy(fk_dual_frame* d);
/* N x K dual elements in action representation. */
FK_API fk_status fk_dual_frame_elements(const fk_dual_frame* d, double* out, size_t len);
FK_API fk_status fk_dual_frame_bounds(const fk_dual_frame* d, fk_bounds* out);
FK_API fk_status fk_reconstruct_primal(const fk_frame* f, const fk_dual_frame* d, const double* coeffs, int n,
                                       double* out);
FK_API fk_status fk_reconstruct_dual(const fk_frame* f, const fk_dual_frame* d, const double* action, int n,
                                     double* out);
/* K x K G_{Psi,Psi~}[k,l] = <psi~_l, psi_k> (column-major). */
FK_API fk_status fk_cross_gramian(const fk_frame* f, const fk_dual_frame* d, double* out, size_t len);

typedef struct fk_dual_report {
  fk_bounds primal;
  fk_bounds dual;
  double dual_lower_rel_error;
  double dual_upper_rel_error;
  double inverse_rel_residual;
  double recon_primal_rel_error;
  double recon_dual_rel_error;
  double dual_of_dual_rel_error;
  double range_angle_sine;
} fk_dual_report;

typedef struct fk_projector_report {
  double idempotence;
  double symmetry;
  double svd_projector;
  double swapped;
  double split_synthesis;
  double split_range;
} fk_projector_report;

typedef struct fk_min_norm_report {
  double svd_rel_error;
  int perturbations;
  int violations;
  double min_gap;
} fk_min_norm_report;

FK_API fk_status fk_verify_dual_theorem(const fk_frame* f, uint64_t seed, int samples, fk_dual_report* out);
FK_API fk_status fk_verify_projector(const fk_frame* f, uint64_t seed, int samples, fk_projector_report* out);
FK_API fk_status fk_verify_min_norm(const fk_frame* f, uint64_t seed, int samples, int perturbations,
                                    fk_min_norm_report* out);

/* ---- multiscale ------------------------------------------------------- */

/* Levels 0..J, level j has 2^(j+1) - 1 hats; 1 <= J <= 10. */
FK_API fk_status fk_hierarchy_build(int finest_level, fk_hierarchy** out);
FK_API void fk_hierarchy_destroy(fk_hierarchy* h);
FK_API fk_status fk_hierarchy_level_dims(const fk_hierarchy* h, int* dims, int count);
/* BPX frame {2^{-jq} phi_{j,k}} on the fine H^q triple; 0 <= q < 3/2. */
FK_API fk_status fk_bpx_frame(const fk_hierarchy* h, double q, fk_frame** out);
FK_API fk_status fk_single_scale_system(const fk_hierarchy* h, int level, fk_frame** out);
FK_API fk_status fk_single_scale_stability(const fk_hierarchy* h, int level, fk_bounds* out);

/*
 * Rate reports: levels/values are caller arrays of length `capacity`;
 * *count receives the number of filled entries.
 */
typedef struct fk_rate_fit {
  double slope;
  double constant;
} fk_rate_fit;

/* ||sin(pi x) - P_j sin(pi x)||_{L2} for j in [j_lo, j_hi] (j_hi < 0: J-3). */
FK_API fk_status fk_jackson_rate_sine(const fk_hierarchy* h, int j_lo, int j_hi, int* levels, double* values,
                                      int capacity, int* count, fk_rate_fit* fit);
/* Largest ||v||_{H^q}^2 / ||v||_{L2}^2 over V_j, j = 0..J. */
FK_API fk_status fk_bernstein_rate(const fk_hierarchy* h, double q, int* levels, double* values, int capacity,
                                   int* count, fk_rate_fit* fit);

/* Telescoped-sum / dual-norm ratio for one functional g (fine action). */
FK_API fk_status fk_norm_equivalence_ratio(const fk_hierarchy* h, double q, const double* action, int n,
                                           double* out);

typedef struct fk_norm_equiv_report {
  int samples;
  double r_min;
  double r_max;
  double spread;           /* r_max / r_min */
  double homogeneity_error; /* max |ratio(2g) - ratio(g)| / ratio(g) */
} fk_norm_equiv_report;

FK_API fk_status fk_norm_equivalence_study(const fk_hierarchy* h, double q, uint64_t seed, int samples,
                                           fk_norm_equiv_report* out);

/* ---- operators -------------------------------------------------------- */

typedef struct fk_operator_info {
  int symmetric;
  int elliptic;
  double continuity;
  double ellipticity;
  double inverse_norm;
} fk_operator_info;

FK_API fk_status fk_poisson_operator(const fk_triple* t, fk_operator** out);
/* n x n matrix (column-major) mapping coefficients to actions. */
FK_API fk_status fk_operator_create(const fk_triple* t, const double* matrix, int n, fk_operator** out);
FK_API void fk_operator_destroy(fk_operator* op);
FK_API fk_status fk_operator_info_get(const fk_operator* op, fk_operator_info* out);
/* K x K M = Psi^T L Psi (column-major). */
FK_API fk_status fk_matrix_representation(const fk_frame* f, const fk_operator* op, double* out, size_t len);

typedef struct fk_galerkin_result {
  int iterations;
  double residual;
} fk_galerkin_result;

/* u (length n) and coefficients (length k, may be NULL). */
FK_API fk_status fk_galerkin_solve(const fk_frame* f, const fk_operator* op, const double* action, int n, double tol,
                                   double* u, double* coefficients, int k, fk_galerkin_result* out);

typedef struct fk_identity_report {
  double symmetry;
  double min_eigenvalue;
  double norm;
  double norm_bound;
  double min_nonzero_sv;
  double lower_bound;
  double gram_forward;
  double gram_reversed;
  double kernel_repr;
  double kernel_dual_repr;
  double composition;
  double reconstruction;
  double pseudo_inverse;
} fk_identity_report;

/*
 * All operator-representation identities for (frame, op). The composition
 * check uses the frame itself as the intermediate frame and P = L / ||L||_F
 * read as a coefficient map H -> H.
 */
FK_API fk_status fk_operator_identities(const fk_frame* f, const fk_operator* op, fk_identity_report* out);

typedef struct fk_poisson_report {
  int finest_level;
  int n;
  int k;
  int iterations;
  double residual;
  double h1_vs_direct;
  double h1_vs_exact;
  double coeff_vs_min_norm;
  double galerkin_orthogonality;
} fk_poisson_report;

FK_API fk_status fk_solve_poisson_manufactured(int finest_level, double tol, fk_poisson_report* out);

typedef struct fk_conditioning_row {
  int finest_level;
  int n;
  int k;
  double lower;
  double upper;
  double ratio;
  double kappa_bpx; /* 0 unless q == 1 */
  double kappa_single;
  int cg_bpx;       /* 0 unless q == 1 */
  int cg_single;
} fk_conditioning_row;

FK_API fk_status fk_conditioning_row_compute(int finest_level, double q, double tol, uint64_t seed,
                                             fk_conditioning_row* out);

#ifdef __cplusplus
}
#endif

#endif /* FRAMEKIT_FRAMEKIT_H */
