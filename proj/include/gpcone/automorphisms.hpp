// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <vector>

#include "gpcone/types.hpp"

namespace gpcone {

/// Whether the cone is the rotated second-order cone in disguise: n = 2 and
/// alpha = (1/2, 1/2) (to 1e-12 after normalization). All structural results
/// below exclude this case; its automorphism group is strictly larger.
bool is_soc_case(const ConeParams& p);

/// Block-structured automorphism A = blockdiag(B, E): E is a generalized
/// permutation matrix with positive entries whose permutation preserves the
/// alpha classes, B = c Q with Q orthogonal and c the alpha-weighted
/// geometric mean of the E entries.
struct AutElement {
  Matrix B;                    // m x m, equal to scale_factor * orthogonal
  std::vector<Index> perm;     // row k of E has its entry in column perm[k]
  Vector scales;               // positive entries of E, by row
  double scale_factor = 1.0;   // c = prod_k scales_k^{alpha_{perm[k]}}

  Matrix to_matrix(const ConeParams& p) const;
  AutElement inverse(const ConeParams& p) const;
  AutElement compose(const ConeParams& p, const AutElement& other) const;
};

/// Decides membership in the automorphism group. Outside the SOC case the
/// block characterization is checked exactly (off-diagonal blocks vanish, E
/// is a positive generalized permutation respecting alpha classes, B^T B =
/// c^2 I). In the SOC case the test falls back to a sampled geometric
/// necessary condition (invertibility plus boundary preservation on seeded
/// samples); it is sound on rejection but may accept near-misses, which is
/// documented behavior.
bool is_automorphism(const ConeParams& p, const Matrix& A,
                     double tol = kDefaultTol);

/// Seeded random automorphism: alpha-class-respecting permutation, scales
/// log-uniform in [0.1, 10], B a scaled orthogonal factor from a seeded
/// Gaussian QR (deterministic sign convention).
AutElement sample_automorphism(const ConeParams& p, std::uint64_t seed);

/// Lie algebra element blockdiag(G, Diag(h)) with G + G^T = 2 (alpha . h) I.
struct LieElement {
  Matrix G;  // m x m
  Vector h;  // n
};

Matrix lie_to_matrix(const ConeParams& p, const LieElement& U);

/// Basis of the Lie algebra outside the SOC case: (G = alpha_i I, h = e_i)
/// for each i, plus the elementary skew-symmetric pairs (G = E_pq - E_qp,
/// h = 0). Throws SocCaseUnsupported in the SOC case.
std::vector<LieElement> lie_basis(const ConeParams& p);

/// Closed-form dimension of the automorphism group's Lie algebra:
/// (m^2 + 3m + 4)/2 in the SOC case, n + m(m-1)/2 otherwise.
Index lie_dim(const ConeParams& p);

/// Dimension computed as the nullity of the linear constraint system
/// G + G^T - 2 (alpha . h) I = 0 over (G, h), via SVD with threshold 1e-10.
/// Non-SOC only (SocCaseUnsupported).
Index lie_dim_numeric(const ConeParams& p);

/// Matrix exponential by scaling and squaring with a Pade approximant.
Matrix matrix_exp(const Matrix& A);

/// Validates the Lie constraint on U (ConstraintViolated otherwise), then
/// checks that exp(t U) passes is_automorphism for every t and that the
/// Euclidean block satisfies ||exp(tG) x|| = e^{t alpha.h} ||x||.
bool exp_check(const ConeParams& p, const LieElement& U,
               const std::vector<double>& ts, double tol = 1e-8);

struct ConeClassification {
  bool irreducible = true;  // never splits as a nontrivial direct product
  bool homogeneous = false;
  bool perfect = false;     // aut_dim >= m + n
  bool self_dual = true;    // witnessed by blockdiag(I, Diag(alpha))
  Index aut_dim = 0;
  bool is_soc_case = false;
};

/// Classification: irreducible and (linearly) self-dual always; homogeneous
/// exactly in the SOC case; perfect in the SOC case or when m >= 3;
/// aut_dim = lie_dim.
ConeClassification classify(const ConeParams& p);

}  // namespace gpcone
