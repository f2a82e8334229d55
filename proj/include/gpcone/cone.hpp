// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <vector>

#include "gpcone/types.hpp"

namespace gpcone {

/// Weighted geometric mean prod_i xtilde_i^alpha_i, evaluated in the log
/// domain. Components in [-tol_scaled, 0) are clamped to zero (then the
/// product is zero); components below -tol_scaled are rejected. The scale is
/// max(1, ||xtilde||_inf).
double gauge(const ConeParams& p, const Vector& xtilde,
             double tol = kDefaultTol);

/// Classifies x against the cone with relative tolerance tol * max(1, ||x||).
/// slack is gauge(max(xtilde,0)) - ||xbar||.
MembershipReport membership(const ConeParams& p, const SplitPoint& x,
                            double tol = kDefaultTol);

/// Diagonal change of variables mapping the dual cone onto the cone:
/// (zbar, ztilde) -> (zbar, ztilde / alpha) componentwise. z lies in the dual
/// cone exactly when the image lies in the cone.
SplitPoint dual_transform(const ConeParams& p, const SplitPoint& z);

/// membership of dual_transform(z); classifies z against the dual cone.
MembershipReport dual_membership(const ConeParams& p, const SplitPoint& z,
                                 double tol = kDefaultTol);

/// Euclidean projection onto the cone. Exact in the four easy cases
/// (x in cone, -x in dual up to scaling, xbar = 0, x = 0); otherwise reduces
/// by rotational symmetry to the m = 1 cone and solves the one-dimensional
/// optimality condition in the Lagrange multiplier by safeguarded Newton
/// inside a bisection bracket. Throws NonConvergence (with best-iterate
/// diagnostics) after max_iter iterations.
SplitPoint project_onto_cone(const ConeParams& p, const SplitPoint& x,
                             int max_iter = 200);

/// Distance to the cone, ||x - project_onto_cone(x)||.
double distance_to_cone(const ConeParams& p, const SplitPoint& x);

/// Deterministic boundary samples: xtilde log-uniform in [0.1, 10]^n, xbar a
/// uniform direction scaled to the gauge, then the whole point scaled into
/// the ball of the given radius (norms distributed over (0, radius]). Every
/// sample satisfies ||xbar|| = gauge(xtilde) up to roundoff.
std::vector<SplitPoint> sample_boundary(const ConeParams& p,
                                        std::uint64_t seed, int count,
                                        double radius);

/// Deterministic samples of the dual cone (closed under the same seed
/// discipline): images of boundary/interior primal samples under the inverse
/// dual transform, mixed with interior points. Used by property tests and by
/// sampled constants.
std::vector<SplitPoint> sample_dual(const ConeParams& p, std::uint64_t seed,
                                    int count, double radius);

}  // namespace gpcone
