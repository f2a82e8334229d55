// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpcone/error_bounds.hpp"
#include "gpcone/faces.hpp"
#include "gpcone/types.hpp"

namespace gpcone {

/// Affine set L + a given by a (possibly empty) linearly independent basis of
/// L and an offset a. Construction orthonormalizes the basis and rejects
/// dependent inputs (singular value below 1e-10 relative).
class AffineSet {
 public:
  AffineSet(const std::vector<Vector>& basis, Vector offset);

  static AffineSet whole_space(Index dim);
  static AffineSet point(Vector offset);  // L = {0}
  /// Hyperplane {z}-perp through the origin.
  static AffineSet orthogonal_complement(const Vector& z);

  Index dim() const { return offset_.size(); }
  Index rank() const { return onb_.cols(); }
  const Matrix& basis() const { return onb_; }  // orthonormal columns
  const Vector& offset() const { return offset_; }

  Vector project(const Vector& x) const;  // onto L + a
  double distance(const Vector& x) const;
  /// Orthonormal basis of L-perp (complement of the direction space).
  Matrix normal_basis() const;

 private:
  Matrix onb_;     // dim x rank, orthonormal columns spanning L
  Vector offset_;  // a
};

/// Searches for a point of (L + a) with strictly positive cone slack by
/// projected supergradient ascent of
///   x -> min( min_i xtilde_i, gauge(xtilde) - ||xbar|| )
/// over L + a, with seeded restarts. Returns a point with slack > 1e-7 or
/// nothing once the budget is spent; absence is a value, not an error.
std::optional<SplitPoint> interior_feasible(const ConeParams& p,
                                            const AffineSet& affine,
                                            int budget = 4000,
                                            std::uint64_t seed = 0);

/// Whether z certifies a facial reduction step: z in the dual cone (within
/// tol), z orthogonal to L and to a, and z nonzero.
bool verify_exposing_vector(const ConeParams& p, const AffineSet& affine,
                            const SplitPoint& z, double tol = kDefaultTol);

/// Searches S = L-perp intersect {a}-perp for a nonzero dual vector.
/// Phase 1 restricts to zbar = 0 and solves the linear feasibility
/// "ztilde >= 0, sum ztilde = 1, (0, ztilde) in S" exactly by vertex
/// enumeration (maximizing min_i ztilde_i, so the face it exposes is as
/// small as the slice allows). Phase 2 maximizes the dual slack over the
/// unit sphere of S by multi-start projected ascent. The result is always
/// re-verified; returns nothing if both phases fail.
std::optional<SplitPoint> find_exposing_vector(const ConeParams& p,
                                               const AffineSet& affine,
                                               int budget = 4000,
                                               std::uint64_t seed = 0);

enum class Provenance { InteriorPoint, SuppliedZ, FoundZ, ZeroFace };

const char* provenance_name(Provenance p);

/// One-step facial reduction certificate for the pair (cone, L + a), feasible
/// by standing assumption. d_pps = 0: an interior feasible point exists and
/// the bound is Lipschitz with a sampled constant. d_pps = 1: exposing_z
/// (stored with unit norm) cuts the cone down to `face`; the bound is
/// Hoelderian with the face exponent and constant
///   ray:     max{2 sqrt(eta), 2/gamma}
///   orthant: max{2 eta^{1-beta}, 2/gamma}
///   trivial: Lipschitz constant from the interior dual vector.
/// hoffman bounds the final polyhedral step dist(x, face ∩ (L+a)) <=
/// hoffman * max(dist(x, face), dist(x, L+a)); it is estimated by sampling
/// with a factor 2 safety margin.
struct Certificate {
  int d_pps = 0;
  Face face = FullFace{};
  std::optional<SplitPoint> exposing_z;
  double exponent = 1.0;
  double constant = 0.0;
  double hoffman = 1.0;
  double eta = 1.0;
  Provenance provenance = Provenance::InteriorPoint;
  std::optional<GammaEstimate> gamma;
  std::uint64_t seed = 0;
};

/// Builds the certificate: interior search first, then exposing-vector
/// search (or the supplied z, which is verified). Throws SearchExhausted if
/// no interior point and no exposing vector is found within the budget.
Certificate certify(const ConeParams& p, const AffineSet& affine,
                    double eta = 1.0, int budget = 4000,
                    std::uint64_t seed = 0, int gamma_samples = 10000,
                    const std::optional<SplitPoint>& supplied_z = std::nullopt);

struct ErrorBoundResult {
  double bound;
  double dist_affine;
  double dist_cone;
};

/// Evaluates the certified bound at x with ||x|| <= eta (XOutsideBall):
///   d_pps = 0: constant * max(dist_affine, dist_cone)
///   d_pps = 1: hoffman * max(psi(eps, ||x||), dist_affine) with
///              eps = max(dist_affine, dist_cone); for the trivial face psi
///              is the Lipschitz kernel constant * eps.
/// The result upper-bounds dist(x, feasible set).
ErrorBoundResult error_bound_apply(const ConeParams& p,
                                   const Certificate& cert,
                                   const AffineSet& affine,
                                   const SplitPoint& x);

}  // namespace gpcone
