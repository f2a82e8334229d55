// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <variant>
#include <vector>

#include "gpcone/cone.hpp"
#include "gpcone/types.hpp"

namespace gpcone {

// Every proper exposed face of the cone is one of:
//   Trivial  {0}
//   Ray      a single extreme ray spanned by a boundary point f
//   Orthant  { xbar = 0, xtilde_i = 0 for i in I, xtilde >= 0 }, I a proper
//            nonempty subset of {0,...,n-1}
// plus the improper face Full (the cone itself).

struct TrivialFace {};

struct RayFace {
  SplitPoint f;  // boundary point spanning the ray, f != 0
};

struct OrthantFace {
  std::vector<Index> index_set;  // strictly increasing, nonempty, proper
};

struct FullFace {};

using Face = std::variant<TrivialFace, RayFace, OrthantFace, FullFace>;

enum class FaceKind { Trivial, Ray, Orthant, Full };

FaceKind face_kind(const Face& face);
const char* face_kind_name(FaceKind k);

/// Linear dimension of the face: 0 / 1 / n - |I| / m + n.
Index face_dim(const ConeParams& p, const Face& face);

/// Face of the cone exposed by a nonzero z on the boundary of the dual cone:
/// {z}-perp intersected with the cone. If ||zbar|| > tol * scale the face is
/// the ray of f = (-zbar/||zbar||^2, alpha / ztilde); otherwise it is the
/// orthant face with I = { i : ztilde_i > tol * scale }, scale = ||z||_inf.
/// Strict mode rejects z off the dual boundary (ZNotOnDualBoundary) and z = 0
/// (ZIsZero); lenient mode first clamps small negative ztilde entries to 0.
Face expose_face(const ConeParams& p, const SplitPoint& z,
                 double tol = kDefaultTol, bool lenient = false);

/// Whether x lies on the face within tol * max(1, ||x||).
bool face_membership(const ConeParams& p, const Face& face,
                     const SplitPoint& x, double tol = kDefaultTol);

/// Euclidean projection onto the face (closed convex). Ray: clamp the
/// coefficient along f at zero. Orthant: zero out xbar and the I block, clamp
/// the rest. Trivial: zero. Full: project_onto_cone.
SplitPoint project_onto_face(const ConeParams& p, const Face& face,
                             const SplitPoint& x);

double distance_to_face(const ConeParams& p, const Face& face,
                        const SplitPoint& x);

/// Idempotent linear map P with P(cone) = face and P fixing the face,
/// witnessing that the face is projectionally exposed. Ray: P = f u^T with
/// u = (0, ztilde) / <f, (0, ztilde)> in the dual cone. Orthant: coordinate
/// selector. Trivial: zero map. Full: identity.
Matrix idempotent_projection(const ConeParams& p, const Face& face,
                             const SplitPoint& z);

/// Hyperplane-projection geometry behind the face error bounds, for a
/// boundary point v not on the face:
///   w = projection of v onto {z}-perp,
///   u = projection of w onto the face,
///   dist_vw = |<z,v>| / ||z||,
///   dist_uw = ||u - w||.
/// For ray faces dist_uw is also evaluated through the two-case closed form
/// (drop the f component when <f,v> >= 0, keep w otherwise) and the two
/// values are required to agree to 1e-10 relative.
struct FaceGeometry {
  SplitPoint v;
  SplitPoint w;
  SplitPoint u;
  double dist_vw;
  double dist_uw;
};

FaceGeometry lemma_geometry(const ConeParams& p, const SplitPoint& z,
                            const Face& face, const SplitPoint& v,
                            double tol = kDefaultTol);

}  // namespace gpcone
