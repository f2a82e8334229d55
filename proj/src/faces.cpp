// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/faces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpcone {

FaceKind face_kind(const Face& face) {
  if (std::holds_alternative<TrivialFace>(face)) return FaceKind::Trivial;
  if (std::holds_alternative<RayFace>(face)) return FaceKind::Ray;
  if (std::holds_alternative<OrthantFace>(face)) return FaceKind::Orthant;
  return FaceKind::Full;
}

const char* face_kind_name(FaceKind k) {
  switch (k) {
    case FaceKind::Trivial: return "trivial";
    case FaceKind::Ray: return "ray";
    case FaceKind::Orthant: return "orthant";
    case FaceKind::Full: return "full";
  }
  return "unknown";
}

Index face_dim(const ConeParams& p, const Face& face) {
  switch (face_kind(face)) {
    case FaceKind::Trivial: return 0;
    case FaceKind::Ray: return 1;
    case FaceKind::Orthant:
      return p.n() -
             static_cast<Index>(std::get<OrthantFace>(face).index_set.size());
    case FaceKind::Full: return p.dim();
  }
  return 0;
}

namespace {

double inf_scale(const SplitPoint& z) {
  double s = z.xtilde.cwiseAbs().maxCoeff();
  if (z.m() > 0) s = std::max(s, z.xbar.cwiseAbs().maxCoeff());
  return s;
}

void validate_orthant(const ConeParams& p, const OrthantFace& face) {
  const auto& I = face.index_set;
  if (I.empty() || static_cast<Index>(I.size()) >= p.n())
    fail(ErrorCode::InvalidArgument,
         "orthant face index set must be nonempty and proper");
  for (size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 0 || I[k] >= p.n() || (k > 0 && I[k] <= I[k - 1]))
      fail(ErrorCode::InvalidArgument,
           "orthant face index set must be strictly increasing within range");
  }
}

}  // namespace

Face expose_face(const ConeParams& p, const SplitPoint& z, double tol,
                 bool lenient) {
  check_dims(p, z);
  double scale = inf_scale(z);
  if (scale <= 0.0) fail(ErrorCode::ZIsZero, "cannot expose a face with z = 0");

  SplitPoint zz = z;
  if (lenient) {
    for (Index i = 0; i < zz.n(); ++i)
      if (zz.xtilde(i) < 0.0 && zz.xtilde(i) >= -tol * scale) zz.xtilde(i) = 0.0;
  }
  auto rep = dual_membership(p, zz, tol);
  if (rep.status != Membership::Boundary) {
    std::ostringstream os;
    os << "z is " << membership_name(rep.status)
       << " for the dual cone (slack " << rep.slack
       << "), not on its boundary";
    fail(ErrorCode::ZNotOnDualBoundary, os.str());
  }

  double zbar_norm = zz.xbar.norm();
  if (zbar_norm > tol * scale) {
    // Ray case. On the exact dual boundary zbar != 0 forces ztilde > 0;
    // numerically vanishing entries mean z left the dual cone.
    if (zz.xtilde.minCoeff() < 1e-12 * scale)
      fail(ErrorCode::ZNotOnDualBoundary,
           "zbar is nonzero but ztilde has a (numerically) vanishing entry");
    SplitPoint f{-zz.xbar / (zbar_norm * zbar_norm),
                 (p.alpha().array() / zz.xtilde.array()).matrix()};
    return RayFace{f};
  }

  OrthantFace face;
  for (Index i = 0; i < p.n(); ++i)
    if (zz.xtilde(i) > tol * scale) face.index_set.push_back(i);
  if (face.index_set.empty())
    fail(ErrorCode::ZIsZero, "all components of z are below tolerance");
  if (static_cast<Index>(face.index_set.size()) == p.n())
    fail(ErrorCode::ZNotOnDualBoundary,
         "z has zbar = 0 and ztilde > 0, which is dual-interior");
  return face;
}

SplitPoint project_onto_face(const ConeParams& p, const Face& face,
                             const SplitPoint& x) {
  check_dims(p, x);
  switch (face_kind(face)) {
    case FaceKind::Trivial:
      return SplitPoint::zero(p);
    case FaceKind::Ray: {
      const SplitPoint& f = std::get<RayFace>(face).f;
      check_dims(p, f);
      double f2 = f.squared_norm();
      if (f2 <= 0.0)
        fail(ErrorCode::InvalidArgument, "ray face has a zero generator");
      double t = std::max(x.dot(f), 0.0) / f2;
      return f * t;
    }
    case FaceKind::Orthant: {
      const auto& of = std::get<OrthantFace>(face);
      validate_orthant(p, of);
      SplitPoint out{Vector::Zero(p.m()), x.xtilde.cwiseMax(0.0)};
      for (Index i : of.index_set) out.xtilde(i) = 0.0;
      return out;
    }
    case FaceKind::Full:
      return project_onto_cone(p, x);
  }
  fail(ErrorCode::InvalidArgument, "unreachable face kind");
}

double distance_to_face(const ConeParams& p, const Face& face,
                        const SplitPoint& x) {
  return (x - project_onto_face(p, face, x)).norm();
}

bool face_membership(const ConeParams& p, const Face& face,
                     const SplitPoint& x, double tol) {
  check_dims(p, x);
  if (face_kind(face) == FaceKind::Full)
    return membership(p, x, tol).status != Membership::Exterior;
  double band = tol * std::max(1.0, x.norm());
  return distance_to_face(p, face, x) <= band;
}

Matrix idempotent_projection(const ConeParams& p, const Face& face,
                             const SplitPoint& z) {
  const Index d = p.dim();
  switch (face_kind(face)) {
    case FaceKind::Trivial:
      return Matrix::Zero(d, d);
    case FaceKind::Full:
      return Matrix::Identity(d, d);
    case FaceKind::Orthant: {
      const auto& of = std::get<OrthantFace>(face);
      validate_orthant(p, of);
      Matrix P = Matrix::Zero(d, d);
      std::vector<bool> zeroed(static_cast<size_t>(p.n()), false);
      for (Index i : of.index_set) zeroed[static_cast<size_t>(i)] = true;
      for (Index i = 0; i < p.n(); ++i)
        if (!zeroed[static_cast<size_t>(i)]) P(p.m() + i, p.m() + i) = 1.0;
      return P;
    }
    case FaceKind::Ray: {
      check_dims(p, z);
      const SplitPoint& f = std::get<RayFace>(face).f;
      check_dims(p, f);
      // u = (0, ztilde) / <f, (0, ztilde)>; the denominator equals
      // sum_i alpha_i = 1 when f comes from expose_face(z).
      double denom = f.xtilde.dot(z.xtilde);
      if (std::abs(denom) < 1e-12)
        fail(ErrorCode::InvalidArgument,
             "z does not pair with the ray generator");
      Vector u = Vector::Zero(d);
      u.tail(p.n()) = z.xtilde / denom;
      return f.full() * u.transpose();
    }
  }
  fail(ErrorCode::InvalidArgument, "unreachable face kind");
}

FaceGeometry lemma_geometry(const ConeParams& p, const SplitPoint& z,
                            const Face& face, const SplitPoint& v,
                            double tol) {
  check_dims(p, z);
  check_dims(p, v);
  double zn2 = z.squared_norm();
  if (zn2 <= 0.0) fail(ErrorCode::ZIsZero, "lemma_geometry needs z != 0");
  auto rep = membership(p, v, tol);
  if (rep.status != Membership::Boundary) {
    std::ostringstream os;
    os << "v must lie on the cone boundary (got " << membership_name(rep.status)
       << ", slack " << rep.slack << ")";
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (face_membership(p, face, v, tol))
    fail(ErrorCode::VOnFace, "v lies on the face; the ratio is undefined");

  double zv = z.dot(v);
  SplitPoint w = v - z * (zv / zn2);
  SplitPoint u = project_onto_face(p, face, w);
  double dist_vw = std::abs(zv) / std::sqrt(zn2);
  double dist_uw = (u - w).norm();

  if (face_kind(face) == FaceKind::Ray) {
    const SplitPoint& f = std::get<RayFace>(face).f;
    if (std::abs(f.dot(z)) > 1e-8 * std::sqrt(zn2) * f.norm())
      fail(ErrorCode::InvalidArgument,
           "ray generator is not orthogonal to z; mismatched face");
    // Two-case closed form: drop the f component of w when <f,v> >= 0
    // (equivalently <f,w> >= 0), otherwise u = 0 and the distance is ||w||.
    double fv = f.dot(v);
    double formula;
    if (fv >= 0.0) {
      SplitPoint r = w - f * (fv / f.squared_norm());
      formula = r.norm();
    } else {
      formula = w.norm();
    }
    if (std::abs(formula - dist_uw) > 1e-10 * std::max(1.0, dist_uw)) {
      std::ostringstream os;
      os << "closed form " << formula << " disagrees with the direct distance "
         << dist_uw;
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  return {v, w, u, dist_vw, dist_uw};
}

}  // namespace gpcone
