// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/error_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gpcone/rng.hpp"

namespace gpcone {

double exponent_for_face(const ConeParams& p, const Face& face) {
  switch (face_kind(face)) {
    case FaceKind::Ray: return 0.5;
    case FaceKind::Orthant: {
      double beta = 0.0;
      for (Index i : std::get<OrthantFace>(face).index_set)
        beta += p.alpha(i);
      return beta;
    }
    case FaceKind::Trivial:
    case FaceKind::Full:
      return 1.0;
  }
  return 1.0;
}

namespace {

double scale_of(const SplitPoint& z) {
  return std::max(z.xbar.cwiseAbs().maxCoeff(), z.xtilde.cwiseAbs().maxCoeff());
}

std::vector<Index> orthant_index_set(const ConeParams& p, const SplitPoint& z,
                                     double tol) {
  double scale = scale_of(z);
  std::vector<Index> I;
  for (Index i = 0; i < p.n(); ++i)
    if (z.xtilde(i) > tol * scale) I.push_back(i);
  return I;
}

}  // namespace

double gamma_lower_bound_orthant(const ConeParams& p, const SplitPoint& z,
                                 double eta, double tol) {
  check_dims(p, z);
  if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
  double scale = scale_of(z);
  if (scale <= 0.0) fail(ErrorCode::ZIsZero, "z = 0 exposes no orthant face");
  if (z.xbar.norm() > tol * scale)
    fail(ErrorCode::ZBarNotZero,
         "the closed-form bound needs zbar = 0 (orthant face)");
  auto I = orthant_index_set(p, z, tol);
  if (I.empty()) fail(ErrorCode::ZIsZero, "ztilde vanishes below tolerance");
  if (static_cast<Index>(I.size()) == p.n())
    fail(ErrorCode::ZNotOnDualBoundary, "z is dual-interior, no orthant face");
  double beta = 0.0;
  double min_zt = std::numeric_limits<double>::infinity();
  for (Index i : I) {
    beta += p.alpha(i);
    min_zt = std::min(min_zt, z.xtilde(i));
  }
  double nn = static_cast<double>(p.n());
  return std::pow(min_zt, beta) /
         (std::pow(eta, 1.0 - beta) * (nn + 1.0 + std::sqrt(nn)) *
          std::pow(z.norm(), beta));
}

GammaEstimate gamma_estimate(const ConeParams& p, const SplitPoint& z,
                             double eta, int samples, std::uint64_t seed) {
  check_dims(p, z);
  if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
  if (samples <= 0) fail(ErrorCode::InvalidArgument, "need at least one sample");
  Face face = expose_face(p, z);
  double e = exponent_for_face(p, face);
  double zn2 = z.squared_norm();

  std::vector<SplitPoint> points =
      sample_boundary(p, derive_seed(seed, 0xb0), samples, eta);
  // The infimum concentrates at the ball radius (the ratio decays with the
  // sample norm), so pin half of the samples there.
  for (size_t j = 0; j < points.size(); j += 2)
    points[j] = points[j] * (eta / points[j].norm());

  if (face_kind(face) == FaceKind::Ray) {
    // Enrich with boundary points collapsing onto the ray, where the limit
    // of the ratio is approached.
    const SplitPoint& f = std::get<RayFace>(face).f;
    int extra = samples / 2;
    for (int j = 0; j < extra; ++j) {
      Rng rng(derive_seed(seed, 0xf00 + static_cast<std::uint64_t>(j)));
      double delta = rng.log_uniform(1e-6, 0.3);
      Vector xt(p.n());
      for (Index i = 0; i < p.n(); ++i)
        xt(i) = f.xtilde(i) * std::exp(delta * rng.normal());
      Vector dir = f.xbar + delta * rng.normal_vector(p.m()) * f.xbar.norm();
      double dn = dir.norm();
      if (dn <= 0.0) continue;
      dir /= dn;
      SplitPoint v{gauge(p, xt) * dir, xt};
      double t = j % 2 == 0 ? 1.0 : 1.0 - rng.uniform();
      points.push_back(v * (eta * t / v.norm()));
    }
  }

  double best = std::numeric_limits<double>::infinity();
  int admissible = 0;
  for (const SplitPoint& v : points) {
    double vscale = std::max(1.0, v.norm());
    if (distance_to_face(p, face, v) <= 1e-12 * vscale) continue;
    double zv = z.dot(v);
    SplitPoint w = v - z * (zv / zn2);
    SplitPoint u = project_onto_face(p, face, w);
    double du = (u - w).norm();
    if (du <= 1e-13 * vscale) continue;
    double dv = (v - w).norm();
    // Samples this close to the hyperplane have lost their true gap to
    // cancellation; the measured ratio would be spurious.
    if (dv <= 1e-14 * vscale) continue;
    ++admissible;
    best = std::min(best, std::pow(dv, e) / du);
  }
  if (admissible == 0)
    fail(ErrorCode::NoAdmissibleSamples,
         "every sample landed on the face or in the hyperplane");

  GammaEstimate out;
  out.eta = eta;
  out.sampled_value = best;
  out.sample_count = admissible;
  out.seed = seed;
  if (face_kind(face) == FaceKind::Orthant)
    out.analytic_lower = gamma_lower_bound_orthant(p, z, eta);
  return out;
}

FrfSpec make_frf_spec(const ConeParams& p, const SplitPoint& z,
                      const GammaEstimate& gamma) {
  Face face = expose_face(p, z);
  if (!(gamma.sampled_value > 0.0) || !(gamma.eta > 0.0))
    fail(ErrorCode::InvalidArgument, "gamma estimate is not positive");
  FrfSpec spec;
  spec.kind = face_kind(face) == FaceKind::Ray ? FrfKind::RayFace
                                               : FrfKind::OrthantFace;
  spec.exponent = exponent_for_face(p, face);
  spec.norm_z = z.norm();
  spec.gamma = gamma;
  return spec;
}

double frf_evaluate(const FrfSpec& spec, double eps, double t) {
  if (!(eps >= 0.0) || !(t >= 0.0))
    fail(ErrorCode::InvalidArgument, "frf arguments must be nonnegative");
  if (eps == 0.0) return 0.0;
  double g = spec.gamma.conservative();
  if (!(g > 0.0)) fail(ErrorCode::InvalidArgument, "nonpositive gamma");
  double s = std::max(eps, eps / spec.norm_z);
  double coeff;
  if (spec.kind == FrfKind::RayFace)
    coeff = std::max(2.0 * std::sqrt(t), 2.0 / g);
  else
    coeff = std::max(2.0 * std::pow(t, 1.0 - spec.exponent), 2.0 / g);
  return s + coeff * std::pow(eps + s, spec.exponent);
}

HolderBoundCheck holder_bound_check(const ConeParams& p, const SplitPoint& z,
                                    const SplitPoint& q, double eta,
                                    const GammaEstimate& gamma, double tol) {
  check_dims(p, q);
  if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
  Face face = expose_face(p, z);
  double zn = z.norm();
  if (std::abs(z.dot(q)) > kDefaultTol * zn * std::max(1.0, q.norm()))
    fail(ErrorCode::QNotInHyperplane, "q is not orthogonal to z");
  if (q.norm() > eta * (1.0 + 1e-12))
    fail(ErrorCode::QOutsideBall, "q lies outside the ball of radius eta");
  double g = gamma.conservative();
  if (!(g > 0.0)) fail(ErrorCode::InvalidArgument, "nonpositive gamma");
  double e = exponent_for_face(p, face);
  double constant = face_kind(face) == FaceKind::Ray
                        ? std::max(2.0 * std::sqrt(eta), 2.0 / g)
                        : std::max(2.0 * std::pow(eta, 1.0 - e), 2.0 / g);
  double lhs = distance_to_face(p, face, q);
  double rhs = constant * std::pow(distance_to_cone(p, q), e);
  return {lhs, rhs, lhs <= rhs + tol};
}

std::vector<double> default_epsilons() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

namespace {

void push_curve_point(const ConeParams& p, const Face& face, double e,
                      const SplitPoint& q, const SplitPoint& pe,
                      double gap_bound, WitnessCurve& curve) {
  double dc = distance_to_cone(p, q);
  // The additive floor absorbs projector roundoff at tiny gaps.
  if (dc > gap_bound * (1.0 + 1e-9) + 1e-13)
    fail(ErrorCode::ConstraintViolated,
         "projector distance exceeds the certified witness gap");
  double df = distance_to_face(p, face, q);
  curve.q_points.push_back(q);
  curve.p_points.push_back(pe);
  curve.dist_to_cone.push_back(dc);
  curve.dist_to_face.push_back(df);
  curve.ratio.push_back(std::pow(dc, e) / df);
}

}  // namespace

WitnessCurve witness_curve_ray(const ConeParams& p, const SplitPoint& z,
                               const std::vector<double>& epsilons) {
  check_dims(p, z);
  Face face = expose_face(p, z);
  if (face_kind(face) != FaceKind::Ray)
    fail(ErrorCode::InvalidArgument, "z does not expose a ray face");
  const SplitPoint& f = std::get<RayFace>(face).f;
  double zn = z.norm();
  double zbar_norm = z.xbar.norm();
  const double a0 = p.alpha(0);
  const double a1 = p.alpha(1);

  WitnessCurve curve;
  curve.kind = FrfKind::RayFace;
  curve.epsilons = epsilons;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < a0)) {
      std::ostringstream os;
      os << "eps = " << eps << " outside (0, alpha_1 = " << a0 << ")";
      fail(ErrorCode::EpsOutOfRange, os.str());
    }
    SplitPoint q = f;
    q.xtilde(0) = (a0 - eps) / z.xtilde(0);
    q.xtilde(1) = (a1 + eps) / z.xtilde(1);
    if (std::abs(z.dot(q)) > 1e-10 * zn * q.norm())
      fail(ErrorCode::ConstraintViolated, "witness point left the hyperplane");

    double c = std::pow(1.0 - eps / a0, a0) * std::pow(1.0 + eps / a1, a1);
    SplitPoint pe{c * q.xbar, q.xtilde};
    if (membership(p, pe).status != Membership::Boundary)
      fail(ErrorCode::ConstraintViolated, "witness companion left the boundary");

    // Face distance two ways: ray projection vs. span projection (valid
    // since <q, f> > 0 for eps < alpha_1).
    double df_span = (q - f * (q.dot(f) / f.squared_norm())).norm();
    double df = distance_to_face(p, face, q);
    if (std::abs(df - df_span) > 1e-6 * std::max(1e-30, df))
      fail(ErrorCode::ConstraintViolated,
           "face distance disagrees with the span closed form");

    double gap = (1.0 - c) / zbar_norm;  // = ||q - pe||, certifies dist(q,K)
    push_curve_point(p, face, 0.5, q, pe, gap, curve);
  }
  return curve;
}

WitnessCurve witness_curve_orthant(const ConeParams& p, const SplitPoint& z,
                                   const Vector& u_dir,
                                   const std::vector<double>& epsilons) {
  check_dims(p, z);
  double scale = scale_of(z);
  if (scale <= 0.0) fail(ErrorCode::ZIsZero, "z = 0 exposes no face");
  if (z.xbar.norm() > kDefaultTol * scale)
    fail(ErrorCode::ZBarNotZero, "orthant witness needs zbar = 0");
  Face face = expose_face(p, z);
  if (face_kind(face) != FaceKind::Orthant)
    fail(ErrorCode::InvalidArgument, "z does not expose an orthant face");
  const auto& I = std::get<OrthantFace>(face).index_set;
  if (u_dir.size() != p.m())
    fail(ErrorCode::DimensionMismatch, "u_dir must have length m");
  if (std::abs(u_dir.norm() - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "u_dir must be a unit vector");
  double beta = exponent_for_face(p, face);

  std::vector<bool> in_I(static_cast<size_t>(p.n()), false);
  for (Index i : I) in_I[static_cast<size_t>(i)] = true;

  WitnessCurve curve;
  curve.kind = FrfKind::OrthantFace;
  curve.epsilons = epsilons;
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) {
      std::ostringstream os;
      os << "eps = " << eps << " outside (0, 1)";
      fail(ErrorCode::EpsOutOfRange, os.str());
    }
    double r = std::pow(eps, beta);
    SplitPoint q{r * u_dir, Vector::Ones(p.n())};
    SplitPoint pe = q;
    for (Index i : I) {
      q.xtilde(i) = 0.0;
      pe.xtilde(i) = eps;
    }
    if (std::abs(z.dot(q)) > 1e-10 * z.norm() * q.norm())
      fail(ErrorCode::ConstraintViolated, "witness point left the hyperplane");
    if (membership(p, pe).status != Membership::Boundary)
      fail(ErrorCode::ConstraintViolated, "witness companion left the boundary");

    double df = distance_to_face(p, face, q);
    if (std::abs(df - r) > 1e-12 * std::max(1.0, r))
      fail(ErrorCode::ConstraintViolated,
           "face distance of the witness must be eps^beta exactly");

    double gap = std::sqrt(static_cast<double>(I.size())) * eps;  // ||q - pe||
    push_curve_point(p, face, beta, q, pe, gap, curve);
  }
  return curve;
}

LowerBoundKernel make_interior_kernel(const ConeParams& p,
                                      const Vector& zeta) {
  if (zeta.size() != p.n())
    fail(ErrorCode::DimensionMismatch, "zeta must have length n");
  double logsum = 0.0;
  for (Index i = 0; i < p.n(); ++i) {
    if (!(zeta(i) < 0.0))
      fail(ErrorCode::InvalidArgument,
           "zeta must be strictly negative componentwise");
    logsum += p.alpha(i) * std::log(-zeta(i) / p.alpha(i));
  }
  if (std::abs(std::expm1(logsum)) > 1e-10)
    fail(ErrorCode::InvalidArgument,
         "zeta must satisfy prod(-zeta_i/alpha_i)^alpha_i = 1");
  LowerBoundKernel k;
  k.zeta = zeta;
  k.zeta_tilde = (-p.alpha().array() / zeta.array()).matrix();
  return k;
}

KernelCheck kernel_interior_check(const ConeParams& p,
                                  const LowerBoundKernel& kernel,
                                  const Vector& omega, double tol) {
  if (omega.size() != p.n())
    fail(ErrorCode::DimensionMismatch, "omega must have length n");
  if (omega.minCoeff() <= 0.0)
    fail(ErrorCode::OmegaNotOnGaugeSurface,
         "omega must be strictly positive");
  double g = gauge(p, omega);
  if (std::abs(g - 1.0) > 1e-10)
    fail(ErrorCode::OmegaNotOnGaugeSurface,
         "omega must lie on the unit gauge surface");
  double pairing = kernel.zeta.dot(omega);
  if (pairing > -1.0 + 1e-10)
    fail(ErrorCode::ConstraintViolated,
         "interior kernel pairing exceeded -1; inputs are inconsistent");
  return {pairing, std::abs(pairing + 1.0) <= tol,
          (omega - kernel.zeta_tilde).norm()};
}

LowerBoundKernel kernel_fit_constant(const ConeParams& p, const Vector& zeta,
                                     double eps_radius, int samples,
                                     std::uint64_t seed) {
  if (!(eps_radius > 0.0))
    fail(ErrorCode::InvalidArgument, "eps_radius must be positive");
  if (samples <= 0) fail(ErrorCode::InvalidArgument, "need samples");
  LowerBoundKernel k = make_interior_kernel(p, zeta);
  double minC = std::numeric_limits<double>::infinity();
  int admissible = 0;
  for (int j = 0; j < samples; ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    // Multiplicative perturbation keeps omega positive; renormalizing puts
    // it back on the gauge surface.
    double delta = eps_radius * rng.uniform();
    Vector y = k.zeta_tilde;
    Vector dir = rng.unit_vector(p.n());
    for (Index i = 0; i < p.n(); ++i) y(i) *= std::exp(delta * dir(i));
    Vector omega = y / gauge(p, y);
    double dist = (omega - k.zeta_tilde).norm();
    if (dist < 1e-9 || dist > eps_radius) continue;
    double gap = -1.0 - k.zeta.dot(omega);
    ++admissible;
    minC = std::min(minC, gap / (dist * dist));
  }
  if (admissible == 0)
    fail(ErrorCode::NoAdmissibleSamples,
         "no perturbed omega stayed inside the fitting radius");
  k.fitted_C = minC;
  k.fitted_eps = eps_radius;
  return k;
}

KernelCheck kernel_sphere_check(const Vector& zeta, const Vector& w,
                                double tol) {
  if (w.size() != zeta.size())
    fail(ErrorCode::DimensionMismatch, "w and zeta sizes differ");
  if (std::abs(zeta.norm() - 1.0) > 1e-12)
    fail(ErrorCode::ZetaNotUnit, "zeta must be a unit vector");
  if (w.norm() > 1.0 + 1e-12)
    fail(ErrorCode::InvalidArgument, "w must lie in the unit ball");
  double pairing = zeta.dot(w);
  if (pairing < -1.0 - 1e-12)
    fail(ErrorCode::ConstraintViolated,
         "sphere kernel pairing fell below -1; inputs are inconsistent");
  return {pairing, std::abs(pairing + 1.0) <= tol, (w + zeta).norm()};
}

}  // namespace gpcone
