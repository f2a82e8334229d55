// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpcone/faces.hpp"
#include "gpcone/types.hpp"

namespace gpcone {

/// Hoelder exponent attached to each face kind: 1/2 for rays, sum of the
/// alpha_i over I for orthant faces, 1 (Lipschitz) for the trivial and full
/// faces.
double exponent_for_face(const ConeParams& p, const Face& face);

/// Estimate of the face constant
///   gamma = inf ||v - w||^e / ||u - w||
/// over boundary points v in the ball of radius eta, v not on the face,
/// where e is the face exponent and (w, u) the hyperplane geometry of
/// lemma_geometry. sampled_value is a running minimum over admissible
/// samples, so it upper-bounds the true infimum; analytic_lower (present for
/// orthant faces) lower-bounds it.
struct GammaEstimate {
  double eta = 1.0;
  double sampled_value = 0.0;
  std::optional<double> analytic_lower;
  int sample_count = 0;
  std::uint64_t seed = 0;

  /// Value safe to use inside bounds: the analytic lower bound when
  /// available, otherwise the sampled estimate discounted by a factor 2
  /// safety margin against sampling optimism.
  double conservative() const {
    if (analytic_lower) return std::min(sampled_value, *analytic_lower);
    return 0.5 * sampled_value;
  }
};

/// Closed-form positive lower bound on gamma for an orthant face, valid on
/// the ball of radius eta:
///   (min_{i in I} ztilde_i)^beta / (eta^{1-beta} (n + 1 + sqrt(n)) ||z||^beta)
/// with beta the face exponent. Requires zbar = 0 (ZBarNotZero).
double gamma_lower_bound_orthant(const ConeParams& p, const SplitPoint& z,
                                 double eta, double tol = kDefaultTol);

/// Sampled gamma over seeded boundary points (half rescaled to ||v|| = eta,
/// where the infimum concentrates, half spread over (0, eta]; ray faces also
/// get near-face samples). Attaches the analytic lower bound when zbar = 0.
/// Throws NoAdmissibleSamples if every sample lands on the face or in the
/// hyperplane.
GammaEstimate gamma_estimate(const ConeParams& p, const SplitPoint& z,
                             double eta, int samples, std::uint64_t seed);

enum class FrfKind { RayFace, OrthantFace };

/// Frozen data of a one-step facial residual function
///   ray:     psi(eps, t) = s(eps) + max{2 sqrt(t), 2/gamma} (eps + s(eps))^{1/2}
///   orthant: psi(eps, t) = s(eps) + max{2 t^{1-beta}, 2/gamma} (eps + s(eps))^beta
/// with s(eps) = max{eps, eps/||z||}. Valid for t <= gamma.eta because gamma
/// is nonincreasing in the ball radius.
struct FrfSpec {
  FrfKind kind;
  double exponent;  // 1/2 for rays, beta in (0,1) for orthant faces
  double norm_z;
  GammaEstimate gamma;
};

FrfSpec make_frf_spec(const ConeParams& p, const SplitPoint& z,
                      const GammaEstimate& gamma);

double frf_evaluate(const FrfSpec& spec, double eps, double t);

/// One evaluation of the face error bound at a point q of {z}-perp inside
/// the ball of radius eta:
///   lhs  = dist(q, face),
///   rhs  = max{2 sqrt(eta), 2/gamma} dist(q, cone)^{1/2}          (ray)
///          max{2 eta^{1-beta}, 2/gamma} dist(q, cone)^{beta}      (orthant)
/// holds = (lhs <= rhs + tol). Throws QNotInHyperplane / QOutsideBall.
struct HolderBoundCheck {
  double lhs;
  double rhs;
  bool holds;
};

HolderBoundCheck holder_bound_check(const ConeParams& p, const SplitPoint& z,
                                    const SplitPoint& q, double eta,
                                    const GammaEstimate& gamma,
                                    double tol = 1e-8);

/// Tightness witness curve: points q_eps in {z}-perp approaching the face,
/// with companion boundary points p_eps certifying dist(q_eps, cone) and the
/// exact face distance. ratio = dist(q_eps, cone)^e / dist(q_eps, face).
struct WitnessCurve {
  FrfKind kind;
  std::vector<double> epsilons;
  std::vector<SplitPoint> q_points;
  std::vector<SplitPoint> p_points;
  std::vector<double> dist_to_cone;  // via project_onto_cone
  std::vector<double> dist_to_face;
  std::vector<double> ratio;
};

/// Default epsilon grid {1e-1, ..., 1e-6}.
std::vector<double> default_epsilons();

/// Ray witness along z with zbar != 0: q_eps shifts alpha_1 -> alpha_1 - eps,
/// alpha_2 -> alpha_2 + eps in the coordinates alpha_i / ztilde_i, and p_eps
/// rescales the Euclidean block back onto the boundary. Requires each eps in
/// (0, alpha_1) (EpsOutOfRange). dist(q,face) is cross-checked against the
/// span projection closed form; dist(q,cone) is certified by ||q - p||.
WitnessCurve witness_curve_ray(const ConeParams& p, const SplitPoint& z,
                               const std::vector<double>& epsilons);

/// Orthant witness for z with zbar = 0: q_eps = (eps^beta u, 0 on I, 1 off I)
/// and p_eps replaces the I block by eps. Requires ||u_dir|| = 1 and each
/// eps in (0, 1). dist(q,face) = eps^beta exactly.
WitnessCurve witness_curve_orthant(const ConeParams& p, const SplitPoint& z,
                                   const Vector& u_dir,
                                   const std::vector<double>& epsilons);

/// Interior kernel of the gauge surface: zeta < 0 with
/// prod (-zeta_i / alpha_i)^{alpha_i} = 1 and zeta_tilde = -alpha / zeta.
/// For omega > 0 with gauge(omega) = 1 the pairing <zeta, omega> is at most
/// -1, with equality exactly at omega = zeta_tilde; near zeta_tilde the gap
/// -1 - <zeta, omega> grows at least quadratically (fitted_C below).
struct LowerBoundKernel {
  Vector zeta;
  Vector zeta_tilde;
  double fitted_C = 0.0;    // min over samples of gap / ||omega - zeta_tilde||^2
  double fitted_eps = 0.0;  // radius of the sampled neighborhood
};

/// Validates zeta (negative, unit gauge after the sign/weight flip) and
/// builds the kernel. Throws InvalidArgument on violation.
LowerBoundKernel make_interior_kernel(const ConeParams& p, const Vector& zeta);

/// Kernel for a dual boundary point with zbar != 0: zeta_i = -ztilde_i
/// ||zbar||^{-1} prod (alpha_j / ztilde_j)^{alpha_j} ... normalized so the
/// defining identity holds; zeta_tilde then matches alpha / ztilde up to the
/// gauge of the face point.
struct KernelCheck {
  double pairing;
  bool equality_case;
  double dist_to_argmin;  // ||omega - zeta_tilde|| resp. ||w + zeta||
};

/// Evaluates <zeta, omega> for omega > 0 with gauge(omega) = 1 (within
/// 1e-10 * scale, else OmegaNotOnGaugeSurface) and asserts pairing <= -1 +
/// 1e-10. equality_case uses tolerance tol on the pairing gap.
KernelCheck kernel_interior_check(const ConeParams& p,
                                  const LowerBoundKernel& kernel,
                                  const Vector& omega, double tol = 1e-9);

/// Fits the local quadratic constant of the kernel by sampling omega on the
/// gauge surface within radius eps_radius of zeta_tilde.
LowerBoundKernel kernel_fit_constant(const ConeParams& p, const Vector& zeta,
                                     double eps_radius, int samples,
                                     std::uint64_t seed);

/// Sphere kernel: for ||zeta|| = 1 (within 1e-12, else ZetaNotUnit) and
/// ||w|| <= 1 + 1e-12, the pairing <zeta, w> is at least -1 with equality
/// exactly at w = -zeta.
KernelCheck kernel_sphere_check(const Vector& zeta, const Vector& w,
                                double tol = 1e-9);

}  // namespace gpcone
