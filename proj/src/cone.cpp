// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/cone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpcone/rng.hpp"

namespace gpcone {

double gauge(const ConeParams& p, const Vector& xtilde, double tol) {
  if (xtilde.size() != p.n())
    fail(ErrorCode::DimensionMismatch, "gauge: xtilde length does not match n");
  double scale = std::max(1.0, xtilde.cwiseAbs().maxCoeff());
  double floor = -tol * scale;
  double logsum = 0.0;
  for (Index i = 0; i < xtilde.size(); ++i) {
    double v = xtilde(i);
    if (v <= 0.0) {
      if (v < floor) {
        std::ostringstream os;
        os << "gauge: xtilde[" << i << "] = " << v
           << " below the clamping band " << floor;
        fail(ErrorCode::InvalidArgument, os.str());
      }
      return 0.0;  // clamped to the orthant boundary
    }
    logsum += p.alpha(i) * std::log(v);
  }
  return std::exp(logsum);
}

MembershipReport membership(const ConeParams& p, const SplitPoint& x,
                            double tol) {
  check_dims(p, x);
  double min_coord = x.xtilde.minCoeff();
  double g = gauge(p, x.xtilde.cwiseMax(0.0), tol);
  double slack = g - x.xbar.norm();
  double band = tol * std::max(1.0, x.norm());
  // Exterior only on a robust violation. The slack is a gauge margin, not a
  // distance: a point inside the gauge inequality whose smallest coordinate
  // sits within the band of zero is on (or within tolerance of) the boundary,
  // however large the slack.
  Membership status;
  if (slack > band && min_coord > band) {
    status = Membership::Interior;
  } else if (slack >= -band && min_coord >= -band) {
    status = Membership::Boundary;
  } else {
    status = Membership::Exterior;
  }
  return {status, slack, min_coord};
}

SplitPoint dual_transform(const ConeParams& p, const SplitPoint& z) {
  check_dims(p, z);
  return {z.xbar, (z.xtilde.array() / p.alpha().array()).matrix()};
}

MembershipReport dual_membership(const ConeParams& p, const SplitPoint& z,
                                 double tol) {
  return membership(p, dual_transform(p, z), tol);
}

namespace {

// Optimality condition for the reduced projection (s, xt) -> boundary of the
// m = 1 cone, parametrized by the multiplier mu in (0, s):
//   ptilde_i(mu) = (xt_i + sqrt(xt_i^2 + 4 alpha_i mu (s - mu))) / 2
//   phi(mu) = gauge(ptilde(mu)) - (s - mu)
// phi has a single root; the root gives the projection (s - mu, ptilde).
struct KktCurve {
  const ConeParams& p;
  double s;
  const Vector& xt;

  void ptilde(double mu, Vector& out) const {
    double r = mu * (s - mu);
    for (Index i = 0; i < xt.size(); ++i) {
      double q = 4.0 * p.alpha(i) * r;
      double sq = std::sqrt(xt(i) * xt(i) + q);
      // Conjugate form avoids cancellation for negative coordinates.
      out(i) = xt(i) >= 0.0 ? 0.5 * (xt(i) + sq) : 0.5 * q / (sq - xt(i));
    }
  }

  double phi(double mu, Vector& pt) const {
    ptilde(mu, pt);
    double logg = 0.0;
    for (Index i = 0; i < pt.size(); ++i) logg += p.alpha(i) * std::log(pt(i));
    return std::exp(logg) - (s - mu);
  }

  double dphi(double mu, const Vector& pt, double gauge_val) const {
    double acc = 0.0;
    for (Index i = 0; i < pt.size(); ++i) {
      double sq = std::sqrt(xt(i) * xt(i) + 4.0 * p.alpha(i) * mu * (s - mu));
      double dpt = p.alpha(i) * (s - 2.0 * mu) / sq;
      acc += p.alpha(i) * dpt / pt(i);
    }
    return gauge_val * acc + 1.0;
  }
};

// Projection of a point with ||x|| = 1 (callers rescale; the projection is
// positively homogeneous).
SplitPoint project_unit(const ConeParams& p, const SplitPoint& x,
                        int max_iter) {
  const double cushion = 4e-15;

  double min_coord = x.xtilde.minCoeff();
  double xbar_norm = x.xbar.norm();

  // Already in the cone (up to a few ulp): clamp the negligible negatives.
  if (min_coord >= -cushion) {
    double g = gauge(p, x.xtilde.cwiseMax(0.0));
    if (xbar_norm <= g + cushion) return {x.xbar, x.xtilde.cwiseMax(0.0)};
  }

  // In the polar cone (within a 1e-10 band): the projection collapses to the
  // apex. The band is wide on purpose: just outside the polar cone with a
  // near-zero tilde coordinate, the KKT root below turns degenerate and the
  // last ulp of the multiplier amplifies through a square root into ~1e-8 of
  // spurious projection; accepting the apex errs by at most the band.
  const double polar_band = 1e-10;
  if (x.xtilde.maxCoeff() <= polar_band) {
    Vector y = ((-x.xtilde).cwiseMax(0.0).array() / p.alpha().array()).matrix();
    if (xbar_norm <= gauge(p, y) + polar_band) return SplitPoint::zero(p);
  }

  // Degenerate Euclidean block: clamp the orthant block.
  if (xbar_norm <= cushion)
    return {Vector::Zero(p.m()), x.xtilde.cwiseMax(0.0)};

  // Reduced problem along the direction of xbar. phi < 0 at 0+ and > 0 just
  // left of s, with exactly one root; safeguarded Newton in the bracket.
  const double s = xbar_norm;
  KktCurve curve{p, s, x.xtilde};
  Vector pt(p.n());

  double lo = 0.0, hi = s;
  double mu = 0.5 * s;
  double f = curve.phi(mu, pt);
  double best_mu = mu, best_f = std::abs(f);
  // The root can sit arbitrarily close to zero (points grazing an orthant
  // face); arithmetic bisection cannot resolve it, so while the lower end of
  // the bracket is still zero, split geometrically instead. The termination
  // test is relative to the bracket for the same reason.
  auto split = [&lo, &hi]() { return lo > 0.0 ? 0.5 * (lo + hi) : 1e-3 * hi; };
  int iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    if (std::abs(f) <= 1e-15 || (lo > 0.0 && (hi - lo) <= 1e-16 * hi)) {
      converged = true;
      break;
    }
    if (f > 0.0)
      hi = mu;
    else
      lo = mu;
    double gauge_val = f + (s - mu);
    double deriv = curve.dphi(mu, pt, gauge_val);
    double cand = mu - f / deriv;
    if (!std::isfinite(cand) || cand <= lo || cand >= hi) cand = split();
    double fc = curve.phi(cand, pt);
    if (std::abs(fc) >= std::abs(f)) {
      // Newton stalled; force a bracket step (the endpoint moved above, so
      // progress is guaranteed).
      if (fc > 0.0)
        hi = cand;
      else
        lo = cand;
      cand = split();
      fc = curve.phi(cand, pt);
    }
    mu = cand;
    f = fc;
    if (std::abs(f) < best_f) {
      best_f = std::abs(f);
      best_mu = mu;
    }
  }
  if (!converged && best_f > 1e-10) {
    std::ostringstream os;
    os << "projection root find stalled after " << iter
       << " iterations; best |phi| = " << best_f << " at mu = " << best_mu
       << " (s = " << s << ")";
    fail(ErrorCode::NonConvergence, os.str());
  }
  if (!converged) {
    mu = best_mu;
    curve.ptilde(mu, pt);
  }
  double p0 = s - mu;
  return {(p0 / s) * x.xbar, pt};
}

}  // namespace

SplitPoint project_onto_cone(const ConeParams& p, const SplitPoint& x,
                             int max_iter) {
  check_dims(p, x);
  double nrm = x.norm();
  if (nrm == 0.0 || !std::isfinite(nrm)) {
    if (!std::isfinite(nrm))
      fail(ErrorCode::InvalidArgument, "projection input is not finite");
    return SplitPoint::zero(p);
  }
  return project_unit(p, x * (1.0 / nrm), max_iter) * nrm;
}

double distance_to_cone(const ConeParams& p, const SplitPoint& x) {
  return (x - project_onto_cone(p, x)).norm();
}

std::vector<SplitPoint> sample_boundary(const ConeParams& p,
                                        std::uint64_t seed, int count,
                                        double radius) {
  if (count < 0) fail(ErrorCode::InvalidArgument, "negative sample count");
  if (!(radius > 0.0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  std::vector<SplitPoint> out;
  out.reserve(static_cast<size_t>(count));
  for (int j = 0; j < count; ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    Vector xt(p.n());
    for (Index i = 0; i < p.n(); ++i) xt(i) = rng.log_uniform(0.1, 10.0);
    Vector d = rng.unit_vector(p.m());
    SplitPoint v{gauge(p, xt) * d, xt};
    double t = 1.0 - rng.uniform();  // (0, 1]
    out.push_back(v * (radius * t / v.norm()));
  }
  return out;
}

std::vector<SplitPoint> sample_dual(const ConeParams& p, std::uint64_t seed,
                                    int count, double radius) {
  auto primal = sample_boundary(p, derive_seed(seed, 0x6021a1), count, radius);
  for (int j = 0; j < count; ++j) {
    SplitPoint& z = primal[static_cast<size_t>(j)];
    z.xtilde = z.xtilde.cwiseProduct(p.alpha());
    if (j % 3 == 0) {
      // Pull a third of the samples strictly inside the dual cone.
      Rng rng(derive_seed(seed, 0x77e1d + static_cast<std::uint64_t>(j)));
      z.xbar *= rng.uniform();
    }
  }
  return primal;
}

}  // namespace gpcone
