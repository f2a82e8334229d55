// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/facial_reduction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "gpcone/rng.hpp"

namespace gpcone {

namespace {

Matrix stack_columns(const std::vector<Vector>& cols, Index dim) {
  Matrix B(dim, static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != dim)
      fail(ErrorCode::DimensionMismatch, "basis vectors have mixed lengths");
    B.col(static_cast<Index>(j)) = cols[j];
  }
  return B;
}

}  // namespace

AffineSet::AffineSet(const std::vector<Vector>& basis, Vector offset)
    : offset_(std::move(offset)) {
  const Index dim = offset_.size();
  if (dim <= 0) fail(ErrorCode::InvalidParams, "affine set in dimension zero");
  const Index k = static_cast<Index>(basis.size());
  if (k == 0) {
    onb_ = Matrix::Zero(dim, 0);
    return;
  }
  if (k > dim)
    fail(ErrorCode::InvalidParams, "more basis vectors than the dimension");
  Matrix B = stack_columns(basis, dim);
  Eigen::JacobiSVD<Matrix> svd(B, Eigen::ComputeThinU);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(k - 1);
  if (!(smax > 0.0) || smin <= 1e-10 * smax)
    fail(ErrorCode::InvalidParams,
         "basis is not linearly independent (relative singular value below "
         "1e-10)");
  onb_ = svd.matrixU().leftCols(k);
}

AffineSet AffineSet::whole_space(Index dim) {
  std::vector<Vector> basis;
  basis.reserve(static_cast<size_t>(dim));
  for (Index i = 0; i < dim; ++i)
    basis.push_back(Vector::Unit(dim, i));
  return AffineSet(basis, Vector::Zero(dim));
}

AffineSet AffineSet::point(Vector offset) {
  return AffineSet({}, std::move(offset));
}

AffineSet AffineSet::orthogonal_complement(const Vector& z) {
  const Index dim = z.size();
  double zn = z.norm();
  if (!(zn > 0.0)) fail(ErrorCode::InvalidParams, "z = 0 has no complement");
  Eigen::JacobiSVD<Matrix> svd(Matrix(z), Eigen::ComputeFullU);
  Matrix U = svd.matrixU();
  std::vector<Vector> basis;
  for (Index j = 1; j < dim; ++j) basis.push_back(U.col(j));
  return AffineSet(basis, Vector::Zero(dim));
}

Vector AffineSet::project(const Vector& x) const {
  if (x.size() != dim())
    fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
  if (rank() == 0) return offset_;
  return offset_ + onb_ * (onb_.transpose() * (x - offset_));
}

double AffineSet::distance(const Vector& x) const {
  return (x - project(x)).norm();
}

Matrix AffineSet::normal_basis() const {
  const Index d = dim();
  if (rank() == 0) return Matrix::Identity(d, d);
  if (rank() == d) return Matrix::Zero(d, 0);
  // Columns of U beyond the rank span the orthogonal complement.
  Eigen::JacobiSVD<Matrix> svd(onb_, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(d - rank());
}

namespace {

// Concave slack of the cone constraints; positive exactly on the interior.
double cone_slack(const ConeParams& p, const SplitPoint& x) {
  double minc = x.xtilde.minCoeff();
  double g = minc > 0.0 ? gauge(p, x.xtilde) : 0.0;
  return std::min(minc, g - x.xbar.norm());
}

// Supergradient of the active piece of cone_slack.
Vector cone_slack_supergradient(const ConeParams& p, const SplitPoint& x) {
  const Index d = p.dim();
  double minc = x.xtilde.minCoeff();
  double g = minc > 0.0 ? gauge(p, x.xtilde) : 0.0;
  double xb = x.xbar.norm();
  Vector grad = Vector::Zero(d);
  if (minc <= g - xb) {
    Index j;
    x.xtilde.minCoeff(&j);
    grad(p.m() + j) = 1.0;
  } else {
    if (xb > 0.0) grad.head(p.m()) = -x.xbar / xb;
    for (Index i = 0; i < p.n(); ++i)
      grad(p.m() + i) = p.alpha(i) * g / x.xtilde(i);
  }
  return grad;
}

}  // namespace

std::optional<SplitPoint> interior_feasible(const ConeParams& p,
                                            const AffineSet& affine,
                                            int budget, std::uint64_t seed) {
  if (affine.dim() != p.dim())
    fail(ErrorCode::DimensionMismatch, "affine set dimension mismatch");
  const double target = 1e-7;

  std::vector<Vector> starts;
  Vector ones = Vector::Zero(p.dim());
  ones.tail(p.n()).setOnes();
  starts.push_back(affine.project(ones));
  starts.push_back(affine.offset());
  {
    Rng rng(derive_seed(seed, 0x5704));
    for (int r = 0; r < 6; ++r)
      starts.push_back(affine.project(rng.normal_vector(p.dim())));
  }

  int spent = 0;
  std::optional<SplitPoint> best;
  double best_slack = target;
  for (const Vector& x0 : starts) {
    if (spent >= budget) break;
    Vector x = x0;
    double step0 = std::max(1.0, x.norm());
    for (int k = 0; spent < budget; ++k, ++spent) {
      SplitPoint sp = SplitPoint::from_full(p, x);
      double slack = cone_slack(p, sp);
      if (slack > best_slack) {
        best_slack = slack;
        best = sp;
      }
      // A clear interior point is enough; keep a short polish phase to move
      // off the threshold, then stop.
      if (best && k > 20) return best;
      Vector g = cone_slack_supergradient(p, sp);
      if (affine.rank() == 0) break;
      Vector gl = affine.basis() * (affine.basis().transpose() * g);
      double gn = gl.norm();
      if (gn <= 1e-14) break;
      x += (step0 / std::sqrt(static_cast<double>(k + 1))) * (gl / gn);
    }
    if (best) return best;
  }
  return best;
}

bool verify_exposing_vector(const ConeParams& p, const AffineSet& affine,
                            const SplitPoint& z, double tol) {
  check_dims(p, z);
  double zn = z.norm();
  if (!(zn > 0.0)) return false;
  if (dual_membership(p, z, tol).status == Membership::Exterior) return false;
  const Matrix& B = affine.basis();
  Vector zf = z.full();
  for (Index j = 0; j < B.cols(); ++j)
    if (std::abs(B.col(j).dot(zf)) > tol * zn) return false;
  double an = affine.offset().norm();
  if (std::abs(affine.offset().dot(zf)) > tol * zn * std::max(1.0, an))
    return false;
  return true;
}

namespace {

// Exact LP  max t  s.t.  B d >= t 1,  1^T B d = 1  over (d, t), solved by
// enumerating basic solutions (the feasible region is a polytope: B has full
// column rank and nonnegative slice vectors cannot sum to zero). Small
// dimensions only; n is the number of rows of B.
struct SliceLp {
  bool feasible = false;
  double t = -std::numeric_limits<double>::infinity();
  Vector d;
};

SliceLp solve_slice_lp(const Matrix& B) {
  const Index n = B.rows();
  const Index k = B.cols();
  SliceLp out;
  if (k == 0) return out;
  Vector colsum = B.colwise().sum();
  if (colsum.norm() <= 1e-13) return out;  // sum ztilde = 1 unreachable

  // Enumerate all k-subsets of the n inequality rows as candidate active
  // sets (the equality row is always active at a vertex).
  std::vector<std::pair<double, Vector>> vertices;
  std::vector<bool> pick(static_cast<size_t>(n), false);
  std::function<void(Index, Index)> rec = [&](Index start, Index chosen) {
    if (chosen == k) {
      Matrix A(k + 1, k + 1);
      Vector rhs = Vector::Zero(k + 1);
      Index r = 0;
      for (Index i = 0; i < n; ++i) {
        if (!pick[static_cast<size_t>(i)]) continue;
        A.row(r).head(k) = B.row(i);
        A(r, k) = -1.0;
        ++r;
      }
      A.row(k).head(k) = colsum.transpose();
      A(k, k) = 0.0;
      rhs(k) = 1.0;
      Eigen::FullPivLU<Matrix> lu(A);
      if (!lu.isInvertible()) return;
      Vector sol = lu.solve(rhs);
      Vector d = sol.head(k);
      double t = sol(k);
      Vector vals = B * d;
      if ((vals.array() < t - 1e-11).any()) return;  // infeasible vertex
      vertices.emplace_back(t, d);
      return;
    }
    if (n - start < k - chosen) return;
    for (Index i = start; i < n; ++i) {
      pick[static_cast<size_t>(i)] = true;
      rec(i + 1, chosen + 1);
      pick[static_cast<size_t>(i)] = false;
    }
  };
  rec(0, 0);
  if (vertices.empty()) return out;

  // Average every optimal vertex: the mean lies in the relative interior of
  // the optimal face, so its slice vector has maximal support among optimal
  // solutions and exposes the smallest face the slice allows.
  double tstar = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) tstar = std::max(tstar, v.first);
  Vector d = Vector::Zero(k);
  int count = 0;
  for (const auto& v : vertices)
    if (v.first >= tstar - 1e-11) {
      d += v.second;
      ++count;
    }
  out.feasible = true;
  out.t = tstar;
  out.d = d / static_cast<double>(count);
  return out;
}

// Orthonormal basis of the nullspace of M (rows are constraints).
Matrix nullspace_basis(const Matrix& M, Index dim) {
  if (M.rows() == 0) return Matrix::Identity(dim, dim);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  Index rank = 0;
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12 * std::max(1.0, smax)) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

// Dual-cone slack, the phase-2 ascent objective.
double dual_slack(const ConeParams& p, const SplitPoint& z) {
  double minc = z.xtilde.minCoeff();
  double g = 0.0;
  if (minc > 0.0)
    g = gauge(p, (z.xtilde.array() / p.alpha().array()).matrix());
  return std::min(minc, g - z.xbar.norm());
}

Vector dual_slack_supergradient(const ConeParams& p, const SplitPoint& z) {
  const Index d = p.dim();
  double minc = z.xtilde.minCoeff();
  double g = 0.0;
  if (minc > 0.0)
    g = gauge(p, (z.xtilde.array() / p.alpha().array()).matrix());
  double zb = z.xbar.norm();
  Vector grad = Vector::Zero(d);
  if (minc <= g - zb) {
    Index j;
    z.xtilde.minCoeff(&j);
    grad(p.m() + j) = 1.0;
  } else {
    if (zb > 0.0) grad.head(p.m()) = -z.xbar / zb;
    for (Index i = 0; i < p.n(); ++i)
      grad(p.m() + i) = p.alpha(i) * g / z.xtilde(i);
  }
  return grad;
}

}  // namespace

std::optional<SplitPoint> find_exposing_vector(const ConeParams& p,
                                               const AffineSet& affine,
                                               int budget,
                                               std::uint64_t seed) {
  if (affine.dim() != p.dim())
    fail(ErrorCode::DimensionMismatch, "affine set dimension mismatch");
  const Index d = p.dim();

  // S = L-perp intersect {a}-perp.
  Matrix constraints(0, d);
  {
    Index rows = affine.rank() + (affine.offset().norm() > 0.0 ? 1 : 0);
    constraints.resize(rows, d);
    for (Index j = 0; j < affine.rank(); ++j)
      constraints.row(j) = affine.basis().col(j).transpose();
    if (affine.offset().norm() > 0.0)
      constraints.row(rows - 1) =
          affine.offset().transpose() / affine.offset().norm();
  }
  Matrix S = nullspace_basis(constraints, d);
  if (S.cols() == 0) return std::nullopt;

  // Phase 1: zbar = 0 slice. Coordinates c with (0, ztilde) = S c.
  {
    Matrix top = S.topRows(p.m());
    Matrix C = nullspace_basis(top, S.cols());
    if (C.cols() > 0) {
      Matrix B = S.bottomRows(p.n()) * C;  // ztilde = B dcoef
      SliceLp lp = solve_slice_lp(B);
      if (lp.feasible && lp.t >= -1e-11) {
        Vector zt = (B * lp.d).cwiseMax(0.0);
        SplitPoint z{Vector::Zero(p.m()), zt};
        double zn = z.norm();
        if (zn > 0.0) {
          z = z * (1.0 / zn);
          if (verify_exposing_vector(p, affine, z)) return z;
        }
      }
    }
  }

  // Phase 2: multi-start projected supergradient ascent of the dual slack
  // over the unit sphere of S, in the coordinates y (z = S y).
  const Index ds = S.cols();
  std::vector<Vector> starts;
  for (Index j = 0; j < ds; ++j) {
    starts.push_back(Vector::Unit(ds, j));
    starts.push_back(-Vector::Unit(ds, j));
  }
  {
    Rng rng(derive_seed(seed, 0xeb0));
    for (int r = 0; r < 8; ++r) starts.push_back(rng.unit_vector(ds));
  }

  Vector best_y;
  double best_slack = -std::numeric_limits<double>::infinity();
  int iters_per_start =
      std::max(20, budget / std::max<int>(1, static_cast<int>(starts.size())));
  for (const Vector& y0 : starts) {
    Vector y = y0;
    for (int k = 0; k < iters_per_start; ++k) {
      SplitPoint z = SplitPoint::from_full(p, S * y);
      double slack = dual_slack(p, z);
      if (slack > best_slack) {
        best_slack = slack;
        best_y = y;
      }
      Vector g = S.transpose() * dual_slack_supergradient(p, z);
      // Tangential component on the sphere.
      g -= g.dot(y) * y;
      double gn = g.norm();
      if (gn <= 1e-14) break;
      y += (0.5 / std::sqrt(static_cast<double>(k + 1))) * (g / gn);
      y.normalize();
    }
  }
  if (best_y.size() > 0) {
    SplitPoint z = SplitPoint::from_full(p, S * best_y);
    // Clamp sampling residue, then verify against the real tolerance.
    z.xtilde = z.xtilde.cwiseMax(0.0);
    double zn = z.norm();
    if (zn > 0.0) {
      z = z * (1.0 / zn);
      if (verify_exposing_vector(p, affine, z)) return z;
    }
  }
  return std::nullopt;
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::InteriorPoint: return "interior_point";
    case Provenance::SuppliedZ: return "supplied_z";
    case Provenance::FoundZ: return "found_z";
    case Provenance::ZeroFace: return "zero_face";
  }
  return "unknown";
}

namespace {

// Upper estimate of the Hoffman-style constant for the pair (target, L+a):
//   dist(y, target ∩ (L+a)) <= kappa max(dist(y, target), dist(y, L+a))
// by sampling and alternating projections, with a factor 2 safety margin.
// project_target must be a projection onto the closed convex target set.
template <typename Proj>
double estimate_pair_constant(const ConeParams& p, const AffineSet& affine,
                              double eta, std::uint64_t seed,
                              Proj&& project_target) {
  const int nsamples = 48;
  const int max_pocs = 600;
  double kappa = 1.0;
  int successes = 0;
  for (int j = 0; j < nsamples; ++j) {
    Rng rng(derive_seed(seed, 0xa0ff + static_cast<std::uint64_t>(j)));
    Vector y = rng.unit_vector(p.dim()) * eta *
               std::pow(rng.uniform(), 1.0 / static_cast<double>(p.dim()));
    Vector c = y;
    bool converged = false;
    for (int it = 0; it < max_pocs; ++it) {
      Vector c_aff = affine.project(c);
      Vector c_tgt = project_target(c_aff);
      double gap = (c_aff - c_tgt).norm();
      c = c_tgt;
      if (gap <= 1e-11 * std::max(1.0, c.norm())) {
        converged = true;
        break;
      }
    }
    if (!converged) continue;
    double d_tgt = (y - project_target(y)).norm();
    double d_aff = affine.distance(y);
    double den = std::max(d_tgt, d_aff);
    if (den <= 1e-10) continue;
    ++successes;
    kappa = std::max(kappa, (y - c).norm() / den);
  }
  if (successes == 0)
    fail(ErrorCode::SearchExhausted,
         "alternating projections never reached the intersection; the "
         "instance may be infeasible");
  return 2.0 * kappa;
}

// Lipschitz kernel constant for a dual-interior z (trivial face):
// dist(x, {0}) = ||x|| <= (1 + (1 + ||z||)/delta) eps with delta the minimal
// pairing of z against unit extreme rays. delta is sampled; the factor 1/2
// guards against sampling optimism.
double trivial_face_constant(const ConeParams& p, const SplitPoint& z,
                             std::uint64_t seed) {
  double delta = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.n(); ++i) delta = std::min(delta, z.xtilde(i));
  auto rays = sample_boundary(p, derive_seed(seed, 0xde17a), 4000, 1.0);
  for (SplitPoint& v : rays) {
    v = v * (1.0 / v.norm());
    delta = std::min(delta, z.dot(v));
  }
  delta *= 0.5;
  if (!(delta > 0.0))
    fail(ErrorCode::SearchExhausted,
         "dual vector is not safely interior; no Lipschitz kernel");
  return 1.0 + (1.0 + z.norm()) / delta;
}

}  // namespace

Certificate certify(const ConeParams& p, const AffineSet& affine, double eta,
                    int budget, std::uint64_t seed, int gamma_samples,
                    const std::optional<SplitPoint>& supplied_z) {
  if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
  if (affine.dim() != p.dim())
    fail(ErrorCode::DimensionMismatch, "affine set dimension mismatch");

  Certificate cert;
  cert.eta = eta;
  cert.seed = seed;

  std::optional<SplitPoint> z;
  Provenance prov = Provenance::FoundZ;
  if (supplied_z) {
    if (!verify_exposing_vector(p, affine, *supplied_z))
      fail(ErrorCode::InvalidArgument,
           "supplied z fails the exposing-vector verification");
    z = supplied_z;
    prov = Provenance::SuppliedZ;
  } else {
    auto interior =
        interior_feasible(p, affine, budget, derive_seed(seed, 0x17));
    if (interior) {
      cert.d_pps = 0;
      cert.face = FullFace{};
      cert.exponent = 1.0;
      cert.provenance = Provenance::InteriorPoint;
      cert.hoffman = 1.0;
      cert.constant = estimate_pair_constant(
          p, affine, eta, derive_seed(seed, 0x21),
          [&](const Vector& v) {
            return project_onto_cone(p, SplitPoint::from_full(p, v)).full();
          });
      return cert;
    }
    z = find_exposing_vector(p, affine, budget, derive_seed(seed, 0x19));
    if (!z)
      fail(ErrorCode::SearchExhausted,
           "no interior point within budget and no exposing vector found");
  }

  // Clamp numerical residue in the nonnegative block, then renormalize, so
  // downstream strict-tolerance consumers see a clean dual vector.
  SplitPoint zz = *z;
  zz.xtilde = zz.xtilde.cwiseMax(0.0);
  zz = zz * (1.0 / zz.norm());
  cert.d_pps = 1;
  cert.exposing_z = zz;

  auto dual_rep = dual_membership(p, zz);
  if (dual_rep.status == Membership::Interior) {
    cert.face = TrivialFace{};
    cert.exponent = 1.0;
    cert.provenance = Provenance::ZeroFace;
    cert.constant = trivial_face_constant(p, zz, derive_seed(seed, 0x23));
  } else {
    cert.face = expose_face(p, zz, kDefaultTol, /*lenient=*/true);
    cert.exponent = exponent_for_face(p, cert.face);
    cert.provenance = prov;
    GammaEstimate gamma =
        gamma_estimate(p, zz, eta, gamma_samples, derive_seed(seed, 0x29));
    cert.gamma = gamma;
    double g = gamma.conservative();
    if (face_kind(cert.face) == FaceKind::Ray)
      cert.constant = std::max(2.0 * std::sqrt(eta), 2.0 / g);
    else
      cert.constant =
          std::max(2.0 * std::pow(eta, 1.0 - cert.exponent), 2.0 / g);
  }
  cert.hoffman = estimate_pair_constant(
      p, affine, eta, derive_seed(seed, 0x2b), [&](const Vector& v) {
        return project_onto_face(p, cert.face, SplitPoint::from_full(p, v))
            .full();
      });
  return cert;
}

ErrorBoundResult error_bound_apply(const ConeParams& p,
                                   const Certificate& cert,
                                   const AffineSet& affine,
                                   const SplitPoint& x) {
  check_dims(p, x);
  if (x.norm() > cert.eta * (1.0 + 1e-12))
    fail(ErrorCode::XOutsideBall,
         "the certificate only covers the ball of radius eta");
  double dist_affine = affine.distance(x.full());
  double dist_cone = distance_to_cone(p, x);
  double eps = std::max(dist_affine, dist_cone);

  if (cert.d_pps == 0)
    return {cert.constant * eps, dist_affine, dist_cone};

  double psi;
  switch (face_kind(cert.face)) {
    case FaceKind::Trivial:
      psi = cert.constant * eps;
      break;
    case FaceKind::Ray:
    case FaceKind::Orthant: {
      // cert.constant already maximizes the t-dependent coefficient over the
      // ball, so psi(eps, t) <= s + constant (eps + s)^exponent for t <= eta.
      double nz = cert.exposing_z ? cert.exposing_z->norm() : 1.0;
      double s = std::max(eps, eps / nz);
      psi = s + cert.constant * std::pow(eps + s, cert.exponent);
      break;
    }
    case FaceKind::Full:
    default:
      psi = cert.constant * eps;
      break;
  }
  return {cert.hoffman * std::max(psi, dist_affine), dist_affine, dist_cone};
}

}  // namespace gpcone
