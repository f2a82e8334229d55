// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/automorphisms.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gpcone/cone.hpp"
#include "gpcone/rng.hpp"

namespace gpcone {

bool is_soc_case(const ConeParams& p) {
  return p.n() == 2 && std::abs(p.alpha(0) - 0.5) <= 1e-12 &&
         std::abs(p.alpha(1) - 0.5) <= 1e-12;
}

Matrix AutElement::to_matrix(const ConeParams& p) const {
  const Index m = p.m();
  const Index n = p.n();
  if (B.rows() != m || B.cols() != m ||
      static_cast<Index>(perm.size()) != n || scales.size() != n)
    fail(ErrorCode::DimensionMismatch, "automorphism parts do not match cone");
  Matrix A = Matrix::Zero(m + n, m + n);
  A.topLeftCorner(m, m) = B;
  for (Index k = 0; k < n; ++k)
    A(m + perm[static_cast<size_t>(k)], m + k) = scales(k);
  return A;
}

AutElement AutElement::inverse(const ConeParams& p) const {
  const Index n = p.n();
  AutElement inv;
  inv.perm.assign(static_cast<size_t>(n), 0);
  inv.scales = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    Index l = perm[static_cast<size_t>(k)];
    inv.perm[static_cast<size_t>(l)] = k;
    inv.scales(l) = 1.0 / scales(k);
  }
  inv.scale_factor = 1.0 / scale_factor;
  // B = c Q with Q orthogonal, so B^{-1} = B^T / c^2.
  inv.B = B.transpose() / (scale_factor * scale_factor);
  (void)p;
  return inv;
}

AutElement AutElement::compose(const ConeParams& p,
                               const AutElement& other) const {
  // Result applies `other` first, then *this.
  const Index n = p.n();
  AutElement out;
  out.B = B * other.B;
  out.perm.assign(static_cast<size_t>(n), 0);
  out.scales = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    Index mid = other.perm[static_cast<size_t>(k)];
    out.perm[static_cast<size_t>(k)] = perm[static_cast<size_t>(mid)];
    out.scales(k) = other.scales(k) * scales(mid);
  }
  out.scale_factor = scale_factor * other.scale_factor;
  return out;
}

namespace {

bool soc_sampled_check(const ConeParams& p, const Matrix& A, double tol) {
  Eigen::FullPivLU<Matrix> lu(A);
  if (!lu.isInvertible()) return false;
  Matrix Ainv = lu.inverse();
  auto pts = sample_boundary(p, 0x50c, 200, 1.0);
  double band = 1e3 * tol;
  for (const SplitPoint& v : pts) {
    Vector f = v.full();
    for (const Matrix* M : {&A, const_cast<const Matrix*>(&Ainv)}) {
      SplitPoint w = SplitPoint::from_full(p, (*M) * f);
      double scale = std::max(1.0, w.norm());
      auto rep = membership(p, w, band);
      // An automorphism maps the boundary onto the boundary.
      if (rep.status != Membership::Boundary &&
          std::abs(rep.slack) > band * scale)
        return false;
    }
  }
  return true;
}

}  // namespace

bool is_automorphism(const ConeParams& p, const Matrix& A, double tol) {
  const Index m = p.m();
  const Index n = p.n();
  if (A.rows() != m + n || A.cols() != m + n)
    fail(ErrorCode::DimensionMismatch, "matrix does not match cone dimension");
  if (is_soc_case(p)) return soc_sampled_check(p, A, tol);

  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  double band = tol * scale;
  if (A.topRightCorner(m, n).cwiseAbs().maxCoeff() > band) return false;
  if (A.bottomLeftCorner(n, m).cwiseAbs().maxCoeff() > band) return false;

  // E must be a generalized permutation with positive entries.
  Matrix E = A.bottomRightCorner(n, n);
  std::vector<Index> perm(static_cast<size_t>(n), -1);
  std::vector<bool> hit(static_cast<size_t>(n), false);
  Vector scales = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    Index row = -1;
    for (Index j = 0; j < n; ++j) {
      if (std::abs(E(j, k)) <= band) continue;
      if (row >= 0) return false;  // two entries in one column
      row = j;
    }
    if (row < 0) return false;             // empty column
    if (E(row, k) <= 0.0) return false;    // negative entry
    if (hit[static_cast<size_t>(row)]) return false;  // two in one row
    hit[static_cast<size_t>(row)] = true;
    perm[static_cast<size_t>(k)] = row;
    scales(k) = E(row, k);
    if (std::abs(p.alpha(row) - p.alpha(k)) > 1e-12) return false;
  }

  double c = 1.0;
  for (Index k = 0; k < n; ++k) c *= std::pow(scales(k), p.alpha(k));
  Matrix B = A.topLeftCorner(m, m);
  Matrix gram = B.transpose() * B - c * c * Matrix::Identity(m, m);
  return gram.cwiseAbs().maxCoeff() <= tol * std::max(1.0, c * c);
}

AutElement sample_automorphism(const ConeParams& p, std::uint64_t seed) {
  const Index m = p.m();
  const Index n = p.n();
  Rng rng(derive_seed(seed, 0xa07));

  // Permutation by shuffling within each alpha class.
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return p.alpha(a) < p.alpha(b) - 1e-12;
  });
  std::vector<Index> perm(static_cast<size_t>(n), 0);
  size_t lo = 0;
  while (lo < order.size()) {
    size_t hi = lo + 1;
    while (hi < order.size() &&
           std::abs(p.alpha(order[hi]) - p.alpha(order[lo])) <= 1e-12)
      ++hi;
    std::vector<Index> cls(order.begin() + static_cast<long>(lo),
                           order.begin() + static_cast<long>(hi));
    std::vector<Index> img = cls;
    for (size_t j = img.size(); j > 1; --j) {
      size_t pick = static_cast<size_t>(rng.next_u64() % j);
      std::swap(img[j - 1], img[pick]);
    }
    for (size_t j = 0; j < cls.size(); ++j)
      perm[static_cast<size_t>(cls[j])] = img[j];
    lo = hi;
  }

  AutElement el;
  el.perm = std::move(perm);
  el.scales = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) el.scales(k) = rng.log_uniform(0.1, 10.0);
  el.scale_factor = 1.0;
  for (Index k = 0; k < n; ++k)
    el.scale_factor *= std::pow(el.scales(k), p.alpha(k));

  Matrix Gs(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) Gs(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(Gs);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < m; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  el.B = el.scale_factor * Q;
  return el;
}

Matrix lie_to_matrix(const ConeParams& p, const LieElement& U) {
  const Index m = p.m();
  const Index n = p.n();
  if (U.G.rows() != m || U.G.cols() != m || U.h.size() != n)
    fail(ErrorCode::DimensionMismatch, "Lie element does not match cone");
  Matrix M = Matrix::Zero(m + n, m + n);
  M.topLeftCorner(m, m) = U.G;
  M.bottomRightCorner(n, n) = U.h.asDiagonal();
  return M;
}

std::vector<LieElement> lie_basis(const ConeParams& p) {
  if (is_soc_case(p))
    fail(ErrorCode::SocCaseUnsupported,
         "the SOC case has extra generators outside the block form");
  const Index m = p.m();
  const Index n = p.n();
  std::vector<LieElement> basis;
  basis.reserve(static_cast<size_t>(n + m * (m - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    LieElement el;
    el.G = p.alpha(i) * Matrix::Identity(m, m);
    el.h = Vector::Unit(n, i);
    basis.push_back(std::move(el));
  }
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b) {
      LieElement el;
      el.G = Matrix::Zero(m, m);
      el.G(a, b) = 1.0;
      el.G(b, a) = -1.0;
      el.h = Vector::Zero(n);
      basis.push_back(std::move(el));
    }
  return basis;
}

Index lie_dim(const ConeParams& p) {
  const Index m = p.m();
  if (is_soc_case(p)) return (m * m + 3 * m + 4) / 2;
  return p.n() + m * (m - 1) / 2;
}

Index lie_dim_numeric(const ConeParams& p) {
  if (is_soc_case(p))
    fail(ErrorCode::SocCaseUnsupported,
         "numeric dimension covers the block form only");
  const Index m = p.m();
  const Index n = p.n();
  const Index vars = m * m + n;
  const Index rows = m * (m + 1) / 2;
  Matrix C = Matrix::Zero(rows, vars);
  Index r = 0;
  for (Index a = 0; a < m; ++a)
    for (Index b = a; b < m; ++b, ++r) {
      C(r, a * m + b) += 1.0;  // G_ab
      C(r, b * m + a) += 1.0;  // G_ba
      if (a == b)
        for (Index i = 0; i < n; ++i) C(r, m * m + i) -= 2.0 * p.alpha(i);
    }
  Eigen::JacobiSVD<Matrix> svd(C);
  double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * std::max(1.0, smax)) ++rank;
  return vars - rank;
}

Matrix matrix_exp(const Matrix& A) {
  if (A.rows() != A.cols())
    fail(ErrorCode::InvalidArgument, "exponential of a non-square matrix");
  return A.exp();
}

bool exp_check(const ConeParams& p, const LieElement& U,
               const std::vector<double>& ts, double tol) {
  const Index m = p.m();
  Matrix sym = U.G + U.G.transpose() -
               2.0 * p.alpha().dot(U.h) * Matrix::Identity(m, m);
  if (sym.cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, U.G.cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << "G + G^T - 2 (alpha . h) I has residual "
        << sym.cwiseAbs().maxCoeff();
    fail(ErrorCode::ConstraintViolated, msg.str());
  }
  double rate = p.alpha().dot(U.h);
  for (double t : ts) {
    Matrix E = matrix_exp(t * lie_to_matrix(p, U));
    if (!is_automorphism(p, E, tol)) return false;
    Matrix eg = E.topLeftCorner(m, m);
    double c = std::exp(t * rate);
    Matrix gram = eg.transpose() * eg - c * c * Matrix::Identity(m, m);
    if (gram.cwiseAbs().maxCoeff() > tol * std::max(1.0, c * c)) return false;
  }
  return true;
}

ConeClassification classify(const ConeParams& p) {
  ConeClassification out;
  out.is_soc_case = is_soc_case(p);
  out.homogeneous = out.is_soc_case;
  out.perfect = out.is_soc_case || p.m() >= 3;
  out.aut_dim = lie_dim(p);
  return out;
}

}  // namespace gpcone
