// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gpcone {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr const char* kVersion = "0.1.0";

/// Default relative tolerance used by membership classification and most
/// boundary tests. Overridable per call.
inline constexpr double kDefaultTol = 1e-9;

enum class ErrorCode {
  DimensionMismatch,
  InvalidParams,
  InvalidArgument,
  NonConvergence,
  ZIsZero,
  ZNotOnDualBoundary,
  ZBarNotZero,
  VOnFace,
  EpsOutOfRange,
  QNotInHyperplane,
  QOutsideBall,
  NoAdmissibleSamples,
  OmegaNotOnGaugeSurface,
  ZetaNotUnit,
  SocCaseUnsupported,
  ConstraintViolated,
  SearchExhausted,
  XOutsideBall,
  IoError,
  SchemaError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

/// Parameters (m, n, alpha) of the cone
///   P = { (xbar, xtilde) : ||xbar|| <= prod_i xtilde_i^alpha_i, xtilde >= 0 }
/// with m >= 1, n >= 2 and alpha in (0,1)^n summing to one. The stored alpha
/// is normalized to unit sum; construction rejects inputs whose sum deviates
/// from one by more than 1e-9 and entries outside (0,1).
class ConeParams {
 public:
  ConeParams(Index m, Vector alpha);

  Index m() const { return m_; }
  Index n() const { return alpha_.size(); }
  Index dim() const { return m_ + alpha_.size(); }
  const Vector& alpha() const { return alpha_; }
  double alpha(Index i) const { return alpha_(i); }

 private:
  Index m_;
  Vector alpha_;
};

/// A point of R^{m+n} split into the Euclidean block xbar (length m) and the
/// nonnegative block xtilde (length n). Plays the role of both primal points
/// and dual/exposing vectors.
struct SplitPoint {
  Vector xbar;
  Vector xtilde;

  SplitPoint() = default;
  SplitPoint(Vector xb, Vector xt)
      : xbar(std::move(xb)), xtilde(std::move(xt)) {}

  Index m() const { return xbar.size(); }
  Index n() const { return xtilde.size(); }
  Index dim() const { return xbar.size() + xtilde.size(); }

  static SplitPoint zero(const ConeParams& p) {
    return {Vector::Zero(p.m()), Vector::Zero(p.n())};
  }
  static SplitPoint from_full(const ConeParams& p, const Vector& v);

  Vector full() const;
  double norm() const { return std::sqrt(squared_norm()); }
  double squared_norm() const {
    return xbar.squaredNorm() + xtilde.squaredNorm();
  }
  double dot(const SplitPoint& o) const {
    return xbar.dot(o.xbar) + xtilde.dot(o.xtilde);
  }

  SplitPoint operator+(const SplitPoint& o) const {
    return {xbar + o.xbar, xtilde + o.xtilde};
  }
  SplitPoint operator-(const SplitPoint& o) const {
    return {xbar - o.xbar, xtilde - o.xtilde};
  }
  SplitPoint operator*(double c) const { return {c * xbar, c * xtilde}; }
};

inline SplitPoint operator*(double c, const SplitPoint& x) { return x * c; }

/// Throws DimensionMismatch unless x has the block sizes of p.
void check_dims(const ConeParams& p, const SplitPoint& x);

enum class Membership { Interior, Boundary, Exterior };

const char* membership_name(Membership s);

struct MembershipReport {
  Membership status;
  double slack;      // gauge(xtilde) - ||xbar||, with xtilde clamped at 0
  double min_coord;  // min_i xtilde_i
};

}  // namespace gpcone
