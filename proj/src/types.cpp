// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/types.hpp"

#include <cmath>
#include <sstream>

namespace gpcone {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ZIsZero: return "ZIsZero";
    case ErrorCode::ZNotOnDualBoundary: return "ZNotOnDualBoundary";
    case ErrorCode::ZBarNotZero: return "ZBarNotZero";
    case ErrorCode::VOnFace: return "VOnFace";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::QNotInHyperplane: return "QNotInHyperplane";
    case ErrorCode::QOutsideBall: return "QOutsideBall";
    case ErrorCode::NoAdmissibleSamples: return "NoAdmissibleSamples";
    case ErrorCode::OmegaNotOnGaugeSurface: return "OmegaNotOnGaugeSurface";
    case ErrorCode::ZetaNotUnit: return "ZetaNotUnit";
    case ErrorCode::SocCaseUnsupported: return "SocCaseUnsupported";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::XOutsideBall: return "XOutsideBall";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

const char* membership_name(Membership s) {
  switch (s) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Exterior: return "exterior";
  }
  return "unknown";
}

ConeParams::ConeParams(Index m, Vector alpha) : m_(m), alpha_(std::move(alpha)) {
  if (m_ < 1) fail(ErrorCode::InvalidParams, "m must be at least 1");
  if (alpha_.size() < 2) fail(ErrorCode::InvalidParams, "n must be at least 2");
  for (Index i = 0; i < alpha_.size(); ++i) {
    double a = alpha_(i);
    if (!std::isfinite(a) || a <= 0.0 || a >= 1.0) {
      std::ostringstream os;
      os << "alpha[" << i << "] = " << a << " outside the open interval (0,1)";
      fail(ErrorCode::InvalidParams, os.str());
    }
  }
  double sum = alpha_.sum();
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "alpha must sum to one, got " << sum;
    fail(ErrorCode::InvalidParams, os.str());
  }
  alpha_ /= sum;
}

SplitPoint SplitPoint::from_full(const ConeParams& p, const Vector& v) {
  if (v.size() != p.dim())
    fail(ErrorCode::DimensionMismatch, "full vector length does not match m+n");
  return {v.head(p.m()), v.tail(p.n())};
}

Vector SplitPoint::full() const {
  Vector v(dim());
  v.head(xbar.size()) = xbar;
  v.tail(xtilde.size()) = xtilde;
  return v;
}

void check_dims(const ConeParams& p, const SplitPoint& x) {
  if (x.m() != p.m() || x.n() != p.n()) {
    std::ostringstream os;
    os << "point has blocks (" << x.m() << ", " << x.n()
       << "), cone expects (" << p.m() << ", " << p.n() << ")";
    fail(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace gpcone
