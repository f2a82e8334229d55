// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#pragma once

#include <string>

#include <json.hpp>

#include "gpcone/automorphisms.hpp"
#include "gpcone/error_bounds.hpp"
#include "gpcone/faces.hpp"
#include "gpcone/facial_reduction.hpp"
#include "gpcone/types.hpp"

namespace gpcone {

// Stable key order in emitted documents (inputs may use any order).
using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& key);
Matrix matrix_from_json(const Json& j, const std::string& key);

/// {"m": ..., "n": ..., "alpha": [...]} (n optional, implied by alpha).
ConeParams params_from_json(const Json& j);
Json to_json(const ConeParams& p);

Json to_json(const MembershipReport& r);

/// Tagged face object: {"kind":"trivial"} | {"kind":"ray","f":[...]} |
/// {"kind":"orthant","index_set":[...]} | {"kind":"full"}. Indices in
/// index_set are 1-based in JSON (0-based in memory).
Json to_json(const ConeParams& p, const Face& face);
Face face_from_json(const ConeParams& p, const Json& j);

Json to_json(const GammaEstimate& g);

/// Problem instance {"m","n","alpha","L_basis","a"}; L_basis is a list of
/// basis vectors (may be empty), "a" defaults to zero.
struct Instance {
  ConeParams params;
  AffineSet affine;
};
Instance instance_from_json(const Json& j);

Json to_json(const ConeParams& p, const Certificate& cert);
Certificate certificate_from_json(const ConeParams& p, const Json& j);

Json to_json(const ConeClassification& c);

/// CSV with header epsilon,dist_cone,dist_face,ratio and one row per grid
/// point, full round-trip precision.
std::string witness_curve_csv(const WitnessCurve& curve);

}  // namespace gpcone
