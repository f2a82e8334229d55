// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0

#include "gpcone/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace gpcone {

namespace {

double number_at(const Json& j, const std::string& key) {
  if (!j.contains(key)) fail(ErrorCode::SchemaError, "missing key \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) fail(ErrorCode::SchemaError, "\"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const Json& j, const std::string& key) {
  if (!j.contains(key)) fail(ErrorCode::SchemaError, "missing key \"" + key + "\"");
  const Json& arr = j.at(key);
  if (!arr.is_array()) fail(ErrorCode::SchemaError, "\"" + key + "\" must be an array");
  Vector v(static_cast<Index>(arr.size()));
  Index i = 0;
  for (const Json& e : arr) {
    if (!e.is_number())
      fail(ErrorCode::SchemaError, "\"" + key + "\" must contain numbers");
    v(i++) = e.get<double>();
  }
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& key) {
  if (!j.contains(key)) fail(ErrorCode::SchemaError, "missing key \"" + key + "\"");
  const Json& rows = j.at(key);
  if (!rows.is_array())
    fail(ErrorCode::SchemaError, "\"" + key + "\" must be an array of rows");
  Index r = static_cast<Index>(rows.size());
  if (r == 0) return Matrix(0, 0);
  Index c = -1;
  Matrix M;
  Index i = 0;
  for (const Json& row : rows) {
    if (!row.is_array())
      fail(ErrorCode::SchemaError, "\"" + key + "\" rows must be arrays");
    if (c < 0) {
      c = static_cast<Index>(row.size());
      M.resize(r, c);
    }
    if (static_cast<Index>(row.size()) != c)
      fail(ErrorCode::SchemaError, "\"" + key + "\" has ragged rows");
    Index k = 0;
    for (const Json& e : row) {
      if (!e.is_number())
        fail(ErrorCode::SchemaError, "\"" + key + "\" must contain numbers");
      M(i, k++) = e.get<double>();
    }
    ++i;
  }
  return M;
}

ConeParams params_from_json(const Json& j) {
  double md = number_at(j, "m");
  Index m = static_cast<Index>(md);
  if (static_cast<double>(m) != md)
    fail(ErrorCode::SchemaError, "\"m\" must be an integer");
  Vector alpha = vector_from_json(j, "alpha");
  if (j.contains("n")) {
    double nd = number_at(j, "n");
    if (nd != static_cast<double>(alpha.size()))
      fail(ErrorCode::SchemaError, "\"n\" disagrees with the length of alpha");
  }
  return ConeParams(m, alpha);
}

Json to_json(const ConeParams& p) {
  Json j;
  j["m"] = p.m();
  j["n"] = p.n();
  j["alpha"] = to_json(p.alpha());
  return j;
}

Json to_json(const MembershipReport& r) {
  Json j;
  j["status"] = membership_name(r.status);
  j["slack"] = r.slack;
  j["min_coord"] = r.min_coord;
  return j;
}

Json to_json(const ConeParams& p, const Face& face) {
  (void)p;
  Json j;
  switch (face_kind(face)) {
    case FaceKind::Trivial:
      j["kind"] = "trivial";
      j["dim"] = 0;
      break;
    case FaceKind::Ray: {
      const auto& rf = std::get<RayFace>(face);
      j["kind"] = "ray";
      j["dim"] = 1;
      j["f"] = to_json(rf.f.full());
      break;
    }
    case FaceKind::Orthant: {
      const auto& of = std::get<OrthantFace>(face);
      j["kind"] = "orthant";
      j["dim"] = face_dim(p, face);
      Json idx = Json::array();
      for (Index i : of.index_set) idx.push_back(i + 1);
      j["index_set"] = idx;
      break;
    }
    case FaceKind::Full:
      j["kind"] = "full";
      j["dim"] = p.dim();
      break;
  }
  return j;
}

Face face_from_json(const ConeParams& p, const Json& j) {
  if (!j.contains("kind") || !j.at("kind").is_string())
    fail(ErrorCode::SchemaError, "face needs a string \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") return TrivialFace{};
  if (kind == "full") return FullFace{};
  if (kind == "ray") {
    Vector f = vector_from_json(j, "f");
    if (f.size() != p.dim())
      fail(ErrorCode::SchemaError, "ray generator has the wrong dimension");
    return RayFace{SplitPoint::from_full(p, f)};
  }
  if (kind == "orthant") {
    if (!j.contains("index_set") || !j.at("index_set").is_array())
      fail(ErrorCode::SchemaError, "orthant face needs \"index_set\"");
    std::vector<Index> idx;
    for (const Json& e : j.at("index_set")) {
      if (!e.is_number_integer())
        fail(ErrorCode::SchemaError, "\"index_set\" must contain integers");
      Index i = e.get<Index>();
      if (i < 1 || i > p.n())
        fail(ErrorCode::SchemaError, "\"index_set\" entry out of range");
      idx.push_back(i - 1);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.empty())
      fail(ErrorCode::SchemaError, "\"index_set\" must be nonempty");
    if (static_cast<Index>(idx.size()) == p.n())
      fail(ErrorCode::SchemaError,
           "\"index_set\" covering every coordinate is the trivial face, "
           "not an orthant face");
    return OrthantFace{std::move(idx)};
  }
  fail(ErrorCode::SchemaError, "unknown face kind \"" + kind + "\"");
}

Json to_json(const GammaEstimate& g) {
  Json j;
  j["eta"] = g.eta;
  j["sampled_value"] = g.sampled_value;
  if (g.analytic_lower) j["analytic_lower"] = *g.analytic_lower;
  j["conservative"] = g.conservative();
  j["sample_count"] = g.sample_count;
  j["seed"] = g.seed;
  return j;
}

Instance instance_from_json(const Json& j) {
  ConeParams p = params_from_json(j);
  std::vector<Vector> basis;
  if (j.contains("L_basis")) {
    const Json& rows = j.at("L_basis");
    if (!rows.is_array())
      fail(ErrorCode::SchemaError, "\"L_basis\" must be an array of vectors");
    for (const Json& row : rows) {
      if (!row.is_array())
        fail(ErrorCode::SchemaError, "\"L_basis\" entries must be arrays");
      Vector v(static_cast<Index>(row.size()));
      Index i = 0;
      for (const Json& e : row) {
        if (!e.is_number())
          fail(ErrorCode::SchemaError, "\"L_basis\" must contain numbers");
        v(i++) = e.get<double>();
      }
      if (v.size() != p.dim())
        fail(ErrorCode::SchemaError, "\"L_basis\" vector has wrong dimension");
      basis.push_back(std::move(v));
    }
  }
  Vector a = Vector::Zero(p.dim());
  if (j.contains("a")) {
    a = vector_from_json(j, "a");
    if (a.size() != p.dim())
      fail(ErrorCode::SchemaError, "\"a\" has the wrong dimension");
  }
  return Instance{p, AffineSet(basis, std::move(a))};
}

Json to_json(const ConeParams& p, const Certificate& cert) {
  Json j;
  j["d_pps"] = cert.d_pps;
  j["face"] = to_json(p, cert.face);
  if (cert.exposing_z) j["exposing_z"] = to_json(cert.exposing_z->full());
  j["exponent"] = cert.exponent;
  j["constant"] = cert.constant;
  j["hoffman"] = cert.hoffman;
  j["eta"] = cert.eta;
  j["provenance"] = provenance_name(cert.provenance);
  if (cert.gamma) j["gamma"] = to_json(*cert.gamma);
  j["seed"] = cert.seed;
  return j;
}

Certificate certificate_from_json(const ConeParams& p, const Json& j) {
  Certificate cert;
  double d = number_at(j, "d_pps");
  cert.d_pps = static_cast<int>(d);
  if (!j.contains("face"))
    fail(ErrorCode::SchemaError, "certificate needs a \"face\"");
  cert.face = face_from_json(p, j.at("face"));
  if (j.contains("exposing_z")) {
    Vector z = vector_from_json(j, "exposing_z");
    if (z.size() != p.dim())
      fail(ErrorCode::SchemaError, "\"exposing_z\" has the wrong dimension");
    cert.exposing_z = SplitPoint::from_full(p, z);
  }
  cert.exponent = number_at(j, "exponent");
  cert.constant = number_at(j, "constant");
  cert.hoffman = number_at(j, "hoffman");
  cert.eta = number_at(j, "eta");
  if (j.contains("provenance") && j.at("provenance").is_string()) {
    std::string s = j.at("provenance").get<std::string>();
    if (s == "interior_point") cert.provenance = Provenance::InteriorPoint;
    else if (s == "supplied_z") cert.provenance = Provenance::SuppliedZ;
    else if (s == "found_z") cert.provenance = Provenance::FoundZ;
    else if (s == "zero_face") cert.provenance = Provenance::ZeroFace;
    else fail(ErrorCode::SchemaError, "unknown provenance \"" + s + "\"");
  }
  if (j.contains("gamma")) {
    const Json& g = j.at("gamma");
    GammaEstimate ge;
    ge.eta = number_at(g, "eta");
    ge.sampled_value = number_at(g, "sampled_value");
    if (g.contains("analytic_lower"))
      ge.analytic_lower = number_at(g, "analytic_lower");
    if (g.contains("sample_count"))
      ge.sample_count = static_cast<int>(number_at(g, "sample_count"));
    if (g.contains("seed"))
      ge.seed = g.at("seed").get<std::uint64_t>();
    cert.gamma = ge;
  }
  if (j.contains("seed")) cert.seed = j.at("seed").get<std::uint64_t>();
  return cert;
}

Json to_json(const ConeClassification& c) {
  Json j;
  j["irreducible"] = c.irreducible;
  j["homogeneous"] = c.homogeneous;
  j["perfect"] = c.perfect;
  j["self_dual"] = c.self_dual;
  j["aut_dim"] = c.aut_dim;
  j["is_soc_case"] = c.is_soc_case;
  return j;
}

std::string witness_curve_csv(const WitnessCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "epsilon,dist_cone,dist_face,ratio\n";
  for (size_t i = 0; i < curve.epsilons.size(); ++i)
    out << curve.epsilons[i] << ',' << curve.dist_to_cone[i] << ','
        << curve.dist_to_face[i] << ',' << curve.ratio[i] << '\n';
  return out.str();
}

}  // namespace gpcone
