// gpcone - generalized power cone toolkit
// Copyright 2026 gpcone contributors
// Licensed under Apache 2.0
//
// Command-line front end. Every structured result is JSON with a version and
// the seed that produced it; tightness curves are CSV. Exit codes: 0 success,
// 2 invalid input (schema, dimensions, domain violations), 3 search or
// iteration budgets exhausted.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gpcone/automorphisms.hpp"
#include "gpcone/cone.hpp"
#include "gpcone/error_bounds.hpp"
#include "gpcone/faces.hpp"
#include "gpcone/facial_reduction.hpp"
#include "gpcone/serialize.hpp"
#include "gpcone/types.hpp"

namespace {

using gpcone::Json;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  double eta = 1.0;
  int samples = 10000;
  std::string kind;  // tightness only: "ray" or "orthant"
};

Json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) gpcone::fail(gpcone::ErrorCode::IoError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    gpcone::fail(gpcone::ErrorCode::SchemaError,
                 std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    gpcone::fail(gpcone::ErrorCode::SchemaError, "input must be a JSON object");
  return j;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out)
    gpcone::fail(gpcone::ErrorCode::IoError, "cannot write " + opt.output);
  out << text;
}

Json output_shell(const Options& opt, const std::string& command) {
  Json j;
  j["version"] = gpcone::kVersion;
  j["command"] = command;
  j["seed"] = opt.seed;
  return j;
}

void emit_json(const Options& opt, const Json& j) {
  emit(opt, j.dump(2) + "\n");
}

gpcone::SplitPoint point_field(const gpcone::ConeParams& p, const Json& in,
                               const std::string& key) {
  gpcone::Vector v = gpcone::vector_from_json(in, key);
  if (v.size() != p.dim())
    gpcone::fail(gpcone::ErrorCode::SchemaError,
                 "\"" + key + "\" must have length m + n");
  return gpcone::SplitPoint::from_full(p, v);
}

int run_membership(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  gpcone::SplitPoint x = point_field(p, in, "x");
  Json out = output_shell(opt, "membership");
  out["params"] = gpcone::to_json(p);
  out["report"] = gpcone::to_json(gpcone::membership(p, x, opt.tol));
  out["dual_report"] = gpcone::to_json(gpcone::dual_membership(p, x, opt.tol));
  emit_json(opt, out);
  return 0;
}

int run_project(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  gpcone::SplitPoint x = point_field(p, in, "x");
  gpcone::SplitPoint proj = gpcone::project_onto_cone(p, x);
  gpcone::SplitPoint r = x - proj;
  Json out = output_shell(opt, "project");
  out["params"] = gpcone::to_json(p);
  out["projection"] = gpcone::to_json(proj.full());
  out["distance"] = r.norm();
  Json moreau;
  moreau["residual_pairing"] = r.dot(proj);
  // dist(r, -K*) = ||P_K(r)|| by the Moreau decomposition of r itself.
  moreau["residual_in_polar"] =
      r.norm() == 0.0 ||
      gpcone::project_onto_cone(p, r).norm() <=
          1e-7 * std::max(1.0, x.norm());
  out["moreau"] = moreau;
  emit_json(opt, out);
  return 0;
}

int run_face(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  gpcone::SplitPoint z = point_field(p, in, "z");
  gpcone::Face face = gpcone::expose_face(p, z, opt.tol);
  Json out = output_shell(opt, "face");
  out["params"] = gpcone::to_json(p);
  out["face"] = gpcone::to_json(p, face);
  out["exponent"] = gpcone::exponent_for_face(p, face);
  emit_json(opt, out);
  return 0;
}

int run_certify(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::Instance inst = gpcone::instance_from_json(in);
  std::optional<gpcone::SplitPoint> supplied;
  if (in.contains("z")) supplied = point_field(inst.params, in, "z");
  gpcone::Certificate cert =
      gpcone::certify(inst.params, inst.affine, opt.eta, opt.samples, opt.seed,
                      opt.samples, supplied);
  Json out = output_shell(opt, "certify");
  out["params"] = gpcone::to_json(inst.params);
  out["certificate"] = gpcone::to_json(inst.params, cert);
  emit_json(opt, out);
  return 0;
}

int run_tightness(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  gpcone::SplitPoint z = point_field(p, in, "z");
  std::vector<double> eps = gpcone::default_epsilons();
  if (in.contains("epsilons")) {
    gpcone::Vector e = gpcone::vector_from_json(in, "epsilons");
    eps.assign(e.data(), e.data() + e.size());
  }
  gpcone::WitnessCurve curve;
  if (opt.kind == "ray") {
    curve = gpcone::witness_curve_ray(p, z, eps);
  } else if (opt.kind == "orthant") {
    gpcone::Vector u = gpcone::Vector::Unit(p.m(), 0);
    if (in.contains("u")) {
      u = gpcone::vector_from_json(in, "u");
      if (u.size() != p.m())
        gpcone::fail(gpcone::ErrorCode::SchemaError,
                     "\"u\" must have length m");
      double un = u.norm();
      if (!(un > 0.0))
        gpcone::fail(gpcone::ErrorCode::SchemaError, "\"u\" must be nonzero");
      u /= un;
    }
    curve = gpcone::witness_curve_orthant(p, z, u, eps);
  } else {
    gpcone::fail(gpcone::ErrorCode::InvalidArgument,
                 "--kind must be ray or orthant");
  }
  emit(opt, gpcone::witness_curve_csv(curve));
  return 0;
}

int run_classify(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  Json out = output_shell(opt, "classify");
  out["params"] = gpcone::to_json(p);
  out["classification"] = gpcone::to_json(gpcone::classify(p));
  out["lie_dim"] = gpcone::lie_dim(p);
  if (!gpcone::is_soc_case(p))
    out["lie_dim_numeric"] = gpcone::lie_dim_numeric(p);
  emit_json(opt, out);
  return 0;
}

int run_aut_check(const Options& opt) {
  Json in = load_input(opt.input);
  gpcone::ConeParams p = gpcone::params_from_json(in);
  gpcone::Matrix A = gpcone::matrix_from_json(in, "A");
  Json out = output_shell(opt, "aut-check");
  out["params"] = gpcone::to_json(p);
  out["is_automorphism"] = gpcone::is_automorphism(p, A, opt.tol);
  out["soc_case_sampled_check"] = gpcone::is_soc_case(p);
  emit_json(opt, out);
  return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool wants_eta,
                bool wants_samples) {
  cmd->add_option("input", opt.input, "input JSON file")->required();
  cmd->add_option("--output", opt.output, "write output here instead of stdout");
  cmd->add_option("--seed", opt.seed, "base seed for all sampling (default 0)");
  cmd->add_option("--tol", opt.tol,
                  "membership/verification tolerance (default 1e-9)");
  if (wants_eta)
    cmd->add_option("--eta", opt.eta, "ball radius eta (default 1.0)");
  if (wants_samples)
    cmd->add_option("--samples", opt.samples,
                    "sampling/search budget (default 10000)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized power cone toolkit"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* c_membership =
      app.add_subcommand("membership", "classify a point against the cone");
  add_common(c_membership, opt, false, false);
  CLI::App* c_project =
      app.add_subcommand("project", "Euclidean projection onto the cone");
  add_common(c_project, opt, false, false);
  CLI::App* c_face =
      app.add_subcommand("face", "face exposed by a dual boundary vector");
  add_common(c_face, opt, false, false);
  CLI::App* c_certify = app.add_subcommand(
      "certify", "facial-reduction certificate for (L + a) against the cone");
  add_common(c_certify, opt, true, true);
  CLI::App* c_tightness = app.add_subcommand(
      "tightness", "witness curve showing the error-bound exponent is tight");
  add_common(c_tightness, opt, false, false);
  c_tightness->add_option("--kind", opt.kind, "ray or orthant")
      ->required()
      ->check(CLI::IsMember({"ray", "orthant"}));
  CLI::App* c_classify = app.add_subcommand(
      "classify", "structural classification and automorphism dimensions");
  add_common(c_classify, opt, false, false);
  CLI::App* c_aut =
      app.add_subcommand("aut-check", "test a matrix for cone automorphism");
  add_common(c_aut, opt, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_membership)) return run_membership(opt);
    if (app.got_subcommand(c_project)) return run_project(opt);
    if (app.got_subcommand(c_face)) return run_face(opt);
    if (app.got_subcommand(c_certify)) return run_certify(opt);
    if (app.got_subcommand(c_tightness)) return run_tightness(opt);
    if (app.got_subcommand(c_classify)) return run_classify(opt);
    if (app.got_subcommand(c_aut)) return run_aut_check(opt);
  } catch (const gpcone::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code() == gpcone::ErrorCode::NonConvergence ||
            e.code() == gpcone::ErrorCode::SearchExhausted)
               ? 3
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
