#include <doctest.h>

#include <cmath>
#include <vector>

#include "gpcone/cone.hpp"
#include "gpcone/rng.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace gpcone;
using tutil::cone;
using tutil::pt;
using tutil::vec;

TEST_CASE("cone params validation") {
  CHECK_THROWS_AS(ConeParams(0, vec({0.5, 0.5})), Error);
  CHECK_THROWS_AS(ConeParams(-1, vec({0.5, 0.5})), Error);
  CHECK_THROWS_AS(ConeParams(1, vec({1.0})), Error);  // n >= 2
  CHECK_THROWS_AS(ConeParams(1, vec({1.2, -0.2})), Error);
  CHECK_THROWS_AS(ConeParams(1, vec({0.5, 0.6})), Error);  // sum off by 0.1
  CHECK_THROWS_AS(ConeParams(1, vec({1.0, 0.0})), Error);  // entries in (0,1)

  try {
    ConeParams(1, vec({0.5, 0.6}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidParams);
  }

  ConeParams p = cone(2, {0.3, 0.7});
  CHECK(p.m() == 2);
  CHECK(p.n() == 2);
  CHECK(p.dim() == 4);
  CHECK(p.alpha().sum() == doctest::Approx(1.0).epsilon(1e-15));

  // Tiny drift inside the 1e-9 gate is renormalized away.
  ConeParams q(1, vec({0.5 + 4e-10, 0.5 + 4e-10}));
  CHECK(q.alpha().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gauge values and homogeneity") {
  ConeParams p = cone(1, {0.5, 0.5});
  CHECK(gauge(p, vec({1.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gauge(p, vec({4.0, 1.0})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gauge(p, vec({0.0, 3.0})) == 0.0);
  // Entries in [-tol*scale, 0) clamp to zero.
  CHECK(gauge(p, vec({-1e-10, 1.0})) == 0.0);
  CHECK_THROWS_AS(gauge(p, vec({-1.0, 1.0})), Error);

  ConeParams p3 = cone(1, {0.2, 0.3, 0.5});
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    Vector xt(3);
    for (Index i = 0; i < 3; ++i) xt(i) = rng.log_uniform(0.01, 100.0);
    double t = rng.log_uniform(0.1, 10.0);
    CHECK(gauge(p3, t * xt) ==
          doctest::Approx(t * gauge(p3, xt)).epsilon(1e-12));
    // Weighted AM-GM: gauge below the weighted arithmetic mean.
    CHECK(gauge(p3, xt) <= p3.alpha().dot(xt) * (1 + 1e-12));
  }
}

TEST_CASE("membership classification") {
  ConeParams p = cone(1, {0.5, 0.5});
  CHECK(membership(p, pt(p, {0.0, 1.0, 1.0})).status == Membership::Interior);
  CHECK(membership(p, pt(p, {1.0, 1.0, 1.0})).status == Membership::Boundary);
  CHECK(membership(p, pt(p, {2.0, 1.0, 1.0})).status == Membership::Exterior);
  CHECK(membership(p, pt(p, {0.0, 1.0, 0.0})).status == Membership::Boundary);
  CHECK(membership(p, pt(p, {0.0, 0.0, 0.0})).status == Membership::Boundary);
  CHECK(membership(p, pt(p, {0.0, -1.0, 1.0})).status == Membership::Exterior);

  MembershipReport r = membership(p, pt(p, {1.0, 4.0, 1.0}));
  CHECK(r.slack == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.min_coord == doctest::Approx(1.0).epsilon(1e-14));

  // Tolerance scales with the point.
  SplitPoint big = pt(p, {1e8 + 1.0, 1e8, 1e8});
  CHECK(membership(p, big, 1e-7).status == Membership::Boundary);
  CHECK(membership(p, big, 1e-12).status == Membership::Exterior);
}

TEST_CASE("dual transform and dual membership") {
  ConeParams p = cone(1, {0.5, 0.5});
  SplitPoint z = pt(p, {1.0, 0.5, 0.5});
  SplitPoint im = dual_transform(p, z);
  CHECK(im.xbar(0) == doctest::Approx(1.0));
  CHECK(im.xtilde(0) == doctest::Approx(1.0));
  CHECK(im.xtilde(1) == doctest::Approx(1.0));
  CHECK(dual_membership(p, z).status == Membership::Boundary);
  CHECK(dual_membership(p, pt(p, {0.0, 1.0, 1.0})).status ==
        Membership::Interior);
  CHECK(dual_membership(p, pt(p, {3.0, 1.0, 1.0})).status ==
        Membership::Exterior);

  ConeParams p37 = cone(1, {0.3, 0.7});
  // gauge(ztilde/alpha) = 2 here, so zbar of norm 2 sits on the dual boundary.
  CHECK(dual_membership(p37, pt(p37, {2.0, 0.6, 1.4})).status ==
        Membership::Boundary);
}

TEST_CASE("duality pairing is nonnegative across the cone and its dual") {
  std::vector<ConeParams> ps = {cone(1, {0.3, 0.7}), cone(2, {0.2, 0.3, 0.5})};
  for (const ConeParams& p : ps) {
    auto xs = sample_boundary(p, 101, 50, 2.0);
    auto zs = sample_dual(p, 202, 100, 2.0);
    for (const auto& x : xs)
      for (const auto& z : zs)
        CHECK(x.dot(z) >= -1e-12 * x.norm() * z.norm());
  }
}

TEST_CASE("self-duality under the diagonal map") {
  ConeParams p = cone(2, {0.3, 0.7});
  auto zs = sample_dual(p, 7, 200, 3.0);
  for (const auto& z : zs) {
    CHECK(dual_membership(p, z).status != Membership::Exterior);
    CHECK(membership(p, dual_transform(p, z)).status != Membership::Exterior);
  }
}

TEST_CASE("projection closed-form fixture") {
  ConeParams p = cone(1, {0.5, 0.5});
  SplitPoint x = pt(p, {2.0, 1.0, 1.0});
  SplitPoint proj = project_onto_cone(p, x);
  CHECK(proj.xbar(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(proj.xtilde(0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(proj.xtilde(1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(distance_to_cone(p, x) ==
        doctest::Approx(std::sqrt(6.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("projection easy cases") {
  ConeParams p = cone(1, {0.5, 0.5});
  // Points of the cone are fixed.
  SplitPoint in = pt(p, {0.5, 1.0, 1.0});
  SplitPoint pin = project_onto_cone(p, in);
  CHECK((pin - in).norm() <= 1e-14);
  // Negative roundoff on the tilde block is cleaned, not projected around.
  SplitPoint dirty = pt(p, {0.0, -1e-12, 4.0});
  SplitPoint pd = project_onto_cone(p, dirty);
  CHECK(pd.xtilde(0) == 0.0);
  CHECK(pd.xtilde(1) == 4.0);
  // -x in the dual cone projects to zero.
  SplitPoint polar = pt(p, {0.0, -1.0, -1.0});
  CHECK(project_onto_cone(p, polar).norm() == 0.0);
  // xbar = 0 clamps the tilde block.
  SplitPoint axis = pt(p, {0.0, -3.0, 5.0});
  SplitPoint pa = project_onto_cone(p, axis);
  CHECK(pa.xbar.norm() == 0.0);
  CHECK(pa.xtilde(0) == 0.0);
  CHECK(pa.xtilde(1) == 5.0);
  CHECK(project_onto_cone(p, SplitPoint::zero(p)).norm() == 0.0);
}

namespace {

void check_moreau(const ConeParams& p, const SplitPoint& x, double tol) {
  SplitPoint proj = project_onto_cone(p, x);
  SplitPoint r = x - proj;
  double scale = std::max(1.0, x.norm());
  // Projection lands in the cone, residual in the polar cone, orthogonally.
  // dist(r, -K*) = ||P_K(r)|| by the Moreau decomposition of r itself; a
  // membership classification of -r would be fooled by ulp truncation of
  // near-boundary residuals under small exponents.
  CHECK(membership(p, proj, 1e-7).status != Membership::Exterior);
  CHECK(std::abs(proj.dot(r)) <= tol * scale * scale);
  CHECK(project_onto_cone(p, r).norm() <= tol * scale);
}

}  // namespace

TEST_CASE("moreau decomposition across cone sizes") {
  std::vector<ConeParams> ps = {cone(1, {0.3, 0.7}), cone(2, {0.5, 0.5}),
                                cone(3, {0.2, 0.3, 0.5}),
                                cone(1, {0.1, 0.2, 0.3, 0.4})};
  for (const ConeParams& p : ps) {
    Rng rng(derive_seed(5, static_cast<std::uint64_t>(p.dim())));
    for (int k = 0; k < 250; ++k) {
      SplitPoint x{rng.normal_vector(p.m()) * rng.log_uniform(0.05, 20.0),
                   rng.normal_vector(p.n()) * rng.log_uniform(0.05, 20.0)};
      check_moreau(p, x, 1e-8);
    }
  }
}

TEST_CASE("projection homogeneity, idempotence, nonexpansiveness") {
  ConeParams p = cone(2, {0.3, 0.7});
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    SplitPoint x{rng.normal_vector(2), rng.normal_vector(2)};
    SplitPoint y{rng.normal_vector(2), rng.normal_vector(2)};
    SplitPoint px = project_onto_cone(p, x);
    double t = rng.log_uniform(0.1, 10.0);
    SplitPoint pt_scaled = project_onto_cone(p, x * t);
    CHECK((pt_scaled - px * t).norm() <= 1e-9 * std::max(1.0, t * x.norm()));
    CHECK((project_onto_cone(p, px) - px).norm() <=
          1e-9 * std::max(1.0, px.norm()));
    SplitPoint py = project_onto_cone(p, y);
    CHECK((px - py).norm() <= (x - y).norm() * (1.0 + 1e-10) + 1e-14);
  }
}

TEST_CASE("projection agrees with the brute-force oracle") {
  ConeParams p = cone(1, {0.3, 0.7});
  Rng rng(29);
  for (int k = 0; k < 50; ++k) {
    SplitPoint x{rng.normal_vector(1) * rng.log_uniform(0.2, 5.0),
                 rng.normal_vector(2) * rng.log_uniform(0.2, 5.0)};
    double d_lib = distance_to_cone(p, x);
    double d_orc = oracle::distance(p, x);
    CHECK(std::abs(d_lib - d_orc) <= 1e-4);
    SplitPoint q_orc = oracle::project(p, x);
    SplitPoint q_lib = project_onto_cone(p, x);
    CHECK((q_lib - q_orc).norm() <= 1e-3);
  }
}

TEST_CASE("boundary samples are deterministic boundary points") {
  ConeParams p = cone(2, {0.2, 0.3, 0.5});
  auto a = sample_boundary(p, 42, 30, 2.5);
  auto b = sample_boundary(p, 42, 30, 2.5);
  REQUIRE(a.size() == 30);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK(membership(p, a[i], 1e-9).status == Membership::Boundary);
    CHECK(a[i].norm() <= 2.5 * (1 + 1e-12));
    CHECK(a[i].norm() > 0.0);
  }
  // Per-index seed derivation: shorter runs are prefixes of longer ones.
  auto c = sample_boundary(p, 42, 10, 2.5);
  for (size_t i = 0; i < c.size(); ++i) CHECK((a[i] - c[i]).norm() == 0.0);
}

TEST_CASE("dual samples stay in the dual cone") {
  ConeParams p = cone(1, {0.3, 0.7});
  auto zs = sample_dual(p, 3, 100, 1.5);
  REQUIRE(zs.size() == 100);
  for (const auto& z : zs) {
    CHECK(dual_membership(p, z, 1e-9).status != Membership::Exterior);
    CHECK(z.norm() <= 1.5 * (1 + 1e-12));
  }
}
