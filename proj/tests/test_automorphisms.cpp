#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "gpcone/automorphisms.hpp"
#include "gpcone/cone.hpp"
#include "gpcone/rng.hpp"
#include "test_util.hpp"

using namespace gpcone;
using tutil::cone;
using tutil::pt;
using tutil::vec;

namespace {

Matrix diag3(double a, double b, double c) {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = a;
  A(1, 1) = b;
  A(2, 2) = c;
  return A;
}

// Rotation by pi/2 in the Lorentz coordinates of the SOC case: preserves
// xtilde_1 xtilde_2 - xbar^2 and the trace xtilde_1 + xtilde_2 exactly, but
// is not block diagonal.
Matrix soc_rotation() {
  Matrix A(3, 3);
  A << 0.0, 0.5, -0.5, -1.0, 0.5, 0.5, 1.0, 0.5, 0.5;
  return A;
}

}  // namespace

TEST_CASE("soc case detection") {
  CHECK(is_soc_case(cone(1, {0.5, 0.5})));
  CHECK(is_soc_case(cone(7, {0.5, 0.5})));
  CHECK(!is_soc_case(cone(1, {0.3, 0.7})));
  CHECK(!is_soc_case(cone(1, {0.25, 0.25, 0.5})));
}

TEST_CASE("is_automorphism: diagonal worked examples") {
  ConeParams p = cone(1, {0.3, 0.7});
  CHECK(is_automorphism(p, Matrix::Identity(3, 3)));
  // c = 4^0.3 * 1^0.7 != 2, so diag(2,4,1) fails the norm condition.
  CHECK(!is_automorphism(p, diag3(2.0, 4.0, 1.0)));
  CHECK(is_automorphism(p, diag3(std::pow(4.0, 0.3), 4.0, 1.0)));
  // Negative entries in the E block are never allowed.
  CHECK(!is_automorphism(p, diag3(1.0, 1.0, -1.0)));
  // Off-diagonal coupling between the blocks is never allowed (non-SOC).
  Matrix off = Matrix::Identity(3, 3);
  off(0, 1) = 0.5;
  CHECK(!is_automorphism(p, off));
  CHECK_THROWS_AS(is_automorphism(p, Matrix::Identity(4, 4)), Error);
}

TEST_CASE("is_automorphism: permutations must respect alpha classes") {
  ConeParams p = cone(1, {0.2, 0.2, 0.6});
  // Swap the two alpha = 0.2 coordinates, with compensating scales.
  Matrix A = Matrix::Zero(4, 4);
  A(0, 0) = 1.0;
  A(2, 1) = 3.0;      // xtilde_1 -> 3 xtilde_1 placed at slot 2
  A(1, 2) = 1.0 / 3;  // xtilde_2 -> xtilde_2/3 placed at slot 1
  A(3, 3) = 1.0;
  CHECK(is_automorphism(p, A));
  // Swapping alpha = 0.2 with alpha = 0.6 changes the gauge: rejected.
  Matrix B = Matrix::Zero(4, 4);
  B(0, 0) = 1.0;
  B(3, 1) = 1.0;
  B(2, 2) = 1.0;
  B(1, 3) = 1.0;
  CHECK(!is_automorphism(p, B));
}

TEST_CASE("sampled automorphisms: group laws and equivariance") {
  ConeParams p = cone(2, {0.2, 0.2, 0.6});
  AutElement a = sample_automorphism(p, 11);
  AutElement b = sample_automorphism(p, 12);
  Matrix Ma = a.to_matrix(p);
  Matrix Mb = b.to_matrix(p);
  CHECK(is_automorphism(p, Ma));
  CHECK(is_automorphism(p, Mb));
  // Determinism.
  CHECK((sample_automorphism(p, 11).to_matrix(p) - Ma).norm() == 0.0);

  // compose matches the matrix product (apply `other` first).
  AutElement ab = a.compose(p, b);
  CHECK((ab.to_matrix(p) - Ma * Mb).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(is_automorphism(p, ab.to_matrix(p)));

  AutElement ai = a.inverse(p);
  CHECK((ai.to_matrix(p) * Ma - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <=
        1e-10);
  CHECK(is_automorphism(p, ai.to_matrix(p)));

  // Boundary and interior preservation plus gauge equivariance.
  for (const auto& x : sample_boundary(p, 21, 100, 2.0)) {
    SplitPoint y = SplitPoint::from_full(p, Ma * x.full());
    CHECK(membership(p, y, 1e-7).status == Membership::Boundary);
    CHECK(gauge(p, y.xtilde) ==
          doctest::Approx(a.scale_factor * gauge(p, x.xtilde)).epsilon(1e-10));
    CHECK(y.xbar.norm() ==
          doctest::Approx(a.scale_factor * x.xbar.norm()).epsilon(1e-10));
  }
  SplitPoint zin{Vector::Zero(2), vec({1.0, 1.0, 1.0})};
  CHECK(membership(p, SplitPoint::from_full(p, Ma * zin.full())).status ==
        Membership::Interior);

  // The xbar = 0 slice is Aut-invariant: the top-right block vanishes.
  CHECK(Ma.topRightCorner(2, 3).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("soc case falls back to the sampled geometric check") {
  ConeParams p = cone(1, {0.5, 0.5});
  Matrix R = soc_rotation();
  // Not block diagonal, yet a genuine automorphism of the SOC cone.
  CHECK(is_automorphism(p, R));
  CHECK(is_automorphism(p, Matrix::Identity(3, 3)));
  // Reflecting the tilde block out of the cone is rejected.
  CHECK(!is_automorphism(p, diag3(1.0, 1.0, -1.0)));
  Matrix sing = Matrix::Zero(3, 3);
  sing(0, 0) = 1.0;
  CHECK(!is_automorphism(p, sing));
  // The same rotation is not an automorphism once the weights differ.
  CHECK(!is_automorphism(cone(1, {0.3, 0.7}), R));
}

TEST_CASE("lie basis: counts, constraint, independence") {
  ConeParams p = cone(1, {0.3, 0.7});
  auto basis = lie_basis(p);
  CHECK(basis.size() == 2);

  ConeParams p33 = cone(3, {0.2, 0.3, 0.5});
  auto basis33 = lie_basis(p33);
  CHECK(basis33.size() == 6);
  for (const auto& U : basis33) {
    double ah = p33.alpha().dot(U.h);
    Matrix resid = U.G + U.G.transpose() -
                   2.0 * ah * Matrix::Identity(p33.m(), p33.m());
    CHECK(resid.cwiseAbs().maxCoeff() <= 1e-14);
  }
  // Independence: flatten into rows and rank-check.
  Matrix flat(static_cast<Index>(basis33.size()), 9 + 3);
  for (size_t k = 0; k < basis33.size(); ++k) {
    Index col = 0;
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) flat(static_cast<Index>(k), col++) =
          basis33[k].G(i, j);
    for (Index i = 0; i < 3; ++i)
      flat(static_cast<Index>(k), col++) = basis33[k].h(i);
  }
  Eigen::JacobiSVD<Matrix> svd(flat);
  CHECK(svd.singularValues()(svd.singularValues().size() - 1) > 1e-10);

  CHECK_THROWS_AS(lie_basis(cone(2, {0.5, 0.5})), Error);
}

TEST_CASE("lie dimensions: closed form and numeric agree") {
  CHECK(lie_dim(cone(1, {0.5, 0.5})) == 4);
  CHECK(lie_dim(cone(2, {0.5, 0.5})) == 7);
  CHECK(lie_dim(cone(3, {0.1, 0.2, 0.7})) == 6);
  CHECK(lie_dim(cone(2, {0.3, 0.7})) == 3);

  CHECK(lie_dim_numeric(cone(1, {0.2, 0.3, 0.5})) == 3);
  CHECK(lie_dim_numeric(cone(4, {0.3, 0.7})) == 8);
  CHECK_THROWS_AS(lie_dim_numeric(cone(1, {0.5, 0.5})), Error);

  for (Index m = 1; m <= 5; ++m)
    for (Index n = 2; n <= 5; ++n) {
      Vector alpha(n);
      for (Index i = 0; i < n; ++i) alpha(i) = static_cast<double>(i + 2);
      alpha /= alpha.sum();
      ConeParams p(m, alpha);
      REQUIRE(!is_soc_case(p));
      CHECK(lie_dim_numeric(p) == lie_dim(p));
      CHECK(lie_dim(p) == n + m * (m - 1) / 2);
    }
}

TEST_CASE("matrix exponential basics") {
  CHECK((matrix_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() <=
        1e-14);
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -2.0;
  Matrix E = matrix_exp(D);
  CHECK(E(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
  CHECK(E(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(std::abs(E(0, 1)) + std::abs(E(1, 0)) <= 1e-16);

  double th = 0.7;
  Matrix J(2, 2);
  J << 0.0, -th, th, 0.0;
  Matrix R = matrix_exp(J);
  CHECK(R(0, 0) == doctest::Approx(std::cos(th)).epsilon(1e-13));
  CHECK(R(1, 0) == doctest::Approx(std::sin(th)).epsilon(1e-13));

  Matrix A(2, 2);
  A << 0.3, 1.1, -0.2, 0.4;
  CHECK((matrix_exp(A) * matrix_exp(-A) - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("one-parameter subgroups stay in the automorphism group") {
  ConeParams p = cone(2, {0.3, 0.7});
  std::vector<double> ts = {1.0, -1.0, 0.1, -0.1};

  LieElement zero{Matrix::Zero(2, 2), Vector::Zero(2)};
  CHECK(exp_check(p, zero, ts));

  Matrix G(2, 2);
  G << 0.0, 1.0, -1.0, 0.0;
  LieElement skew{G, Vector::Zero(2)};
  CHECK(exp_check(p, skew, ts));

  // Worked example: G + G^T = 2I matches 2 (alpha . h) I with h = (1,1).
  Matrix G2(2, 2);
  G2 << 1.0, 5.0, -5.0, 1.0;
  LieElement spiral{G2, vec({1.0, 1.0})};
  CHECK(exp_check(p, spiral, ts));

  LieElement badU{diag3(1.0, 2.0, 0.0).topLeftCorner(2, 2), vec({1.0, 1.0})};
  try {
    exp_check(p, badU, ts);
    FAIL("expected ConstraintViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConstraintViolated);
  }

  // Every Lie basis element generates automorphisms.
  for (const auto& U : lie_basis(p)) CHECK(exp_check(p, U, ts));
}

TEST_CASE("classification") {
  ConeClassification c33 = classify(cone(3, {0.2, 0.3, 0.5}));
  CHECK(c33.irreducible);
  CHECK(!c33.homogeneous);
  CHECK(c33.perfect);
  CHECK(c33.self_dual);
  CHECK(c33.aut_dim == 6);
  CHECK(!c33.is_soc_case);

  ConeClassification c23 = classify(cone(2, {0.2, 0.3, 0.5}));
  CHECK(!c23.perfect);
  CHECK(!c23.homogeneous);

  ConeClassification soc = classify(cone(5, {0.5, 0.5}));
  CHECK(soc.homogeneous);
  CHECK(soc.perfect);
  CHECK(soc.is_soc_case);
  CHECK(soc.aut_dim == (25 + 15 + 4) / 2);

  // Perfectness criterion: aut_dim >= m + n, over the whole matrix.
  for (Index m = 1; m <= 5; ++m) {
    for (Index n = 2; n <= 5; ++n) {
      Vector alpha(n);
      for (Index i = 0; i < n; ++i) alpha(i) = static_cast<double>(i + 2);
      alpha /= alpha.sum();
      ConeClassification c = classify(ConeParams(m, alpha));
      CHECK(c.perfect == (c.aut_dim >= m + n));
      CHECK(c.irreducible);
      CHECK(c.self_dual);
      ConeClassification cs = classify(cone(m, {0.5, 0.5}));
      CHECK(cs.perfect == (cs.aut_dim >= m + 2));
    }
  }
}
