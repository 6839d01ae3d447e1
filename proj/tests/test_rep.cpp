#include <doctest.h>

#include "qkz/idsuite.hpp"
#include "qkz/rep.hpp"
#include "qkz/tensor.hpp"

using namespace qkz;

namespace {

QContext ctx07() {
  QContext c;
  c.q = 0.7;
  return c;
}

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// U_q(sl2) relations for one node: K E K^-1 = q^2 E, K F K^-1 = q^-2 F,
// [E, F] = (K - K^-1) / (q - q^-1).
double node_residual(const Mat& e, const Mat& f, const Mat& k, const Mat& kinv, cplx q) {
  double r = maxabs(k * e * kinv - q * q * e);
  r = std::max(r, maxabs(k * f * kinv - f / (q * q)));
  r = std::max(r, maxabs(e * f - f * e - (k - kinv) / (q - 1.0 / q)));
  return r;
}

}  // namespace

TEST_SUITE("rep") {

TEST_CASE("spin one half matrices") {
  const EvalRep rep(1, {1, 1}, ctx07());
  const cplx z{1.3, 0.4};
  Mat e1 = Mat::Zero(2, 2), f1 = Mat::Zero(2, 2), e0 = Mat::Zero(2, 2), f0 = Mat::Zero(2, 2);
  e1(0, 1) = z;
  f1(1, 0) = 1.0 / z;
  e0(1, 0) = z;
  f0(0, 1) = 1.0 / z;
  CHECK(maxabs(rep.gen(Gen::E1, z) - e1) < 1e-15);
  CHECK(maxabs(rep.gen(Gen::F1, z) - f1) < 1e-15);
  CHECK(maxabs(rep.gen(Gen::E0, z) - e0) < 1e-15);
  CHECK(maxabs(rep.gen(Gen::F0, z) - f0) < 1e-15);
  Mat k = Mat::Zero(2, 2);
  k(0, 0) = 0.7;
  k(1, 1) = 1.0 / 0.7;
  CHECK(maxabs(rep.qh1(1.0) - k) < 1e-15);
  CHECK(maxabs(rep.qh0(1.0) - k.inverse()) < 1e-14);
}

TEST_CASE("spin one raising operator carries [1][2] and [2][1]") {
  const EvalRep rep(2, {1, 1}, ctx07());
  const Mat e = rep.gen(Gen::E1, 1.0);
  const double two = 0.7 + 1.0 / 0.7;
  CHECK(std::abs(e(0, 1) - two) < 1e-14);
  CHECK(std::abs(e(1, 2) - two) < 1e-14);
  CHECK(std::abs(e(0, 2)) == 0.0);
}

TEST_CASE("quantum algebra relations for V and V*") {
  const QContext c = ctx07();
  for (int m : {1, 2, 3}) {
    for (GradingChoice g : {GradingChoice{1, 1}, GradingChoice{1, 0}, GradingChoice{2, 1}}) {
      const EvalRep rep(m, g, c);
      const cplx z{0.9, -0.5};
      for (int d : {0, 1, 2}) {
        const Mat k1 = rep.gen(Gen::K1, z, d, 1.0), k1i = rep.gen(Gen::K1, z, d, -1.0);
        const Mat k0 = rep.gen(Gen::K0, z, d, 1.0), k0i = rep.gen(Gen::K0, z, d, -1.0);
        CHECK(node_residual(rep.gen(Gen::E1, z, d), rep.gen(Gen::F1, z, d), k1, k1i, c.q) < 1e-12);
        CHECK(node_residual(rep.gen(Gen::E0, z, d), rep.gen(Gen::F0, z, d), k0, k0i, c.q) < 1e-12);
        // K0 K1 is central for a level-zero module.
        CHECK(maxabs(k0 * k1 - Mat::Identity(m + 1, m + 1)) < 1e-13);
      }
    }
  }
}

TEST_CASE("displayed dual families match the antipode construction") {
  for (int m : {1, 2, 3}) {
    const EvalRep rep(m, {1, 1}, ctx07());
    const cplx z{1.2, 0.3};
    for (Gen a : kAllGens) {
      const Mat want = rep.gen(a, z, 1);
      const Mat got = rep.displayed_dual(a, z);
      CHECK(maxabs(want - got) <= 1e-12 * std::max(1.0, maxabs(want)));
    }
  }
}

TEST_CASE("hopf antipode residual") {
  for (int m : {1, 2, 3}) {
    const EvalRep rep(m, {1, 1}, ctx07());
    CHECK(hopf_residual(rep, cplx{0.8, 0.6}) < 1e-12);
  }
}

TEST_CASE("coproduct is a homomorphism") {
  const QContext c = ctx07();
  auto rep = build_eval_rep(2, {1, 1}, c);
  for (SiteKind k1 : {SiteKind::V, SiteKind::Vdual}) {
    for (SiteKind k2 : {SiteKind::V, SiteKind::Vdual}) {
      const SiteModule a{k1, rep, {1.1, 0.2}}, b{k2, rep, {0.6, -0.7}};
      const Mat e = coproduct_image(Gen::E1, a, b), f = coproduct_image(Gen::F1, a, b);
      const Mat k = coproduct_image(Gen::K1, a, b, 1.0), ki = coproduct_image(Gen::K1, a, b, -1.0);
      CHECK(maxabs(k - kron(a.gen(Gen::K1, 1.0), b.gen(Gen::K1, 1.0))) < 1e-15);
      CHECK(node_residual(e, f, k, ki, c.q) < 1e-12);
      const Mat e0 = coproduct_image(Gen::E0, a, b), f0 = coproduct_image(Gen::F0, a, b);
      const Mat k0 = coproduct_image(Gen::K0, a, b, 1.0), k0i = coproduct_image(Gen::K0, a, b, -1.0);
      CHECK(node_residual(e0, f0, k0, k0i, c.q) < 1e-12);
    }
  }
}

TEST_CASE("O is antidiagonal and inverts") {
  for (int m : {1, 2, 3}) {
    const EvalRep rep(m, {1, 1}, ctx07());
    const Mat o = operator_O(rep);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j)
        if (i + j != m) CHECK(o(i, j) == cplx{0.0, 0.0});
    CHECK(maxabs(o * operator_O_inverse(rep) - Mat::Identity(m + 1, m + 1)) < 1e-13);
  }
}

TEST_CASE("distinguished operators") {
  const EvalRep rep(1, {1, 1}, ctx07());
  const DistinguishedOps ops = distinguished_ops(rep, {0.3, 0.0});
  CHECK(ops.epsilon == doctest::Approx(2.0));
  CHECK(ops.delta == doctest::Approx(-1.0));
  CHECK(ops.omega == doctest::Approx(1.0));
  CHECK(maxabs(ops.A * operator_A(rep, {-0.3, 0.0}) - Mat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("self duality and double dual checks") {
  CheckContext c;
  c.ctx = ctx07();
  c.samples = 3;
  for (int m : {1, 2, 3}) {
    c.m = m;
    c.grading = {1, 1};
    CHECK(check_self_dual(c).passed);
    CHECK(check_double_dual(c).passed);
    c.grading = {1, 0};
    CHECK(check_double_dual(c).passed);
  }
}

TEST_CASE("grading validation") {
  CHECK_THROWS_AS(GradingChoice({0, 0}).validate(), Error);
  CHECK_THROWS_AS(GradingChoice({-1, 2}).validate(), Error);
}

}
