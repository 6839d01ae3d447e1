#include <doctest.h>

#include "qkz/reduction.hpp"

using namespace qkz;

namespace {

ReductionCase make_case(ReductionMode mode, int n, int m) {
  ReductionCase rc;
  rc.mode = mode;
  rc.n = n;
  rc.check.m = m;
  rc.check.ctx.q = 0.7;
  rc.check.samples = 2;
  rc.check.alpha = {0.2, 0.1};
  return rc;
}

// Psi(row, (j_1..j_n)) = sum_k Phi(row, (k_n..k_1)) prod_r C(k_r, j_r), digit by digit.
Mat naive_extract(const ReductionCase& rc, const Eigen::VectorXcd& phi) {
  const Mat C = rc.contraction();
  const int d = static_cast<int>(C.rows()), n = rc.n;
  long half = 1;
  for (int a = 0; a < n; ++a) half *= d;
  Mat psi = Mat::Zero(half, half);
  std::vector<int> k(n + 1), j(n + 1);  // 1-based k_r, j_r
  for (long row = 0; row < half; ++row)
    for (long kf = 0; kf < half; ++kf) {
      // second-half slots hold k_n, ..., k_1 from most to least significant
      long t = kf;
      for (int r = 1; r <= n; ++r, t /= d) k[r] = static_cast<int>(t % d);
      for (long jf = 0; jf < half; ++jf) {
        long u = jf;
        for (int r = n; r >= 1; --r, u /= d) j[r] = static_cast<int>(u % d);
        cplx w{1.0, 0.0};
        for (int r = 1; r <= n; ++r) w *= C(k[r], j[r]);
        psi(row, jf) += phi(row * half + kf) * w;
      }
    }
  return psi;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("chain layout") {
  const ReductionCase g = make_case(ReductionMode::General, 2, 1);
  CHECK(g.chain_kinds() == std::vector<SiteKind>{SiteKind::V, SiteKind::V, SiteKind::Vdual, SiteKind::Vdual});
  const ReductionCase s = make_case(ReductionMode::SelfDual, 2, 1);
  CHECK(s.chain_kinds() == std::vector<SiteKind>(4, SiteKind::V));
  const std::vector<cplx> z{{1.1, 0.2}, {0.7, -0.3}};
  const auto etas = s.chain_args(z);
  REQUIRE(etas.size() == 4);
  const cplx w = s.check.ctx.pow(s.shift_exponent());
  CHECK(etas[0] == z[0]);
  CHECK(etas[1] == z[1]);
  CHECK(std::abs(etas[2] - w * z[1]) < 1e-15);
  CHECK(std::abs(etas[3] - w * z[0]) < 1e-15);
}

TEST_CASE("psi extraction matches the digit loop") {
  for (auto mode : {ReductionMode::SelfDual, ReductionMode::General})
    for (int n : {1, 2, 3}) {
      const ReductionCase rc = make_case(mode, n, n == 3 ? 1 : 2);
      const long D = static_cast<long>(std::pow(rc.check.m + 1, 2 * n));
      Rng rng(17 + n);
      Eigen::VectorXcd phi(D);
      for (long i = 0; i < D; ++i) phi(i) = rng.normal_pair();
      const Mat a = psi_extract(rc, phi), b = naive_extract(rc, phi);
      CHECK(rel_diff(a, b) < 1e-13);
      CHECK((psi_embed(rc, a) - phi).norm() < 1e-11 * phi.norm());
    }
}

TEST_CASE("single site reduction is a plain contraction") {
  const ReductionCase rc = make_case(ReductionMode::General, 1, 1);
  Eigen::VectorXcd phi(4);
  phi << 1.0, 2.0, cplx{0.0, 1.0}, -1.0;
  Mat F(2, 2);
  F << 1.0, 2.0, cplx{0.0, 1.0}, -1.0;
  CHECK(rel_diff(psi_extract(rc, phi), F * rc.contraction()) < 1e-15);
}

TEST_CASE("theorem checks at n = 1") {
  for (int m : {1, 2}) {
    for (const auto& r : theorem_check_selfdual(make_case(ReductionMode::SelfDual, 1, m))) CHECK(r.passed);
    for (const auto& r : theorem_check_general(make_case(ReductionMode::General, 1, m))) CHECK(r.passed);
  }
}

TEST_CASE("mode mismatches are configuration errors") {
  CHECK_THROWS_AS(theorem_check_general(make_case(ReductionMode::SelfDual, 1, 1)), Error);
  CHECK_THROWS_AS(theorem_check_selfdual(make_case(ReductionMode::General, 1, 1)), Error);
}

TEST_CASE("exchange relation and scaling") {
  for (auto mode : {ReductionMode::SelfDual, ReductionMode::General}) {
    const ReductionCase rc = make_case(mode, 2, 1);
    CHECK(check_rpr(rc, 0).passed);
    CHECK(check_scaling_covariance(rc).passed);
  }
}

}
