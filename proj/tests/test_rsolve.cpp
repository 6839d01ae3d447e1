#include <doctest.h>

#include "qkz/idsuite.hpp"
#include "qkz/rsolve.hpp"
#include "qkz/tensor.hpp"

using namespace qkz;

namespace {

QContext ctx07() {
  QContext c;
  c.q = 0.7;
  return c;
}

// Weight of basis vector i in the spin-m module (h eigenvalue), sign-flipped on V*.
int weight(int m, int i, SiteKind k) { return (k == SiteKind::V ? 1 : -1) * (m - 2 * i); }

}  // namespace

TEST_SUITE("rsolve") {

TEST_CASE("intertwiner commutes with hand-built coproducts") {
  auto rep = build_eval_rep(2, {1, 1}, ctx07());
  const cplx z1{1.3, 0.2}, z2{0.5, -0.4};
  for (auto [k1, k2] : kAllPairs) {
    const SiteModule a{k1, rep, z1}, b{k2, rep, z2};
    const RResult r = solve_intertwiner({a, b, Normalization::HW});
    CHECK(r.nullspace_gap > kGapThreshold);
    const Mat i3 = Mat::Identity(3, 3);
    for (Gen g : {Gen::E0, Gen::E1}) {
      const Gen k = g == Gen::E0 ? Gen::K0 : Gen::K1;
      // Delta(e) = e (x) 1 + K (x) e in both orders.
      const Mat d12 = kron(a.gen(g), i3) + kron(a.gen(k, 1.0), b.gen(g));
      const Mat d21 = kron(b.gen(g), i3) + kron(b.gen(k, 1.0), a.gen(g));
      CHECK((r.Rcheck * d12 - d21 * r.Rcheck).norm() < 1e-11 * r.Rcheck.norm() * d12.norm());
    }
    CHECK(r.intertwining_residual < 1e-11);
  }
}

TEST_CASE("R conserves total weight") {
  auto rep = build_eval_rep(2, {1, 1}, ctx07());
  for (auto [k1, k2] : kAllPairs) {
    const SiteModule a{k1, rep, {0.9, 0.3}}, b{k2, rep, {1.4, -0.1}};
    const Mat R = solve_intertwiner({a, b, Normalization::HW}).R;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const int wi = weight(2, i / 3, k1) + weight(2, i % 3, k2);
        const int wj = weight(2, j / 3, k1) + weight(2, j % 3, k2);
        if (wi != wj) CHECK(std::abs(R(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("highest weight normalization") {
  auto rep = build_eval_rep(1, {1, 1}, ctx07());
  RFamily f(rep, Normalization::HW);
  const Mat R = f.R(SiteKind::V, {1.2, 0.3}, SiteKind::V, {0.4, 0.8});
  CHECK(std::abs(R(0, 0) - 1.0) < 1e-13);
  CHECK(std::abs(R(3, 3) - 1.0) < 1e-12);  // six-vertex: a-weight on both ferromagnetic states
  const Mat Rd = f.R(SiteKind::Vdual, {1.2, 0.3}, SiteKind::Vdual, {0.4, 0.8});
  CHECK(std::abs(Rd(3, 3) - 1.0) < 1e-13);
}

TEST_CASE("rcheck is P R") {
  auto rep = build_eval_rep(2, {1, 0}, ctx07());
  RFamily f(rep, Normalization::Kappa);
  const RResult r = f.result(SiteKind::V, {0.7, 0.7}, SiteKind::Vdual, {1.1, 0.0});
  CHECK((r.Rcheck - swap_matrix(3, 3) * r.R).norm() < 1e-13 * r.R.norm());
}

TEST_CASE("unitarity at a sample point") {
  auto rep = build_eval_rep(1, {1, 1}, ctx07());
  for (Normalization nm : {Normalization::HW, Normalization::Kappa}) {
    RFamily f(rep, nm);
    const cplx z1{1.1, 0.5}, z2{0.6, -0.2};
    for (auto [k1, k2] : kAllPairs) {
      const Mat a = f.Rcheck(k1, z1, k2, z2), b = f.Rcheck(k2, z2, k1, z1);
      CHECK((b * a - Mat::Identity(4, 4)).norm() < 1e-10);
    }
  }
}

TEST_CASE("degenerate point is detected") {
  auto rep = build_eval_rep(1, {1, 1}, ctx07());
  const QContext c = ctx07();
  // (zeta1/zeta2)^s = q^2 is a reducibility point of V (x) V for spin 1/2.
  const cplx z2{0.8, 0.1};
  const cplx z1 = z2 * c.q;
  const SiteModule a{SiteKind::V, rep, z1}, b{SiteKind::V, rep, z2};
  CHECK_THROWS_AS(solve_intertwiner({a, b, Normalization::HW}), Error);
  const RResult d = solve_direction(a, b);
  CHECK(std::abs(d.Rcheck.norm() - 1.0) < 1e-12);
  CheckContext cc;
  cc.ctx = c;
  cc.m = 1;
  CHECK(check_degenerate_scan(cc).passed);
}

TEST_CASE("solver cache returns identical results") {
  auto rep = build_eval_rep(1, {1, 1}, ctx07());
  auto solver = std::make_shared<RSolver>(4);
  const RRequest req{{SiteKind::V, rep, {1.3, 0.0}}, {SiteKind::Vdual, rep, {0.2, 0.9}}, Normalization::Kappa};
  const RResult a = solver->get(req);
  const RResult b = solver->get(req);
  CHECK(solver->hits() == 1);
  CHECK((a.R.array() == b.R.array()).all());
  for (int i = 0; i < 6; ++i) solver->get({{SiteKind::V, rep, {1.0 + 0.1 * i, 0.0}}, req.site2, req.norm});
  CHECK(solver->size() <= 4);
  solver->clear();
  CHECK(solver->size() == 0);
}

TEST_CASE("yang baxter for mixed kinds") {
  CheckContext c;
  c.ctx = ctx07();
  c.samples = 2;
  c.m = 1;
  CHECK(check_ybe(c, {SiteKind::V, SiteKind::Vdual, SiteKind::V}).passed);
  c.norm = Normalization::Kappa;
  CHECK(check_ybe(c, {SiteKind::Vdual, SiteKind::Vdual, SiteKind::V}).passed);
}

}
