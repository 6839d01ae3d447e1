#include <doctest.h>

#include "qkz/engine.hpp"
#include "qkz/reduction.hpp"
#include "qkz/tensor.hpp"

using namespace qkz;

namespace {

QContext ctx07() {
  QContext c;
  c.q = 0.7;
  return c;
}

ChainSpec two_site_chain(int m) {
  auto rep = build_eval_rep(m, {1, 1}, ctx07());
  ChainSpec c{RFamily(rep, Normalization::Kappa), {SiteKind::V, SiteKind::Vdual}, {{1.1, 0.3}, {0.6, -0.5}},
              ctx07().pow(2.0), {}};
  c.delta_ops.push_back(build_delta({DeltaSource::GeneralV, {0.2, 0.0}}, *rep));
  c.delta_ops.push_back(build_delta({DeltaSource::GeneralVdual, {0.2, 0.0}}, *rep));
  return c;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("general delta is X A") {
  auto rep = build_eval_rep(2, {1, 1}, ctx07());
  const cplx alpha{0.3, 0.1};
  const Mat d = build_delta({DeltaSource::GeneralV, alpha}, *rep)(1.7);
  CHECK((d - operator_X(*rep) * operator_A(*rep, alpha)).norm() < 1e-13);
  const Mat dd = build_delta({DeltaSource::GeneralVdual, alpha}, *rep)(1.7);
  CHECK((dd - operator_X(*rep, SiteKind::Vdual) * operator_A(*rep, alpha, SiteKind::Vdual)).norm() < 1e-13);
}

TEST_CASE("singular custom delta is rejected") {
  auto rep = build_eval_rep(1, {1, 1}, ctx07());
  DeltaAssignment a;
  a.source = DeltaSource::Custom;
  a.custom = [](cplx) { return Mat(Mat::Zero(2, 2)); };
  CHECK_THROWS_AS(build_delta(a, *rep)(1.0), Error);
}

TEST_CASE("two site lambda against dense products") {
  for (int m : {1, 2}) {
    const ChainSpec c = two_site_chain(m);
    const int d = m + 1;
    const Mat I = Mat::Identity(d, d);
    const Mat P = swap_matrix(d, d);
    const auto& k = c.kinds;
    const auto& e = c.etas;
    const Mat want0 = c.family.Rcheck(k[1], e[1], k[0], c.p * e[0]) * P * kron(c.delta_ops[0](e[0]), I);
    const Mat want1 = P * kron(c.delta_ops[1](e[1]), I) * c.family.Rcheck(k[0], e[0], k[1], e[1]);
    CHECK(rel_diff(lambda_op(c, 0).data, want0) < 1e-13);
    CHECK(rel_diff(lambda_op(c, 1).data, want1) < 1e-13);
    CHECK(check_lambda_forms(c, 0).passed);
    CHECK(check_lambda_forms(c, 1).passed);
  }
}

TEST_CASE("stripped factors only in the displayed form") {
  const ChainSpec c = two_site_chain(1);
  LambdaOptions o;
  o.form = LambdaForm::Rewritten;
  o.drop_first_left = true;
  CHECK_THROWS_AS(lambda_op(c, 0, o), Error);
  LambdaOptions s;
  s.drop_first_left = true;
  const Mat want = swap_matrix(2, 2) * kron(c.delta_ops[0](c.etas[0]), Mat::Identity(2, 2));
  CHECK(rel_diff(lambda_op(c, 0, s).data, want) < 1e-14);
}

TEST_CASE("chain validation and shift") {
  ChainSpec c = two_site_chain(1);
  const ChainSpec sh = c.shifted(1);
  CHECK(sh.etas[0] == c.etas[0]);
  CHECK(std::abs(sh.etas[1] - c.p * c.etas[1]) < 1e-15);
  c.etas.pop_back();
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("ddr and compatibility on a two site chain") {
  const ChainSpec c = two_site_chain(2);
  CHECK(check_ddr(c, 0, 1).passed);
  CHECK(check_qkz_compatibility(c, 0, 1).passed);
}

TEST_CASE("canonical words reach the requested order") {
  CHECK(canonical_word({0, 1, 2}).empty());
  CHECK(canonical_word({1, 0}) == Word{0});
  ReductionCase rc;
  rc.mode = ReductionMode::SelfDual;
  rc.n = 2;
  rc.check.ctx = ctx07();
  Rng rng(1);
  const ChainSpec ch = generic_chain(rc, rng);
  Eigen::VectorXcd base(16);
  for (int i = 0; i < 16; ++i) base(i) = rng.normal_pair();
  const Transported none = transport_phi(ch, base, {});
  CHECK((none.phi - base).norm() == 0.0);
  CHECK(none.order == std::vector<int>{0, 1, 2, 3});
  const std::vector<int> order{2, 0, 3, 1};
  CHECK(transport_phi(ch, base, canonical_word(order)).order == order);
}

TEST_CASE("exchange and braid consistency") {
  ReductionCase rc;
  rc.mode = ReductionMode::General;
  rc.n = 1;
  rc.check.ctx = ctx07();
  Rng rng(2);
  const ChainSpec ch = generic_chain(rc, rng);
  CHECK(check_rd_exchange(ch, 3, 2).passed);
  CHECK(check_braid_welldefined(ch, 3, 2).passed);
}

}
