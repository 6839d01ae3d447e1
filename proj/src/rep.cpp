#include "qkz/rep.hpp"

#include <cmath>

#include "qkz/tensor.hpp"

namespace qkz {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::E0: return "e0";
    case Gen::E1: return "e1";
    case Gen::F0: return "f0";
    case Gen::F1: return "f1";
    case Gen::K0: return "qh0";
    case Gen::K1: return "qh1";
  }
  return "?";
}

const char* kind_name(SiteKind k) { return k == SiteKind::V ? "V" : "V*"; }

void GradingChoice::validate() const {
  if (s0 < 0 || s1 < 0 || s() < 1) throw Error(ErrorKind::Config, "grading needs s0, s1 >= 0 and s >= 1");
}

EvalRep::EvalRep(int m, GradingChoice grading, QContext ctx) : m_(m), grading_(grading), ctx_(ctx) {
  if (m < 0) throw Error(ErrorKind::Config, "m must be >= 0");
  grading_.validate();
}

Mat EvalRep::qh1(cplx nu) const {
  Mat r = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) r(i, i) = ctx_.pow(nu * static_cast<double>(m_ - 2 * i));
  return r;
}

Mat EvalRep::base(Gen a, cplx zeta, cplx nu) const {
  const int n = dim();
  Mat r = Mat::Zero(n, n);
  auto lower = [&](cplx c) {
    for (int i = 0; i < m_; ++i) r(i + 1, i) = c;
  };
  auto upper = [&](cplx c) {
    for (int i = 0; i < m_; ++i)
      r(i, i + 1) = c * q_number(i + 1.0, ctx_) * q_number(static_cast<double>(m_ - i), ctx_);
  };
  switch (a) {
    case Gen::E0: lower(std::pow(zeta, grading_.s0)); break;
    case Gen::E1: upper(std::pow(zeta, grading_.s1)); break;
    case Gen::F0: upper(std::pow(zeta, -grading_.s0)); break;
    case Gen::F1: lower(std::pow(zeta, -grading_.s1)); break;
    case Gen::K0: return qh0(nu);
    case Gen::K1: return qh1(nu);
  }
  return r;
}

// phi*(a) = phi(S(a))^t with S(q^x) = q^{-x}, S(e_i) = -q^{-h_i} e_i,
// S(f_i) = -f_i q^{h_i}.
Mat EvalRep::gen(Gen a, cplx zeta, int dual_order, cplx nu) const {
  if (dual_order < 0) throw Error(ErrorKind::Config, "negative dual order");
  if (dual_order == 0) return base(a, zeta, nu);
  const int k = dual_order - 1;
  switch (a) {
    case Gen::E0: return -(gen(Gen::K0, zeta, k, -1.0) * gen(Gen::E0, zeta, k)).transpose();
    case Gen::E1: return -(gen(Gen::K1, zeta, k, -1.0) * gen(Gen::E1, zeta, k)).transpose();
    case Gen::F0: return -(gen(Gen::F0, zeta, k) * gen(Gen::K0, zeta, k, 1.0)).transpose();
    case Gen::F1: return -(gen(Gen::F1, zeta, k) * gen(Gen::K1, zeta, k, 1.0)).transpose();
    case Gen::K0: return gen(Gen::K0, zeta, k, -nu).transpose();
    case Gen::K1: return gen(Gen::K1, zeta, k, -nu).transpose();
  }
  return {};
}

Mat EvalRep::displayed_dual(Gen a, cplx zeta, cplx nu) const {
  const int n = dim();
  const double m = m_;
  Mat r = Mat::Zero(n, n);
  // 1-based i; entry E_{a,b} lands at (a-1, b-1).
  auto qq = [&](double x) { return ctx_.pow(x); };
  auto br = [&](int i) { return q_number(static_cast<double>(i), ctx_) * q_number(m - i + 1, ctx_); };
  for (int i = 1; i <= m_ + 1; ++i) {
    switch (a) {
      case Gen::K0: r(i - 1, i - 1) = ctx_.pow(nu * (m - 2 * i + 2)); break;
      case Gen::K1: r(i - 1, i - 1) = ctx_.pow(-nu * (m - 2 * i + 2)); break;
      default: break;
    }
  }
  for (int i = 1; i <= m_; ++i) {
    switch (a) {
      case Gen::E0: r(i - 1, i) = -std::pow(zeta, grading_.s0) * qq(m - 2 * i); break;
      case Gen::E1: r(i, i - 1) = -std::pow(zeta, grading_.s1) * qq(-(m - 2 * i + 2)) * br(i); break;
      case Gen::F0: r(i, i - 1) = -std::pow(zeta, -grading_.s0) * qq(-(m - 2 * i)) * br(i); break;
      case Gen::F1: r(i - 1, i) = -std::pow(zeta, -grading_.s1) * qq(m - 2 * i + 2); break;
      default: break;
    }
  }
  return r;
}

RepPtr build_eval_rep(int m, GradingChoice grading, const QContext& ctx) {
  return std::make_shared<const EvalRep>(m, grading, ctx);
}

namespace {

Gen cartan_of(Gen a) { return (a == Gen::E0 || a == Gen::F0) ? Gen::K0 : Gen::K1; }

}  // namespace

Mat coproduct_image(Gen a, const SiteModule& s1, const SiteModule& s2, cplx nu) {
  if (s1.rep->ctx().q != s2.rep->ctx().q) throw Error(ErrorKind::Config, "sites use different q");
  const Mat i1 = Mat::Identity(s1.dim(), s1.dim());
  const Mat i2 = Mat::Identity(s2.dim(), s2.dim());
  switch (a) {
    case Gen::E0:
    case Gen::E1:
      return kron(s1.gen(a), i2) + kron(s1.gen(cartan_of(a), 1.0), s2.gen(a));
    case Gen::F0:
    case Gen::F1:
      return kron(s1.gen(a), s2.gen(cartan_of(a), -1.0)) + kron(i1, s2.gen(a));
    case Gen::K0:
    case Gen::K1:
      return kron(s1.gen(a, nu), s2.gen(a, nu));
  }
  return {};
}

double hopf_residual(const EvalRep& rep, cplx zeta) {
  double worst = 0.0;
  auto S = [&](Gen a, cplx nu = 1.0) -> Mat { return rep.gen(a, zeta, 1, nu).transpose(); };
  auto phi = [&](Gen a, cplx nu = 1.0) -> Mat { return rep.gen(a, zeta, 0, nu); };
  const Mat one = Mat::Identity(rep.dim(), rep.dim());
  for (Gen e : {Gen::E0, Gen::E1}) {
    Gen k = cartan_of(e);
    // Delta(e) = e (x) 1 + K (x) e
    worst = std::max(worst, (S(e) * one + S(k) * phi(e)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (phi(e) * one + phi(k) * S(e)).cwiseAbs().maxCoeff());
  }
  for (Gen f : {Gen::F0, Gen::F1}) {
    Gen k = cartan_of(f);
    // Delta(f) = f (x) K^{-1} + 1 (x) f
    worst = std::max(worst, (S(f) * phi(k, -1.0) + one * phi(f)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (phi(f) * S(k, -1.0) + one * S(f)).cwiseAbs().maxCoeff());
  }
  return worst;
}

Mat operator_X(const EvalRep& rep, SiteKind kind) {
  double c = LieData::sl2().x_coefficients(rep.grading().vec())[0];
  return kind == SiteKind::V ? rep.qh1(c) : rep.qh1(-c);
}

Mat operator_O(const EvalRep& rep) {
  const int m = rep.m();
  const double s0 = rep.grading().s0, s = rep.grading().s();
  Mat o = Mat::Zero(rep.dim(), rep.dim());
  for (int i = 1; i <= m + 1; ++i) {
    double sign = ((m - i + 1) % 2 == 0) ? 1.0 : -1.0;
    o(m - i + 1, i - 1) = sign * rep.ctx().pow((m - i + 1) * (2.0 - 2.0 * s0 / s - i));
  }
  return o;
}

Mat operator_O_inverse(const EvalRep& rep) {
  // O is antidiagonal, so its inverse is the transposed reciprocal.
  Mat o = operator_O(rep);
  Mat r = Mat::Zero(rep.dim(), rep.dim());
  for (int i = 0; i < rep.dim(); ++i) r(i, rep.m() - i) = 1.0 / o(rep.m() - i, i);
  return r;
}

Mat operator_A(const EvalRep& rep, cplx alpha, SiteKind kind) {
  return kind == SiteKind::V ? rep.qh1(alpha) : rep.qh1(-alpha);
}

DistinguishedOps distinguished_ops(const EvalRep& rep, cplx alpha) {
  DistinguishedOps d;
  d.X = operator_X(rep, SiteKind::V);
  d.Xdual = operator_X(rep, SiteKind::Vdual);
  d.O = operator_O(rep);
  d.Xtilde = d.O.transpose() * d.X;
  d.A = operator_A(rep, alpha, SiteKind::V);
  d.Adual = operator_A(rep, alpha, SiteKind::Vdual);
  d.alpha = alpha;
  const int s = rep.grading().s();
  d.epsilon = LieData::sl2().epsilon(s);
  d.delta = -2.0 / s;
  d.omega = d.epsilon + d.delta;
  return d;
}

}  // namespace qkz
