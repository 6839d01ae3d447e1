#pragma once

// Evaluation representations phi^m_zeta of U_q(L(sl2)), their antipode duals
// and the distinguished operators X, O, X~ and A.

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "qkz/lie.hpp"
#include "qkz/scalar.hpp"

namespace qkz {

using Mat = Eigen::MatrixXcd;

/// Generators. K0/K1 stand for q^{nu h_0}, q^{nu h_1}.
enum class Gen { E0, E1, F0, F1, K0, K1 };
inline constexpr Gen kAllGens[] = {Gen::E0, Gen::E1, Gen::F0, Gen::F1, Gen::K0, Gen::K1};
const char* gen_name(Gen g);

enum class SiteKind { V, Vdual };
const char* kind_name(SiteKind k);

struct GradingChoice {
  int s0 = 1;
  int s1 = 1;
  int s() const { return s0 + s1; }
  std::vector<int> vec() const { return {s0, s1}; }
  void validate() const;
};

class EvalRep {
 public:
  EvalRep(int m, GradingChoice grading, QContext ctx);

  int m() const { return m_; }
  int dim() const { return m_ + 1; }
  const GradingChoice& grading() const { return grading_; }
  const QContext& ctx() const { return ctx_; }

  /// Image of a generator at spectral parameter zeta after `dual_order`
  /// applications of phi -> phi* (0: V, 1: V*, 2: V**). nu is used by K0/K1.
  Mat gen(Gen a, cplx zeta, int dual_order = 0, cplx nu = 1.0) const;

  /// Closed-form phi^{m*} families, assembled entry by entry.
  Mat displayed_dual(Gen a, cplx zeta, cplx nu = 1.0) const;

  Mat qh1(cplx nu) const;
  Mat qh0(cplx nu) const { return qh1(-nu); }

 private:
  Mat base(Gen a, cplx zeta, cplx nu) const;

  int m_;
  GradingChoice grading_;
  QContext ctx_;
};

using RepPtr = std::shared_ptr<const EvalRep>;
RepPtr build_eval_rep(int m, GradingChoice grading, const QContext& ctx);

struct SiteModule {
  SiteKind kind = SiteKind::V;
  RepPtr rep;
  cplx zeta{1.0, 0.0};

  int dim() const { return rep->dim(); }
  int hw_index() const { return kind == SiteKind::V ? 0 : rep->m(); }
  int dual_order() const { return kind == SiteKind::V ? 0 : 1; }
  Mat gen(Gen a, cplx nu = 1.0) const { return rep->gen(a, zeta, dual_order(), nu); }
  SiteModule at(cplx z) const { return {kind, rep, z}; }
};

/// (phi1 (x) phi2)(Delta(a)).
Mat coproduct_image(Gen a, const SiteModule& s1, const SiteModule& s2, cplx nu = 1.0);

/// Largest entry of m(S (x) id)Delta(a) - eps(a) and m(id (x) S)Delta(a) - eps(a)
/// over e_i, f_i, with phi(S(a)) read off the dual builder.
double hopf_residual(const EvalRep& rep, cplx zeta);

Mat operator_X(const EvalRep& rep, SiteKind kind = SiteKind::V);
Mat operator_O(const EvalRep& rep);
Mat operator_O_inverse(const EvalRep& rep);
Mat operator_A(const EvalRep& rep, cplx alpha, SiteKind kind = SiteKind::V);

struct DistinguishedOps {
  Mat X, Xdual, O, Xtilde, A, Adual;
  cplx alpha{0.0, 0.0};
  double epsilon = 0.0;
  double delta = 0.0;
  double omega = 0.0;
};

DistinguishedOps distinguished_ops(const EvalRep& rep, cplx alpha);

}  // namespace qkz
