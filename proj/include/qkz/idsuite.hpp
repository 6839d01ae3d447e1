#pragma once

// Identity checks on scalars, representations and R-operators. Every check
// returns a VerificationReport and is deterministic given the context seed.

#include <array>
#include <functional>
#include <optional>

#include "qkz/report.hpp"
#include "qkz/tensor.hpp"

namespace qkz {

struct CheckContext {
  QContext ctx;
  GradingChoice grading;
  int m = 1;
  cplx alpha{0.0, 0.0};
  std::uint64_t seed = 42;
  int samples = 10;
  Normalization norm = Normalization::HW;
  std::optional<double> tol_override;
  bool timing = false;
  std::shared_ptr<RSolver> solver = std::make_shared<RSolver>();

  double tol(double def) const { return tol_override.value_or(def); }
  RepPtr rep() const { return build_eval_rep(m, grading, ctx); }
  RFamily family() const { return RFamily(rep(), norm, solver); }
  RFamily family(Normalization n) const { return RFamily(rep(), n, solver); }
  Rng rng(std::string_view name) const { return Rng(derive_seed(seed, name)); }
  /// Params shared by all reports: m, s0, s1, q, seed.
  Json base_params() const;
};

/// Times `body`, stores wall_ms when enabled and finalizes pass/fail.
VerificationReport run_timed(const CheckContext& c, const std::function<void(VerificationReport&)>& body);

/// Random spectral pair avoiding degenerate points and kappa poles for all
/// four kind pairs. With `branch_safe`, |arg zeta12^s| < pi/2.
std::pair<cplx, cplx> sample_pair(const CheckContext& c, Rng& rng, bool branch_safe = false);

using KindPair = std::array<SiteKind, 2>;
using KindTriple = std::array<SiteKind, 3>;
inline constexpr KindPair kAllPairs[] = {{SiteKind::V, SiteKind::V},
                                         {SiteKind::V, SiteKind::Vdual},
                                         {SiteKind::Vdual, SiteKind::V},
                                         {SiteKind::Vdual, SiteKind::Vdual}};
std::string kinds_label(const std::vector<SiteKind>& kinds);

// ---- scalar layer ---------------------------------------------------------
VerificationReport check_kappa_unit(const CheckContext& c);
VerificationReport check_kappa_inversion(const CheckContext& c);
VerificationReport check_difference_sl2(const CheckContext& c);
VerificationReport check_difference_sllpo(const CheckContext& c, int l);
VerificationReport check_kappa_sllpo(const CheckContext& c, int l);
VerificationReport check_rho0_ratio_sl2(const CheckContext& c);
VerificationReport check_rho0_ratio_sllpo(const CheckContext& c, int l);
VerificationReport check_kappa_even_rational(const CheckContext& c);
VerificationReport check_fseries(const CheckContext& c, int l);

// ---- representations -------------------------------------------------------
VerificationReport check_rep_displayed_dual(const CheckContext& c);
VerificationReport check_rep_relations(const CheckContext& c, SiteKind kind);
VerificationReport check_hopf(const CheckContext& c);
VerificationReport check_self_dual(const CheckContext& c);
VerificationReport check_double_dual(const CheckContext& c);

// ---- R-operators -----------------------------------------------------------
VerificationReport check_solver(const CheckContext& c, KindPair kinds);
VerificationReport check_degenerate_scan(const CheckContext& c);
VerificationReport check_unitarity(const CheckContext& c, KindPair kinds);
VerificationReport check_initial_condition(const CheckContext& c, KindPair kinds);
VerificationReport check_ratio_dependence(const CheckContext& c, KindPair kinds);
VerificationReport check_kappa_entry(const CheckContext& c);
VerificationReport check_ybe(const CheckContext& c, KindTriple kinds);
/// Crossing proportionalities, constancy of the designated scalars, the
/// double-shift product and the hw closed form. One report per aspect.
std::vector<VerificationReport> check_crossing(const CheckContext& c);
VerificationReport check_invariance_X(const CheckContext& c, KindPair kinds);
VerificationReport check_invariance_A(const CheckContext& c, KindPair kinds);
VerificationReport check_invariance_Xtilde(const CheckContext& c);

/// ||A B - B A|| / (||A|| ||B||).
double commutator_residual(const Mat& a, const Mat& b);

}  // namespace qkz
