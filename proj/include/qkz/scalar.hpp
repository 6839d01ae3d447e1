#pragma once

// Complex scalars, q-numbers, q-Pochhammer products and the closed-form
// normalization scalars (rho0, kappa, d) for the sl2 spin-m and the
// sl(l+1) fundamental evaluation modules.
//
// All functions taking `z` expect z = zeta12^s (the spectral ratio raised to
// the grading total s), which is the only combination the scalars depend on.

#include <complex>

#include "qkz/error.hpp"

namespace qkz {

using cplx = std::complex<double>;

/// Deformation parameter and numeric policy shared by every computation.
struct QContext {
  cplx q{0.7, 0.0};
  double eps_residual = 1e-10;
  int trunc_terms = 400;
  int root_unity_guard = 64;

  /// Throws Error(RootOfUnity | Config) when q is unusable.
  void validate() const;

  cplx log_q() const { return std::log(q); }
  /// q^nu = exp(nu log q) with the principal logarithm.
  cplx pow(cplx nu) const { return std::exp(nu * std::log(q)); }
  cplx pow(double nu) const { return pow(cplx{nu, 0.0}); }
};

/// A truncated infinite product or series together with a bound on the
/// relative (products) or absolute (series) contribution of the dropped tail.
struct Truncated {
  cplx value;
  double tail = 0.0;
  /// Smallest |factor| seen in a product; zero means an exact zero factor.
  double min_factor = 1.0;
};

cplx q_number(cplx nu, const QContext& ctx);

/// prod_{k=0}^{T-1} (1 - a p^k), T = ctx.trunc_terms.
Truncated q_pochhammer(cplx a, cplx p, const QContext& ctx);

/// F_m(z) = sum_{n>=1} z^n / (n [m]_{q^n}).
Truncated f_series(int m, cplx z, const QContext& ctx);

// ---- sl2, spin m/2 evaluation module -------------------------------------

cplx rho0_sl2(int m, cplx z, const QContext& ctx);
/// rho0(q^{-2} z)^{-1} rho0(z)^{-1} as the finite product.
cplx rho0_ratio_sl2(int m, cplx z, const QContext& ctx);
cplx kappa_sl2(int m, cplx z, const QContext& ctx);
/// Rational form of kappa for even m = 2k.
cplx kappa_sl2_even_rational(int k, cplx z, const QContext& ctx);

/// Both candidate readings of the kappa difference equation evaluated at one
/// point: all four factors inverted, or only the shifted ones inverted.
struct DifferenceProbe {
  cplx all_inverted;
  cplx shifted_inverted;
};

DifferenceProbe difference_probe_sl2(int m, cplx z, const QContext& ctx);
/// |all_inverted - (-1)^m|.
double kappa_difference_check_sl2(int m, cplx z, const QContext& ctx);

// ---- sl(l+1), first fundamental evaluation module -------------------------

cplx rho0_sllpo(int l, cplx z, const QContext& ctx);
/// Same value through exp(F_{l+1}(q^{-l} z) - F_{l+1}(q^l z)); needs |q^{-l} z| < 1.
cplx rho0_sllpo_fseries(int l, cplx z, const QContext& ctx);
/// The closed finite product for the sl(l+1) ratio. It equals
/// rho0(q^{-2(l+1)} z) rho0(z)^{-1}, i.e. the inverse sits on the other factor.
cplx rho0_ratio_sllpo(int l, cplx z, const QContext& ctx);
cplx kappa_sllpo(int l, cplx z, const QContext& ctx);
DifferenceProbe difference_probe_sllpo(int l, cplx z, const QContext& ctx);
/// |shifted_inverted - 1|.
double kappa_difference_check_sllpo(int l, cplx z, const QContext& ctx);

}  // namespace qkz
