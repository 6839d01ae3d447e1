#include "qkz/scalar.hpp"

#include <cmath>
#include <limits>

namespace qkz {

std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::Config: return "config";
    case ErrorKind::DegenerateQ: return "degenerate-q";
    case ErrorKind::RootOfUnity: return "root-of-unity";
    case ErrorKind::DivergentBase: return "divergent-base";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::TruncationInsufficient: return "truncation-insufficient";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::ZeroOperand: return "zero-operand";
    case ErrorKind::DegeneratePoint: return "degenerate-point";
    case ErrorKind::HwComponentZero: return "hw-component-zero";
    case ErrorKind::SingularOperator: return "singular-operator";
    case ErrorKind::UnknownCheck: return "unknown-check";
  }
  return "unknown";
}

namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();
// A product factor this small is treated as an exact zero.
constexpr double kZeroFactor = 1e-13;

// Demand that a truncated value is certified to well below the check tolerance.
Truncated certified(Truncated t, const QContext& ctx) {
  if (!(t.tail <= 1e-2 * ctx.eps_residual))
    throw Error(ErrorKind::TruncationInsufficient,
                "truncation tail " + std::to_string(t.tail) + " exceeds budget");
  return t;
}

cplx poch(cplx a, cplx p, const QContext& ctx) {
  return certified(q_pochhammer(a, p, ctx), ctx).value;
}

// Denominator Pochhammer: must be certified and away from zero.
cplx poch_den(cplx a, cplx p, const QContext& ctx) {
  const Truncated t = certified(q_pochhammer(a, p, ctx), ctx);
  if (t.min_factor < kZeroFactor)
    throw Error(ErrorKind::Pole, "vanishing Pochhammer factor in a denominator");
  return t.value;
}

void require_nonzero(cplx z) {
  if (z == cplx{0.0, 0.0}) throw Error(ErrorKind::Pole, "z = 0");
}

}  // namespace

void QContext::validate() const {
  if (!(trunc_terms > 0) || !(root_unity_guard > 0) || !(eps_residual > 0.0))
    throw Error(ErrorKind::Config, "trunc_terms, root_unity_guard and eps_residual must be positive");
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
    throw Error(ErrorKind::Config, "q is not finite");
  cplx qk{1.0, 0.0};
  for (int k = 1; k <= root_unity_guard; ++k) {
    qk *= q;
    if (std::abs(qk - 1.0) <= 10.0 * kMachEps)
      throw Error(ErrorKind::RootOfUnity, "q^" + std::to_string(k) + " = 1 to machine precision");
  }
  double a = std::abs(q);
  if (a == 0.0 || a >= 1.0) throw Error(ErrorKind::Config, "need 0 < |q| < 1");
}

cplx q_number(cplx nu, const QContext& ctx) {
  cplx den = ctx.q - 1.0 / ctx.q;
  if (std::abs(den) < std::numeric_limits<double>::min())
    throw Error(ErrorKind::DegenerateQ, "q - 1/q underflows");
  return (ctx.pow(nu) - ctx.pow(-nu)) / den;
}

Truncated q_pochhammer(cplx a, cplx p, const QContext& ctx) {
  double ap = std::abs(p);
  if (ap >= 1.0) throw Error(ErrorKind::DivergentBase, "|p| >= 1 in q-Pochhammer");
  Truncated r{cplx{1.0, 0.0}, 0.0, std::numeric_limits<double>::infinity()};
  cplx term = a;
  for (int k = 0; k < ctx.trunc_terms; ++k) {
    cplx f = 1.0 - term;
    r.min_factor = std::min(r.min_factor, std::abs(f));
    r.value *= f;
    term *= p;
  }
  // |log prod_{k>=T}(1 - a p^k)| <= t / ((1-|p|)(1-t)),  t = |a p^T|.
  double t = std::abs(term);
  if (t >= 0.5) {
    r.tail = std::numeric_limits<double>::infinity();
  } else {
    double s = t / ((1.0 - ap) * (1.0 - t));
    r.tail = std::expm1(s);
  }
  return r;
}

Truncated f_series(int m, cplx z, const QContext& ctx) {
  if (m < 1) throw Error(ErrorKind::Config, "f_series needs m >= 1");
  double az = std::abs(z);
  if (az >= 1.0) throw Error(ErrorKind::Divergence, "|z| >= 1 in F_m series");
  Truncated r{cplx{0.0, 0.0}, 0.0, 1.0};
  if (az == 0.0) return r;
  cplx zn{1.0, 0.0};
  double last = 0.0;
  for (int n = 1; n <= ctx.trunc_terms; ++n) {
    zn *= z;
    cplx qn = ctx.pow(static_cast<double>(n));
    cplx mn = (std::pow(qn, m) - std::pow(qn, -m)) / (qn - 1.0 / qn);
    cplx term = zn / (static_cast<double>(n) * mn);
    r.value += term;
    last = std::abs(term);
  }
  // |[m]_{q^n}| is nondecreasing in n for |q| < 1, so the tail is geometric.
  r.tail = last * az / (1.0 - az);
  return r;
}

// ---- sl2 ------------------------------------------------------------------

cplx rho0_sl2(int m, cplx z, const QContext& ctx) {
  cplx p = ctx.pow(4.0);
  cplx num = poch(ctx.pow(2.0) * z, p, ctx);
  cplx den = poch_den(ctx.pow(2.0 * m + 2.0) * z, p, ctx) *
             poch_den(ctx.pow(-2.0 * m + 2.0) * z, p, ctx);
  return ctx.pow(-0.5 * m * m) * num * num / den;
}

cplx rho0_ratio_sl2(int m, cplx z, const QContext& ctx) {
  cplx r = ctx.pow(static_cast<double>(m * m));
  for (int i = 0; i < m; ++i) {
    cplx den = 1.0 - ctx.pow(2.0 * m - 2.0 * i - 2.0) * z;
    if (std::abs(den) < kZeroFactor) throw Error(ErrorKind::Pole, "rho0 ratio pole");
    r *= (1.0 - ctx.pow(-2.0 * m + 2.0 * i) * z) / den;
  }
  return r;
}

cplx kappa_sl2(int m, cplx z, const QContext& ctx) {
  require_nonzero(z);
  cplx p = ctx.pow(4.0);
  cplx a = ctx.pow(2.0 * m + 2.0);
  cplx b = ctx.pow(2.0);
  cplx num = poch(a * z, p, ctx) * poch(b / z, p, ctx);
  cplx den = poch_den(a / z, p, ctx) * poch_den(b * z, p, ctx);
  if (std::abs(num) < kZeroFactor * std::abs(den)) throw Error(ErrorKind::Pole, "kappa vanishes");
  return std::pow(z, 0.5 * m) * num / den;
}

cplx kappa_sl2_even_rational(int k, cplx z, const QContext& ctx) {
  require_nonzero(z);
  cplx r = std::pow(z, k);
  for (int i = 1; i <= k; ++i) {
    cplx c = ctx.pow(4.0 * i - 2.0);
    cplx den = 1.0 - c * z;
    if (std::abs(den) < kZeroFactor) throw Error(ErrorKind::Pole, "rational kappa pole");
    r *= (1.0 - c / z) / den;
  }
  return r;
}

// rho_kappa(z) = rho0(z) kappa(z); the shift acts as z -> q^{-2} z.
DifferenceProbe difference_probe_sl2(int m, cplx z, const QContext& ctx) {
  cplx zs = ctx.pow(-2.0) * z;
  cplx r0 = rho0_sl2(m, z, ctx), r1 = rho0_sl2(m, zs, ctx);
  cplx k0 = kappa_sl2(m, z, ctx), k1 = kappa_sl2(m, zs, ctx);
  return {1.0 / (r1 * r0 * k1 * k0), 1.0 / (r1 * k1) * (r0 * k0)};
}

double kappa_difference_check_sl2(int m, cplx z, const QContext& ctx) {
  double d = (m % 2 == 0) ? 1.0 : -1.0;
  return std::abs(difference_probe_sl2(m, z, ctx).all_inverted - d);
}

// ---- sl(l+1) --------------------------------------------------------------

cplx rho0_sllpo(int l, cplx z, const QContext& ctx) {
  cplx p = ctx.pow(2.0 * (l + 1));
  cplx num = poch(ctx.pow(2.0) * z, p, ctx) * poch(ctx.pow(2.0 * l) * z, p, ctx);
  cplx den = poch_den(z, p, ctx) * poch_den(p * z, p, ctx);
  return ctx.pow(-static_cast<double>(l) / (l + 1)) * num / den;
}

cplx rho0_sllpo_fseries(int l, cplx z, const QContext& ctx) {
  const Truncated a = certified(f_series(l + 1, ctx.pow(-static_cast<double>(l)) * z, ctx), ctx);
  const Truncated b = certified(f_series(l + 1, ctx.pow(static_cast<double>(l)) * z, ctx), ctx);
  return ctx.pow(-static_cast<double>(l) / (l + 1)) * std::exp(a.value - b.value);
}

cplx rho0_ratio_sllpo(int l, cplx z, const QContext& ctx) {
  cplx den = (1.0 - z) * (1.0 - ctx.pow(-2.0 * (l + 1)) * z);
  if (std::abs(den) < kZeroFactor) throw Error(ErrorKind::Pole, "rho0 ratio pole");
  return (1.0 - ctx.pow(-2.0) * z) * (1.0 - ctx.pow(-2.0 * l) * z) / den;
}

cplx kappa_sllpo(int l, cplx z, const QContext& ctx) {
  require_nonzero(z);
  cplx p = ctx.pow(2.0 * (l + 1));
  cplx b = ctx.pow(2.0);
  cplx num = poch(b / z, p, ctx) * poch(p * z, p, ctx);
  cplx den = poch_den(b * z, p, ctx) * poch_den(p / z, p, ctx);
  if (std::abs(num) < kZeroFactor * std::abs(den)) throw Error(ErrorKind::Pole, "kappa vanishes");
  return std::pow(z, static_cast<double>(l) / (l + 1)) * num / den;
}

// The shift acts as z -> p^{-1} z with p = q^{2(l+1)}.
DifferenceProbe difference_probe_sllpo(int l, cplx z, const QContext& ctx) {
  cplx zs = ctx.pow(-2.0 * (l + 1)) * z;
  cplx r0 = rho0_sllpo(l, z, ctx), r1 = rho0_sllpo(l, zs, ctx);
  cplx k0 = kappa_sllpo(l, z, ctx), k1 = kappa_sllpo(l, zs, ctx);
  return {1.0 / (r1 * r0 * k1 * k0), 1.0 / (r1 * k1) * (r0 * k0)};
}

double kappa_difference_check_sllpo(int l, cplx z, const QContext& ctx) {
  return std::abs(difference_probe_sllpo(l, z, ctx).shifted_inverted - 1.0);
}

}  // namespace qkz
