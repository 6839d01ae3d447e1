#include "qkz/reduction.hpp"

#include <numbers>

#include "qkz/kernels.hpp"

namespace qkz {

const char* mode_name(ReductionMode m) { return m == ReductionMode::SelfDual ? "selfdual" : "general"; }

double ReductionCase::shift_exponent() const {
  const int s = check.grading.s();
  return mode == ReductionMode::SelfDual ? 2.0 / s : 4.0 / s;
}

std::vector<cplx> ReductionCase::chain_args(const std::vector<cplx>& z) const {
  if (static_cast<int>(z.size()) != n) throw Error(ErrorKind::ShapeMismatch, "need n spectral parameters");
  const cplx w = check.ctx.pow(shift_exponent());
  std::vector<cplx> eta(z);
  for (int k = n - 1; k >= 0; --k) eta.push_back(w * z[k]);
  return eta;
}

std::vector<SiteKind> ReductionCase::chain_kinds() const {
  std::vector<SiteKind> k(2 * n, SiteKind::V);
  if (mode == ReductionMode::General)
    for (int a = n; a < 2 * n; ++a) k[a] = SiteKind::Vdual;
  return k;
}

DeltaFn ReductionCase::delta(SiteKind kind) const {
  DeltaAssignment a;
  a.alpha = check.alpha;
  if (mode == ReductionMode::SelfDual) {
    a.source = DeltaSource::SelfDual;
    a.n = n;
    a.d = (check.m % 2 == 0) ? 1.0 : -1.0;
  } else {
    a.source = kind == SiteKind::V ? DeltaSource::GeneralV : DeltaSource::GeneralVdual;
  }
  return build_delta(a, *check.rep());
}

ChainSpec ReductionCase::chain(const std::vector<cplx>& zetas) const { return chain_from_etas(chain_args(zetas)); }

ChainSpec ReductionCase::chain_from_etas(const std::vector<cplx>& etas) const {
  if (static_cast<int>(etas.size()) != 2 * n) throw Error(ErrorKind::ShapeMismatch, "need 2n spectral parameters");
  ChainSpec c{check.family(), chain_kinds(), etas, 1.0, {}};
  const double w = shift_exponent();
  c.p = check.ctx.pow(mode == ReductionMode::SelfDual ? 2.0 * w : w);
  const DeltaFn dv = delta(SiteKind::V);
  const DeltaFn dd = mode == ReductionMode::General ? delta(SiteKind::Vdual) : dv;
  for (SiteKind k : c.kinds) c.delta_ops.push_back(k == SiteKind::V ? dv : dd);
  return c;
}

Mat ReductionCase::contraction() const {
  const DistinguishedOps ops = distinguished_ops(*check.rep(), check.alpha);
  return mode == ReductionMode::SelfDual ? ops.Xtilde : ops.X;
}

Json ReductionCase::params() const {
  Json p = check.base_params();
  p["mode"] = mode_name(mode);
  p["n"] = n;
  p["norm"] = norm_name(check.norm);
  p["samples"] = check.samples;
  return p;
}

namespace {

// One R-form block: R^{(j,n+1)}_{kl|kc}(eta_j | left_arg), j = n+2..2n;
// P^{(n,n+1)}; D at site n; R^{(j,n)}_{kr|kc'}(zeta_j | right_arg), j = 1..n-1.
// 1-based indices above; 0-based below.
void r_block(OperatorBuilder& b, const RFamily& f, int n, const std::vector<cplx>& eta, SiteKind kl, SiteKind kc_left,
             cplx left_arg, const Mat& delta, SiteKind kr, SiteKind kc_right, cplx right_arg) {
  for (int j = n + 1; j < 2 * n; ++j) b.pair(f.R(kl, eta[j], kc_left, left_arg), j, n);
  b.permutation(PermutationRep::sigma(2 * n, n - 1));
  b.site(delta, n - 1);
  for (int j = 0; j < n - 1; ++j) b.pair(f.R(kr, eta[j], kc_right, right_arg), j, n - 1);
}


bool flagged(const SiteModule& a, const SiteModule& b, Normalization norm) {
  try {
    solve_intertwiner({a, b, norm});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegeneratePoint || e.kind() == ErrorKind::HwComponentZero || e.kind() == ErrorKind::Pole)
      return true;
    throw;
  }
  return false;
}

Eigen::VectorXcd random_phi(Rng& rng, long size) {
  Eigen::VectorXcd v(size);
  for (long a = 0; a < size; ++a) v(a) = rng.normal_pair();
  return v;
}

const double kPi = std::numbers::pi;

}  // namespace

TensorOperator rhs_operator_selfdual(const ReductionCase& rc, const std::vector<cplx>& z) {
  if (rc.mode != ReductionMode::SelfDual) throw Error(ErrorKind::Config, "self-dual composite on a general case");
  const int n = rc.n;
  const ChainSpec c = rc.chain(z);
  const cplx w2 = rc.check.ctx.pow(2.0 * rc.shift_exponent());
  OperatorBuilder b(c.dims());
  const SiteKind V = SiteKind::V;
  r_block(b, c.family, n, c.etas, V, V, w2 * z[n - 1], c.delta_ops[n - 1](z[n - 1]), V, V, z[n - 1]);
  return b.build();
}

TensorOperator rhs_operator_general(const ReductionCase& rc, const std::vector<cplx>& z) {
  if (rc.mode != ReductionMode::General) throw Error(ErrorKind::Config, "general composite on a self-dual case");
  const int n = rc.n;
  const ChainSpec c = rc.chain(z);
  const cplx e1 = rc.check.ctx.pow(rc.shift_exponent()), e2 = e1 * e1;
  const SiteKind V = SiteKind::V, D = SiteKind::Vdual;
  const cplx zn = z[n - 1];
  OperatorBuilder b(c.dims());
  r_block(b, c.family, n, c.etas, D, D, e2 * zn, rc.delta(D)(e1 * zn), V, D, e1 * zn);
  r_block(b, c.family, n, c.etas, D, V, e1 * zn, rc.delta(V)(zn), V, V, zn);
  return b.build();
}

TensorOperator rhs_operator(const ReductionCase& rc, const std::vector<cplx>& z) {
  return rc.mode == ReductionMode::SelfDual ? rhs_operator_selfdual(rc, z) : rhs_operator_general(rc, z);
}

TensorOperator lambda_hat_selfdual(const ReductionCase& rc, const std::vector<cplx>& z) {
  LambdaOptions o;
  o.drop_first_left = true;
  return lambda_op(rc.chain(z), rc.n - 1, o);
}

TensorOperator lambda_hat_product_general(const ReductionCase& rc, const std::vector<cplx>& z) {
  const ChainSpec c = rc.chain(z);
  LambdaOptions first;
  first.drop_first_left = true;
  LambdaOptions second;
  second.drop_last_right = true;
  return lambda_op(c.shifted(rc.n - 1), rc.n, second) * lambda_op(c, rc.n - 1, first);
}

Mat psi_extract(const ReductionCase& rc, const Eigen::VectorXcd& phi) {
  const int n = rc.n;
  const Mat C = rc.contraction();
  const long d = C.rows();
  long half = 1;
  for (int a = 0; a < n; ++a) half *= d;
  if (phi.size() != half * half) throw Error(ErrorKind::ShapeMismatch, "Phi does not match 2n sites");
  // Column contraction M[(k_n..k_1), (j_1..j_n)] = prod_r C_{k_r j_r}.
  Mat M(half, half);
  std::vector<long> kd(n), jd(n);
  for (long row = 0; row < half; ++row) {
    long t = row;
    for (int a = n - 1; a >= 0; --a, t /= d) kd[a] = t % d;  // kd[a] is slot n+a, holding k_{n-a}
    for (long col = 0; col < half; ++col) {
      long u = col;
      for (int a = n - 1; a >= 0; --a, u /= d) jd[a] = u % d;  // jd[a] = j_{a+1}
      cplx v{1.0, 0.0};
      for (int a = 0; a < n; ++a) v *= C(kd[a], jd[n - 1 - a]);
      M(row, col) = v;
    }
  }
  // Phi flat index = first-half flat * half + second-half flat.
  const Mat F = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      phi.data(), half, half);
  return F * M;
}

Eigen::VectorXcd psi_embed(const ReductionCase& rc, const Mat& psi) {
  const long half = psi.rows();
  // Apply psi_extract to the unit tensors of the second half to get M.
  Mat M(half, half);
  for (long k = 0; k < half; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(half * half);
    e(k) = 1.0;
    M.row(k) = psi_extract(rc, e).row(0);
  }
  const Mat F = psi * M.inverse();
  Eigen::VectorXcd phi(half * half);
  for (long r = 0; r < half; ++r)
    for (long c = 0; c < half; ++c) phi(r * half + c) = F(r, c);
  return phi;
}

namespace {

std::vector<cplx> sample_generic(const ReductionCase& rc, Rng& rng, int count) {
  const int s = rc.check.grading.s();
  const bool kappa = rc.check.norm == Normalization::Kappa;
  for (;;) {
    std::vector<cplx> z(count);
    for (cplx& x : z) x = rng.zeta();
    bool ok = true;
    for (int a = 0; a < count && ok; ++a)
      for (int b = 0; b < count && ok; ++b) {
        if (a == b) continue;
        const cplx r = std::pow(z[a] / z[b], s);
        if (kappa && std::abs(std::arg(r)) >= kPi / 2) ok = false;
        for (int j = -60; j <= 60 && ok; ++j)
          if (std::abs(r / rc.check.ctx.pow(2.0 * j) - 1.0) < 1e-3) ok = false;
      }
    if (ok) return z;
  }
}

}  // namespace

std::vector<cplx> sample_zetas(const ReductionCase& rc, Rng& rng) { return sample_generic(rc, rng, rc.n); }

ChainSpec generic_chain(const ReductionCase& rc, Rng& rng) {
  // A shift by p must also stay generic for the compatibility check, so the
  // lattice test covers the shifted ratios via the even-power lattice.
  return rc.chain_from_etas(sample_generic(rc, rng, 2 * rc.n));
}

std::vector<VerificationReport> theorem_check_selfdual(const ReductionCase& rc) {
  if (rc.mode != ReductionMode::SelfDual) throw Error(ErrorKind::Config, "self-dual theorem on a general case");
  const CheckContext& c = rc.check;
  Rng rng = c.rng(std::string("theorem.selfdual") + std::to_string(rc.n));
  const int n = rc.n;
  const cplx w = c.ctx.pow(rc.shift_exponent()), w2 = w * w;
  double op_res = 0.0, lprp_res = 0.0, e2e = 0.0, flagged_all = 1.0;
  for (int t = 0; t < c.samples; ++t) {
    const std::vector<cplx> z = sample_zetas(rc, rng);
    const ChainSpec chain = rc.chain(z);
    const Mat rhs = rhs_operator_selfdual(rc, z).data;
    const Mat lam_hat = lambda_hat_selfdual(rc, z).data;
    op_res = std::max(op_res, rel_diff(rhs, lam_hat));

    // The coincident factor Rcheck(q^w z_n | q^{2w} z_n) sits on a non-simple
    // point; its unit-norm direction stands in for it.
    const SiteModule a{SiteKind::V, chain.family.rep_ptr(), w * z[n - 1]};
    const SiteModule b{SiteKind::V, chain.family.rep_ptr(), w2 * z[n - 1]};
    const Mat r0 = solve_direction(a, b).Rcheck;
    if (!flagged(a, b, c.norm)) flagged_all = 0.0;
    const Dims dims = chain.dims();
    const Mat lhs = kernels::apply_pair(r0, n - 1, n, dims, rhs);
    const Mat lam = kernels::apply_pair(r0, n - 1, n, dims, lam_hat);
    lprp_res = std::max(lprp_res, rel_diff(lhs, lam));

    // End to end: Phi_2 = Lambda^ Phi_0 against the reduced relation on Psi.
    const Eigen::VectorXcd phi0 = random_phi(rng, rhs.rows());
    const Eigen::VectorXcd phi2 = lam_hat * phi0;
    const Mat psi_a = psi_extract(rc, phi2);
    const Mat psi_b = psi_extract(rc, rhs * psi_embed(rc, psi_extract(rc, phi0)));
    e2e = std::max(e2e, rel_diff(psi_a, psi_b));
  }
  std::vector<VerificationReport> out;
  auto add = [&](const std::string& name, double res, double tol, std::vector<ExtractedScalar> ex, std::string note) {
    out.push_back(run_timed(c, [&](VerificationReport& r) {
      r.name = name;
      r.params = rc.params();
      r.residual = res;
      r.tolerance = c.tol(tol);
      r.extracted_scalars = std::move(ex);
      r.note = std::move(note);
    }));
  };
  add("theorem.selfdual.operator", op_res, 1e-9, {},
      "rhs composite against Lambda_n without its coincident factor");
  add("theorem.selfdual.lprp", lprp_res, 1e-9, {{"coincident_flagged", flagged_all}},
      "coincident factor realized by its unit-norm direction");
  add("theorem.selfdual.end_to_end", e2e, 1e-8, {}, "");
  if (flagged_all != 1.0) out[1].residual = std::numeric_limits<double>::infinity(), out[1].finalize();
  return out;
}

std::vector<VerificationReport> theorem_check_general(const ReductionCase& rc) {
  if (rc.mode != ReductionMode::General) throw Error(ErrorKind::Config, "general theorem on a self-dual case");
  const CheckContext& c = rc.check;
  Rng rng = c.rng(std::string("theorem.general") + std::to_string(rc.n));
  const int n = rc.n;
  const cplx e1 = c.ctx.pow(rc.shift_exponent());
  const SiteKind V = SiteKind::V, D = SiteKind::Vdual;
  double op_res = 0.0, ins_res = 0.0, lim_res = 0.0, e2e = 0.0, flagged_all = 1.0;
  for (int t = 0; t < c.samples; ++t) {
    const std::vector<cplx> z = sample_zetas(rc, rng);
    const ChainSpec chain = rc.chain(z);
    const Mat rhs = rhs_operator_general(rc, z).data;
    const ChainSpec shifted = chain.shifted(n - 1);
    LambdaOptions first, second;
    first.drop_first_left = true;
    second.drop_last_right = true;
    const Mat l1 = lambda_op(chain, n - 1, first).data;
    const Mat l2 = lambda_op(shifted, n, second).data;
    const Mat prod = l2 * l1;
    op_res = std::max(op_res, rel_diff(rhs, prod));

    // Insertion of Rcheck_{V|V*}(x|y) Rcheck_{V*|V}(y|x) next to y = x.
    const cplx x = e1 * z[n - 1];
    for (double tau : {1e-2, 1e-3}) {
      const cplx y = x * (1.0 + tau);
      const Mat J = chain.family.Rcheck(V, x, D, y) * chain.family.Rcheck(D, y, V, x);
      lim_res = std::max(lim_res, (J - Mat::Identity(J.rows(), J.cols())).norm() / std::sqrt(double(J.rows())));
      const Mat ins = l2 * kernels::apply_pair(J, n - 1, n, chain.dims(), l1);
      ins_res = std::max(ins_res, rel_diff(ins, rhs));
    }
    const SiteModule sv{V, chain.family.rep_ptr(), x}, sd{D, chain.family.rep_ptr(), x};
    if (!flagged(sv, sd, c.norm) || !flagged(sd, sv, c.norm)) flagged_all = 0.0;

    const Eigen::VectorXcd phi0 = random_phi(rng, rhs.rows());
    const Eigen::VectorXcd phi2 = l2 * (l1 * phi0);
    const Mat psi_a = psi_extract(rc, phi2);
    const Mat psi_b = psi_extract(rc, rhs * psi_embed(rc, psi_extract(rc, phi0)));
    e2e = std::max(e2e, rel_diff(psi_a, psi_b));
  }
  std::vector<VerificationReport> out;
  auto add = [&](const std::string& name, double res, double tol, std::vector<ExtractedScalar> ex, std::string note) {
    out.push_back(run_timed(c, [&](VerificationReport& r) {
      r.name = name;
      r.params = rc.params();
      r.residual = res;
      r.tolerance = c.tol(tol);
      r.extracted_scalars = std::move(ex);
      r.note = std::move(note);
    }));
  };
  add("theorem.general.operator", op_res, 1e-9, {},
      "rhs composite against Lambda_{n+1}(eta') Lambda_n(eta) without the coincident mixed factors");
  add("theorem.general.insertion", ins_res, 1e-10, {{"exchange_product_residual", lim_res}, {"coincident_flagged", flagged_all}},
      "identity inserted as the exchange product at tau = 1e-2, 1e-3");
  add("theorem.general.end_to_end", e2e, 1e-8, {}, "");
  if (flagged_all != 1.0) out[1].residual = std::numeric_limits<double>::infinity(), out[1].finalize();
  return out;
}

VerificationReport check_rpr(const ReductionCase& rc, int i) {
  const CheckContext& c = rc.check;
  return run_timed(c, [&](VerificationReport& r) {
    r.name = "theorem.rpr";
    r.params = rc.params();
    r.params["i"] = i;
    const int n = rc.n;
    if (i < 0 || i + 1 >= n) throw Error(ErrorKind::Config, "rpr position out of range");
    Rng rng = c.rng(r.name + mode_name(rc.mode) + std::to_string(n) + std::to_string(i));
    for (int t = 0; t < c.samples; ++t) {
      const std::vector<cplx> z = sample_zetas(rc, rng);
      const ChainSpec chain = rc.chain(z);
      const Dims dims = chain.dims();
      const auto& k = chain.kinds;
      const auto& eta = chain.etas;
      // Swap (z_i, z_{i+1}) in the first half and the mirrored pair in the second.
      const int a = 2 * n - 2 - i, b = 2 * n - 1 - i;
      const Mat r1 = chain.family.Rcheck(k[i], eta[i], k[i + 1], eta[i + 1]);
      const Mat r2 = chain.family.Rcheck(k[a], eta[a], k[b], eta[b]);
      const Eigen::VectorXcd phi0 = random_phi(rng, kernels::total_dim(dims));
      Eigen::VectorXcd phi1 = kernels::apply_pair(r1, i, i + 1, dims, phi0);
      phi1 = kernels::apply_pair(r2, a, b, dims, phi1);
      const Mat rvv = chain.family.Rcheck(SiteKind::V, z[i], SiteKind::V, z[i + 1]);
      OperatorBuilder half(Dims(n, chain.family.dim()));
      const Mat emb = half.pair(rvv, i, i + 1).build().data;
      const Mat lhs = emb * psi_extract(rc, phi0);
      const Mat rhs = psi_extract(rc, phi1) * emb;
      r.residual = std::max(r.residual, rel_diff(lhs, rhs));
    }
    r.params["samples"] = c.samples;
    r.tolerance = c.tol(1e-9);
  });
}

VerificationReport check_scaling_covariance(const ReductionCase& rc) {
  const CheckContext& c = rc.check;
  return run_timed(c, [&](VerificationReport& r) {
    r.name = "theorem.scaling_covariance";
    r.params = rc.params();
    Rng rng = c.rng(r.name + mode_name(rc.mode) + std::to_string(rc.n));
    for (int t = 0; t < c.samples; ++t) {
      std::vector<cplx> z = sample_zetas(rc, rng);
      const cplx nu = rng.zeta();
      std::vector<cplx> zs(z);
      for (cplx& x : zs) x *= nu;
      r.residual = std::max(r.residual, rel_diff(rhs_operator(rc, z).data, rhs_operator(rc, zs).data));
      if (rc.mode == ReductionMode::SelfDual)
        r.residual = std::max(r.residual, rel_diff(lambda_hat_selfdual(rc, z).data, lambda_hat_selfdual(rc, zs).data));
      else
        r.residual = std::max(r.residual,
                              rel_diff(lambda_hat_product_general(rc, z).data, lambda_hat_product_general(rc, zs).data));
    }
    r.tolerance = c.tol(1e-10);
  });
}

}  // namespace qkz
