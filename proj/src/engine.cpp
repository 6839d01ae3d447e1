#include "qkz/engine.hpp"

#include <algorithm>

#include "qkz/idsuite.hpp"
#include "qkz/kernels.hpp"

namespace qkz {

void ChainSpec::validate() const {
  if (kinds.empty()) throw Error(ErrorKind::Config, "empty chain");
  if (etas.size() != kinds.size()) throw Error(ErrorKind::ShapeMismatch, "one spectral parameter per site");
  if (delta_ops.size() != kinds.size()) throw Error(ErrorKind::ShapeMismatch, "one Delta per site");
  if (p == 0.0) throw Error(ErrorKind::Config, "p must be nonzero");
  for (cplx e : etas)
    if (e == 0.0) throw Error(ErrorKind::Config, "spectral parameters must be nonzero");
}

ChainSpec ChainSpec::shifted(int k) const {
  ChainSpec c = *this;
  c.etas.at(k) *= p;
  return c;
}

namespace {

void require_invertible(const Mat& a, const char* what) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-12 * sv(0)) throw Error(ErrorKind::SingularOperator, what);
}

}  // namespace

DeltaFn build_delta(const DeltaAssignment& a, const EvalRep& rep) {
  if (a.source == DeltaSource::Custom) {
    if (!a.custom) throw Error(ErrorKind::Config, "custom Delta without a function");
    auto f = a.custom;
    return [f](cplx z) -> Mat {
      Mat m = f(z);
      require_invertible(m, "custom Delta is singular");
      return m;
    };
  }
  const DistinguishedOps ops = distinguished_ops(rep, a.alpha);
  Mat base;
  switch (a.source) {
    case DeltaSource::SelfDual: {
      const Mat xt_inv = ops.Xtilde.inverse();
      base = std::pow(a.d, a.n - 1) * xt_inv.transpose() * ops.Xtilde * ops.A;
      break;
    }
    case DeltaSource::GeneralV:
      base = ops.X * ops.A;
      break;
    case DeltaSource::GeneralVdual:
      base = ops.Xdual * ops.Adual;
      break;
    default:
      break;
  }
  require_invertible(base, "Delta is singular");
  auto phi = a.phi_hook;
  return [base, phi](cplx z) -> Mat { return phi(z) * base; };
}

TensorOperator lambda_op(const ChainSpec& chain, int i, const LambdaOptions& opt) {
  chain.validate();
  const int N = chain.N();
  if (i < 0 || i >= N) throw Error(ErrorKind::Config, "site index out of range");
  const auto& k = chain.kinds;
  const auto& eta = chain.etas;
  const RFamily& f = chain.family;
  const cplx peta = chain.p * eta[i];
  OperatorBuilder b(chain.dims());

  if (opt.form == LambdaForm::Displayed) {
    // Rcheck^{(j-1,j)}_{W_j|W_i}(eta_j | p eta_i), j = i+1..N-1 (0-based positions j-1, j)
    for (int j = i + 1; j < N; ++j) {
      if (opt.drop_first_left && j == i + 1) continue;
      b.pair(f.Rcheck(k[j], eta[j], k[i], peta), j - 1, j);
    }
    b.permutation(PermutationRep::cyclic_lambda(N));
    b.site(chain.delta_ops[i](eta[i]), 0);
    for (int j = 0; j < i; ++j) {
      if (opt.drop_last_right && j == i - 1) continue;
      b.pair(f.Rcheck(k[j], eta[j], k[i], eta[i]), j, j + 1);
    }
  } else {
    if (opt.drop_first_left || opt.drop_last_right)
      throw Error(ErrorKind::Config, "stripped factors are defined for the displayed form only");
    for (int j = i + 1; j < N; ++j) b.pair(f.R(k[j], eta[j], k[i], peta), j, i);
    b.site(chain.delta_ops[i](eta[i]), i);
    for (int j = 0; j < i; ++j) b.pair(f.R(k[j], eta[j], k[i], eta[i]), j, i);
  }
  return b.build();
}

namespace {

Json chain_params(const ChainSpec& c) {
  std::vector<SiteKind> ks = c.kinds;
  return {{"N", c.N()},
          {"m", c.family.rep().m()},
          {"kinds", kinds_label(ks)},
          {"norm", norm_name(c.family.norm())}};
}

}  // namespace

VerificationReport check_lambda_forms(const ChainSpec& chain, int i) {
  VerificationReport r;
  r.name = "qkz.lambda_forms";
  r.params = chain_params(chain);
  r.params["i"] = i;
  const Mat a = lambda_op(chain, i).data;
  const Mat b = lambda_op(chain, i, {LambdaForm::Rewritten}).data;
  r.residual = rel_diff(a, b);
  r.tolerance = 1e-10;
  r.finalize();
  return r;
}

VerificationReport check_ddr(const ChainSpec& chain, int j, int k) {
  VerificationReport r;
  r.name = "qkz.ddr";
  r.params = chain_params(chain);
  r.params["j"] = j;
  r.params["k"] = k;
  const Mat dd = kron(chain.delta_ops[j](chain.etas[j]), chain.delta_ops[k](chain.etas[k]));
  const Mat R = chain.family.R(chain.kinds[j], chain.etas[j], chain.kinds[k], chain.etas[k]);
  r.residual = (dd * R - R * dd).norm() / std::max(dd.norm() * R.norm(), 1e-300);
  r.tolerance = 1e-11;
  r.finalize();
  return r;
}

VerificationReport check_qkz_compatibility(const ChainSpec& chain, int i, int j) {
  VerificationReport r;
  r.name = "qkz.compatibility";
  r.params = chain_params(chain);
  r.params["i"] = i;
  r.params["j"] = j;
  const Mat lhs = lambda_op(chain.shifted(j), i).data * lambda_op(chain, j).data;
  const Mat rhs = lambda_op(chain.shifted(i), j).data * lambda_op(chain, i).data;
  r.residual = rel_diff(lhs, rhs);
  r.tolerance = 1e-9;
  r.finalize();
  return r;
}

Transported transport_phi(const ChainSpec& chain, const Eigen::VectorXcd& base, const Word& word) {
  chain.validate();
  const Dims dims = chain.dims();
  if (base.size() != kernels::total_dim(dims)) throw Error(ErrorKind::ShapeMismatch, "tensor does not match chain");
  Transported t{base, {}};
  t.order.resize(chain.N());
  for (int a = 0; a < chain.N(); ++a) t.order[a] = a;
  for (int a : word) {
    if (a < 0 || a + 1 >= chain.N()) throw Error(ErrorKind::Config, "word letter out of range");
    const int u = t.order[a], v = t.order[a + 1];
    const Mat rc = chain.family.Rcheck(chain.kinds[u], chain.etas[u], chain.kinds[v], chain.etas[v]);
    t.phi = kernels::apply_pair(rc, a, a + 1, dims, t.phi);
    std::swap(t.order[a], t.order[a + 1]);
  }
  return t;
}

Word canonical_word(const std::vector<int>& order) {
  std::vector<int> cur(order.size());
  for (std::size_t a = 0; a < cur.size(); ++a) cur[a] = static_cast<int>(a);
  Word w;
  for (std::size_t p = 0; p < order.size(); ++p) {
    auto it = std::find(cur.begin() + p, cur.end(), order[p]);
    if (it == cur.end()) throw Error(ErrorKind::Config, "not a permutation");
    for (int a = static_cast<int>(it - cur.begin()); a > static_cast<int>(p); --a) {
      w.push_back(a - 1);
      std::swap(cur[a - 1], cur[a]);
    }
  }
  return w;
}

namespace {

Word random_word(Rng& rng, int N, int length) {
  Word w;
  for (int k = 0; k < length; ++k) w.push_back(static_cast<int>(rng.bits() % static_cast<std::uint64_t>(N - 1)));
  return w;
}

Eigen::VectorXcd random_tensor(Rng& rng, long size) {
  Eigen::VectorXcd v(size);
  for (long a = 0; a < size; ++a) v(a) = rng.normal_pair();
  return v;
}

}  // namespace

VerificationReport check_rd_exchange(const ChainSpec& chain, std::uint64_t seed, int samples) {
  VerificationReport r;
  r.name = "qkz.rd_exchange";
  r.params = chain_params(chain);
  r.params["seed"] = seed;
  r.params["samples"] = samples;
  const int N = chain.N();
  if (N < 2) throw Error(ErrorKind::Config, "exchange needs two sites");
  Rng rng(derive_seed(seed, r.name));
  const long size = kernels::total_dim(chain.dims());
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXcd base = random_tensor(rng, size);
    const Transported t = transport_phi(chain, base, random_word(rng, N, 2 * N));
    const int a = static_cast<int>(rng.bits() % static_cast<std::uint64_t>(N - 1));
    const int u = t.order[a], v = t.order[a + 1];
    const Mat rc = chain.family.Rcheck(chain.kinds[u], chain.etas[u], chain.kinds[v], chain.etas[v]);
    const Eigen::VectorXcd lhs = kernels::apply_pair(rc, a, a + 1, chain.dims(), t.phi);
    std::vector<int> target = t.order;
    std::swap(target[a], target[a + 1]);
    const Transported rhs = transport_phi(chain, base, canonical_word(target));
    r.residual = std::max(r.residual, (lhs - rhs.phi).norm() / std::max(lhs.norm(), 1e-300));
  }
  r.tolerance = 1e-9;
  r.finalize();
  return r;
}

VerificationReport check_braid_welldefined(const ChainSpec& chain, std::uint64_t seed, int samples) {
  VerificationReport r;
  r.name = "qkz.braid_welldefined";
  r.params = chain_params(chain);
  r.params["seed"] = seed;
  r.params["samples"] = samples;
  const int N = chain.N();
  if (N < 2) throw Error(ErrorKind::Config, "transport needs two sites");
  Rng rng(derive_seed(seed, r.name));
  const long size = kernels::total_dim(chain.dims());
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXcd base = random_tensor(rng, size);
    const Transported a = transport_phi(chain, base, random_word(rng, N, 3 * N));
    const Transported b = transport_phi(chain, base, canonical_word(a.order));
    r.residual = std::max(r.residual, (a.phi - b.phi).norm() / std::max(a.phi.norm(), 1e-300));
  }
  r.tolerance = 1e-9;
  r.finalize();
  return r;
}

}  // namespace qkz
