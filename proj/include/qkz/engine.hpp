#pragma once

// qKZ operators on a chain W_1 (x) ... (x) W_N of evaluation modules.
// Sites are 0-based; site i of the 1-based notation is index i-1.

#include <functional>

#include "qkz/report.hpp"
#include "qkz/tensor.hpp"

namespace qkz {

using DeltaFn = std::function<Mat(cplx)>;

struct ChainSpec {
  RFamily family;
  std::vector<SiteKind> kinds;
  std::vector<cplx> etas;
  cplx p{1.0, 0.0};
  std::vector<DeltaFn> delta_ops;

  int N() const { return static_cast<int>(kinds.size()); }
  Dims dims() const { return Dims(kinds.size(), family.dim()); }
  void validate() const;
  /// Copy with eta_k replaced by p * eta_k.
  ChainSpec shifted(int k) const;
};

enum class DeltaSource { SelfDual, GeneralV, GeneralVdual, Custom };

struct DeltaAssignment {
  DeltaSource source = DeltaSource::GeneralV;
  cplx alpha{0.0, 0.0};
  std::function<cplx(cplx)> phi_hook = [](cplx) { return cplx{1.0, 0.0}; };
  /// d^{n-1} prefactor of the self-dual Delta.
  int n = 1;
  cplx d{1.0, 0.0};
  DeltaFn custom;
};

/// Site operator Delta(zeta) as a product of the distinguished operators,
/// factors in written order. Throws SingularOperator if not invertible.
DeltaFn build_delta(const DeltaAssignment& assign, const EvalRep& rep);

enum class LambdaForm { Displayed, Rewritten };

struct LambdaOptions {
  LambdaForm form = LambdaForm::Displayed;
  /// Displayed form only: omit the leftmost R-factor R^{(i,i+1)}(eta_{i+1}|p eta_i).
  bool drop_first_left = false;
  /// Displayed form only: omit the last right factor R^{(i-1,i)}(eta_{i-1}|eta_i).
  bool drop_last_right = false;
};

/// Lambda_i as a dense operator on W. Kinds of the R-factors follow the sites.
TensorOperator lambda_op(const ChainSpec& chain, int i, const LambdaOptions& opt = {});

/// Both forms of Lambda_i and their relative difference.
VerificationReport check_lambda_forms(const ChainSpec& chain, int i);
/// [(Delta_j (x) Delta_k), R_{W_j|W_k}(eta_j|eta_k)].
VerificationReport check_ddr(const ChainSpec& chain, int j, int k);
/// Lambda_i(eta, eta_j -> p eta_j) Lambda_j(eta) - Lambda_j(eta, eta_i -> p eta_i) Lambda_i(eta).
VerificationReport check_qkz_compatibility(const ChainSpec& chain, int i, int j);

// ---- transport along permutations -----------------------------------------

/// Word sigma_{i_1}, sigma_{i_2}, ... in application order (0-based positions).
using Word = std::vector<int>;

struct Transported {
  Eigen::VectorXcd phi;
  /// order[position] = original site now at that position.
  std::vector<int> order;
};

/// Applies the exchange recurrence along `word` starting from the identity
/// arrangement.
Transported transport_phi(const ChainSpec& chain, const Eigen::VectorXcd& base, const Word& word);

/// Word of adjacent swaps taking the identity arrangement to `order`.
Word canonical_word(const std::vector<int>& order);

/// Rcheck^{(a,a+1)} transport(w) against transport of a canonical word for
/// the swapped arrangement, over random words and positions.
VerificationReport check_rd_exchange(const ChainSpec& chain, std::uint64_t seed, int samples);
/// Random (possibly non-reduced) words against canonical words of the same
/// arrangement.
VerificationReport check_braid_welldefined(const ChainSpec& chain, std::uint64_t seed, int samples);

}  // namespace qkz
