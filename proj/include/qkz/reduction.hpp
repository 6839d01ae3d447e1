#pragma once

// Reduction of the qKZ system on a mirrored chain of 2n sites to the reduced
// equation for Psi_n. Comments use 1-based site indices; code is 0-based.

#include "qkz/engine.hpp"
#include "qkz/idsuite.hpp"

namespace qkz {

enum class ReductionMode { SelfDual, General };
const char* mode_name(ReductionMode m);

struct ReductionCase {
  ReductionMode mode = ReductionMode::SelfDual;
  int n = 1;
  CheckContext check;  // m, grading, alpha, q, seed, samples, norm

  /// omega for SelfDual, epsilon for General.
  double shift_exponent() const;
  /// (z_1..z_n, q^w z_n, ..., q^w z_1).
  std::vector<cplx> chain_args(const std::vector<cplx>& zetas) const;
  std::vector<SiteKind> chain_kinds() const;
  /// Chain with p = q^{2 omega} (SelfDual) or q^epsilon (General) and Delta
  /// of the matching case.
  ChainSpec chain(const std::vector<cplx>& zetas) const;
  /// Same kinds, shift and Delta with arbitrary spectral parameters.
  ChainSpec chain_from_etas(const std::vector<cplx>& etas) const;
  /// Site operator Delta (V sites) and Delta* (V* sites).
  DeltaFn delta(SiteKind kind) const;
  /// Contraction matrix: X~ (SelfDual) or X (General).
  Mat contraction() const;
  Json params() const;
};

/// Composite R^{(n+2,n+1)}...R^{(2n,n+1)} P^{(n,n+1)} Delta^{(n)} R^{(1,n)}...R^{(n-1,n)}.
TensorOperator rhs_operator_selfdual(const ReductionCase& rc, const std::vector<cplx>& zetas);
/// Two-block composite with R_{V*|V*}, Delta*, R_{V|V*}, then R_{V*|V}, Delta, R_{V|V}.
TensorOperator rhs_operator_general(const ReductionCase& rc, const std::vector<cplx>& zetas);
TensorOperator rhs_operator(const ReductionCase& rc, const std::vector<cplx>& zetas);

/// Lambda_n with its coincident factor Rcheck^{(n,n+1)}(q^w z_n | q^{2w} z_n) removed.
TensorOperator lambda_hat_selfdual(const ReductionCase& rc, const std::vector<cplx>& zetas);
/// Lambda^_{n+1}(eta') Lambda^_n(eta): both coincident mixed factors removed.
TensorOperator lambda_hat_product_general(const ReductionCase& rc, const std::vector<cplx>& zetas);

/// Psi^{i_1..i_n}_{j_1..j_n} = sum_k Phi^{i_1..i_n k_n..k_1} C_{k_n j_n} ... C_{k_1 j_1}.
Mat psi_extract(const ReductionCase& rc, const Eigen::VectorXcd& phi);
/// Inverse of psi_extract.
Eigen::VectorXcd psi_embed(const ReductionCase& rc, const Mat& psi);

/// Chain with the case's kinds and random pairwise generic parameters.
ChainSpec generic_chain(const ReductionCase& rc, Rng& rng);

/// Generic spectral tuple for the case (rejection sampling over all pair ratios).
std::vector<cplx> sample_zetas(const ReductionCase& rc, Rng& rng);

std::vector<VerificationReport> theorem_check_selfdual(const ReductionCase& rc);
std::vector<VerificationReport> theorem_check_general(const ReductionCase& rc);
/// Exchange relation for Psi at adjacent position i (0-based, i + 1 < n).
VerificationReport check_rpr(const ReductionCase& rc, int i);
/// Composite operators unchanged under zeta -> nu zeta.
VerificationReport check_scaling_covariance(const ReductionCase& rc);

}  // namespace qkz
