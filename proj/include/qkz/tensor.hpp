#pragma once

// Dense operators on tensor products of site spaces.
// Sites are 0-based; site 0 is the most significant tensor factor (Kronecker
// order), so kron(A, B) acts as A on site 0 and B on site 1.

#include <vector>

#include "qkz/kernels.hpp"
#include "qkz/scalar.hpp"

namespace qkz {

using Mat = Eigen::MatrixXcd;
using Dims = std::vector<int>;

struct TensorOperator {
  Dims site_dims_out;
  Dims site_dims_in;
  Mat data;

  static TensorOperator identity(const Dims& dims);
  void check() const;
  TensorOperator operator*(const TensorOperator& rhs) const;
};

Mat kron(const Mat& a, const Mat& b);

/// Object at position i goes to position s[i] (0-based).
struct PermutationRep {
  std::vector<int> s;

  static PermutationRep identity(int n);
  /// Adjacent transposition of positions k, k+1.
  static PermutationRep sigma(int n, int k);
  /// Cyclic left shift of the objects: lambda(0) = n-1, lambda(i) = i-1.
  static PermutationRep cyclic_lambda(int n);

  int size() const { return static_cast<int>(s.size()); }
  /// (this . other)(i) = this(other(i)).
  PermutationRep compose(const PermutationRep& other) const;
  PermutationRep inverse() const;
  bool operator==(const PermutationRep& o) const { return s == o.s; }
};

/// Two-site op acting on sites (i, j), identity elsewhere. op's first factor
/// acts on site i, so (j, i) gives the reversed embedding.
TensorOperator embed_pair(const Mat& op, int i, int j, const Dims& dims);
TensorOperator embed_site(const Mat& op, int k, const Dims& dims);
TensorOperator permutation_op(const PermutationRep& s, const Dims& dims_in);

/// Swap of two factors V1 (x) V2 -> V2 (x) V1.
Mat swap_matrix(int d1, int d2);

enum class Factor { First, Second };
Mat partial_transpose(const Mat& op, int d1, int d2, Factor which);

struct Ratio {
  cplx lambda;
  double residual;
};
/// lambda minimizing ||A - lambda B||_F; residual relative to ||A||_F.
Ratio scalar_ratio(const Mat& a, const Mat& b);

/// Relative Frobenius distance ||A - B|| / max(||A||, ||B||, tiny).
double rel_diff(const Mat& a, const Mat& b);

/// Materializes a product F_1 F_2 ... F_k as a dense operator by applying the
/// factors to the identity from the right end. Factors are appended in the
/// written left-to-right order.
class OperatorBuilder {
 public:
  explicit OperatorBuilder(Dims dims) : dims_(std::move(dims)) {}

  OperatorBuilder& pair(const Mat& op, int i, int j);
  OperatorBuilder& site(const Mat& op, int k);
  OperatorBuilder& permutation(const PermutationRep& s);
  OperatorBuilder& dense(const Mat& op);

  TensorOperator build() const;
  /// Applies the product to an arbitrary block of columns.
  Mat apply(const Mat& x) const;

  const Dims& dims() const { return dims_; }

 private:
  struct Step {
    int type;  // 0 pair, 1 site, 2 permutation, 3 dense
    Mat op;
    int i = 0, j = 0;
    std::vector<int> perm;
  };
  Dims dims_;
  std::vector<Step> steps_;
};

}  // namespace qkz
