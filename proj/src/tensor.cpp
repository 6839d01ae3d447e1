#include "qkz/tensor.hpp"

#include <numeric>

namespace qkz {

TensorOperator TensorOperator::identity(const Dims& dims) {
  const long d = kernels::total_dim(dims);
  return {dims, dims, Mat::Identity(d, d)};
}

void TensorOperator::check() const {
  if (data.rows() != kernels::total_dim(site_dims_out) || data.cols() != kernels::total_dim(site_dims_in))
    throw Error(ErrorKind::ShapeMismatch, "operator data does not match its site dims");
}

TensorOperator TensorOperator::operator*(const TensorOperator& rhs) const {
  if (site_dims_in != rhs.site_dims_out) throw Error(ErrorKind::ShapeMismatch, "inner site dims differ");
  return {site_dims_out, rhs.site_dims_in, data * rhs.data};
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

PermutationRep PermutationRep::identity(int n) {
  PermutationRep p;
  p.s.resize(n);
  std::iota(p.s.begin(), p.s.end(), 0);
  return p;
}

PermutationRep PermutationRep::sigma(int n, int k) {
  if (k < 0 || k + 1 >= n) throw Error(ErrorKind::ShapeMismatch, "transposition out of range");
  PermutationRep p = identity(n);
  std::swap(p.s[k], p.s[k + 1]);
  return p;
}

PermutationRep PermutationRep::cyclic_lambda(int n) {
  PermutationRep p;
  p.s.resize(n);
  p.s[0] = n - 1;
  for (int i = 1; i < n; ++i) p.s[i] = i - 1;
  return p;
}

PermutationRep PermutationRep::compose(const PermutationRep& other) const {
  if (size() != other.size()) throw Error(ErrorKind::ShapeMismatch, "permutation sizes differ");
  PermutationRep r;
  r.s.resize(s.size());
  for (int i = 0; i < size(); ++i) r.s[i] = s[other.s[i]];
  return r;
}

PermutationRep PermutationRep::inverse() const {
  PermutationRep r;
  r.s.resize(s.size());
  for (int i = 0; i < size(); ++i) r.s[s[i]] = i;
  return r;
}

TensorOperator embed_pair(const Mat& op, int i, int j, const Dims& dims) {
  const long d = kernels::total_dim(dims);
  return {dims, dims, kernels::apply_pair(op, i, j, dims, Mat::Identity(d, d))};
}

TensorOperator embed_site(const Mat& op, int k, const Dims& dims) {
  const long d = kernels::total_dim(dims);
  return {dims, dims, kernels::apply_site(op, k, dims, Mat::Identity(d, d))};
}

TensorOperator permutation_op(const PermutationRep& s, const Dims& dims_in) {
  const long d = kernels::total_dim(dims_in);
  Dims out(dims_in.size());
  for (int i = 0; i < s.size(); ++i) out[s.s[i]] = dims_in[i];
  return {out, dims_in, kernels::apply_permutation(s.s, dims_in, Mat::Identity(d, d))};
}

Mat swap_matrix(int d1, int d2) {
  Mat p = Mat::Zero(d1 * d2, d1 * d2);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b) p(b * d1 + a, a * d2 + b) = 1.0;
  return p;
}

Mat partial_transpose(const Mat& op, int d1, int d2, Factor which) {
  if (op.rows() != d1 * d2 || op.cols() != d1 * d2)
    throw Error(ErrorKind::ShapeMismatch, "partial transpose needs a square two-site matrix");
  Mat r(op.rows(), op.cols());
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b)
      for (int c = 0; c < d1; ++c)
        for (int e = 0; e < d2; ++e) {
          // op[(a,b),(c,e)]
          if (which == Factor::First)
            r(c * d2 + b, a * d2 + e) = op(a * d2 + b, c * d2 + e);
          else
            r(a * d2 + e, c * d2 + b) = op(a * d2 + b, c * d2 + e);
        }
  return r;
}

Ratio scalar_ratio(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "scalar_ratio shapes differ");
  const double bb = b.squaredNorm();
  if (bb == 0.0) throw Error(ErrorKind::ZeroOperand, "scalar_ratio with B = 0");
  const cplx lam = (b.array().conjugate() * a.array()).sum() / bb;
  const double na = a.norm();
  const double res = na == 0.0 ? 0.0 : (a - lam * b).norm() / na;
  return {lam, res};
}

double rel_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "rel_diff shapes differ");
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

OperatorBuilder& OperatorBuilder::pair(const Mat& op, int i, int j) {
  steps_.push_back({0, op, i, j, {}});
  return *this;
}
OperatorBuilder& OperatorBuilder::site(const Mat& op, int k) {
  steps_.push_back({1, op, k, 0, {}});
  return *this;
}
OperatorBuilder& OperatorBuilder::permutation(const PermutationRep& s) {
  steps_.push_back({2, Mat(), 0, 0, s.s});
  return *this;
}
OperatorBuilder& OperatorBuilder::dense(const Mat& op) {
  steps_.push_back({3, op, 0, 0, {}});
  return *this;
}

Mat OperatorBuilder::apply(const Mat& x) const {
  Mat y = x;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    switch (it->type) {
      case 0: y = kernels::apply_pair(it->op, it->i, it->j, dims_, y); break;
      case 1: y = kernels::apply_site(it->op, it->i, dims_, y); break;
      case 2: y = kernels::apply_permutation(it->perm, dims_, y); break;
      default:
        if (it->op.cols() != y.rows()) throw Error(ErrorKind::ShapeMismatch, "dense factor has wrong size");
        y = it->op * y;
    }
  }
  return y;
}

TensorOperator OperatorBuilder::build() const {
  const long d = kernels::total_dim(dims_);
  return {dims_, dims_, apply(Mat::Identity(d, d))};
}

}  // namespace qkz
