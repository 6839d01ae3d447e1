#pragma once

// Hot loops of the operator algebra: left application of a two-site (or
// one-site) operator and of a site permutation to a block of state columns.
// Every kernel has a serial reference and an OpenMP version; both use the same
// per-column summation order, so their results are bit-identical.

#include <Eigen/Dense>
#include <vector>

namespace qkz::kernels {

using Mat = Eigen::MatrixXcd;

/// Row-major site strides: flat = sum_k digit_k * stride_k.
std::vector<long> strides(const std::vector<int>& dims);
long total_dim(const std::vector<int>& dims);

/// y = (op acting on sites i, j; identity elsewhere) x. op is indexed
/// (a_i * d_j + a_j), so i > j is allowed and means the reversed embedding.
Mat apply_pair_serial(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x);
Mat apply_pair_parallel(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x);

/// y = (op on site k) x.
Mat apply_site_serial(const Mat& op, int k, const std::vector<int>& dims, const Mat& x);
Mat apply_site_parallel(const Mat& op, int k, const std::vector<int>& dims, const Mat& x);

/// y = P_s x where the object at position i moves to position s[i] (0-based).
/// `dims` are the input site dimensions.
Mat apply_permutation_serial(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x);
Mat apply_permutation_parallel(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x);

/// Runtime switch used by the dispatchers below; defaults to parallel when
/// built with OpenMP.
void set_parallel(bool on);
bool parallel_enabled();

Mat apply_pair(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x);
Mat apply_site(const Mat& op, int k, const std::vector<int>& dims, const Mat& x);
Mat apply_permutation(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x);

}  // namespace qkz::kernels
