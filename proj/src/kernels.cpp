#include "qkz/kernels.hpp"

#include <atomic>

#include "qkz/error.hpp"

namespace qkz::kernels {

std::vector<long> strides(const std::vector<int>& dims) {
  std::vector<long> st(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) st[k] = st[k + 1] * dims[k + 1];
  return st;
}

long total_dim(const std::vector<int>& dims) {
  long d = 1;
  for (int x : dims) d *= x;
  return d;
}

namespace {

struct PairPlan {
  std::vector<long> bases;  // flat indices with digits i, j set to zero
  std::vector<long> offs;   // offset of local index (a_i, a_j)
};

PairPlan plan_sites(const std::vector<int>& sites, const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  for (int s : sites)
    if (s < 0 || s >= n) throw Error(ErrorKind::ShapeMismatch, "site index out of range");
  if (sites.size() == 2 && sites[0] == sites[1]) throw Error(ErrorKind::ShapeMismatch, "pair sites coincide");
  const auto st = strides(dims);
  PairPlan p;
  p.offs = {0};
  for (int s : sites) {
    std::vector<long> next;
    next.reserve(p.offs.size() * dims[s]);
    for (long o : p.offs)
      for (int a = 0; a < dims[s]; ++a) next.push_back(o + a * st[s]);
    p.offs.swap(next);
  }
  std::vector<bool> skip(n, false);
  for (int s : sites) skip[s] = true;
  p.bases = {0};
  for (int k = 0; k < n; ++k) {
    if (skip[k]) continue;
    std::vector<long> next;
    next.reserve(p.bases.size() * dims[k]);
    for (long b : p.bases)
      for (int a = 0; a < dims[k]; ++a) next.push_back(b + a * st[k]);
    p.bases.swap(next);
  }
  return p;
}

void check_rows(const Mat& x, const std::vector<int>& dims) {
  if (x.rows() != total_dim(dims)) throw Error(ErrorKind::ShapeMismatch, "state rows do not match site dims");
}

void local_column(const Mat& op, const PairPlan& p, const std::complex<double>* in, std::complex<double>* out,
                  std::vector<std::complex<double>>& buf) {
  const long k = static_cast<long>(p.offs.size());
  for (long b : p.bases) {
    for (long c = 0; c < k; ++c) buf[c] = in[b + p.offs[c]];
    for (long r = 0; r < k; ++r) {
      std::complex<double> acc{0.0, 0.0};
      for (long c = 0; c < k; ++c) acc += op(r, c) * buf[c];
      out[b + p.offs[r]] = acc;
    }
  }
}

Mat apply_local(const Mat& op, const std::vector<int>& sites, const std::vector<int>& dims, const Mat& x,
                bool parallel) {
  check_rows(x, dims);
  PairPlan p = plan_sites(sites, dims);
  const long k = static_cast<long>(p.offs.size());
  if (op.rows() != k || op.cols() != k) throw Error(ErrorKind::ShapeMismatch, "local operator has wrong size");
  Mat y(x.rows(), x.cols());
  const long ncol = x.cols();
  if (parallel) {
#if defined(QKZ_HAVE_OPENMP)
#pragma omp parallel
    {
      std::vector<std::complex<double>> buf(k);
#pragma omp for schedule(static)
      for (long c = 0; c < ncol; ++c) local_column(op, p, x.col(c).data(), y.col(c).data(), buf);
    }
    return y;
#endif
  }
  std::vector<std::complex<double>> buf(k);
  for (long c = 0; c < ncol; ++c) local_column(op, p, x.col(c).data(), y.col(c).data(), buf);
  return y;
}

std::vector<long> permutation_map(const std::vector<int>& s, const std::vector<int>& dims) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(s.size()) != n) throw Error(ErrorKind::ShapeMismatch, "permutation length mismatch");
  std::vector<int> out_dims(n);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (s[i] < 0 || s[i] >= n || seen[s[i]]) throw Error(ErrorKind::ShapeMismatch, "not a permutation");
    seen[s[i]] = true;
    out_dims[s[i]] = dims[i];
  }
  const auto st_in = strides(dims);
  const auto st_out = strides(out_dims);
  const long total = total_dim(dims);
  std::vector<long> map(total);
  for (long f = 0; f < total; ++f) {
    long rem = f, g = 0;
    for (int i = 0; i < n; ++i) {
      long digit = rem / st_in[i];
      rem %= st_in[i];
      g += digit * st_out[s[i]];
    }
    map[f] = g;
  }
  return map;
}

Mat apply_perm(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x, bool parallel) {
  check_rows(x, dims);
  const auto map = permutation_map(s, dims);
  Mat y(x.rows(), x.cols());
  const long ncol = x.cols();
  const long rows = x.rows();
  if (parallel) {
#if defined(QKZ_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
    for (long c = 0; c < ncol; ++c)
      for (long f = 0; f < rows; ++f) y(map[f], c) = x(f, c);
    return y;
#endif
  }
  for (long c = 0; c < ncol; ++c)
    for (long f = 0; f < rows; ++f) y(map[f], c) = x(f, c);
  return y;
}

#if defined(QKZ_HAVE_OPENMP)
std::atomic<bool> g_parallel{true};
#else
std::atomic<bool> g_parallel{false};
#endif

}  // namespace

Mat apply_pair_serial(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {i, j}, dims, x, false);
}
Mat apply_pair_parallel(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {i, j}, dims, x, true);
}
Mat apply_site_serial(const Mat& op, int k, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {k}, dims, x, false);
}
Mat apply_site_parallel(const Mat& op, int k, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {k}, dims, x, true);
}
Mat apply_permutation_serial(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x) {
  return apply_perm(s, dims, x, false);
}
Mat apply_permutation_parallel(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x) {
  return apply_perm(s, dims, x, true);
}

void set_parallel(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

Mat apply_pair(const Mat& op, int i, int j, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {i, j}, dims, x, parallel_enabled());
}
Mat apply_site(const Mat& op, int k, const std::vector<int>& dims, const Mat& x) {
  return apply_local(op, {k}, dims, x, parallel_enabled());
}
Mat apply_permutation(const std::vector<int>& s, const std::vector<int>& dims, const Mat& x) {
  return apply_perm(s, dims, x, parallel_enabled());
}

}  // namespace qkz::kernels
