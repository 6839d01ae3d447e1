#include "qkz/lie.hpp"

#include "qkz/error.hpp"

namespace qkz {

LieData LieData::sl2() { return sl(1); }

LieData LieData::sl(int l) {
  if (l < 1) throw Error(ErrorKind::Config, "sl(l+1) needs l >= 1");
  LieData g;
  g.algebra = l == 1 ? Algebra::A1 : Algebra::Al;
  g.rank = l;
  g.kac_labels.assign(l + 1, 1);
  g.d.assign(l, 1);
  g.b.assign(l, std::vector<double>(l, 0.0));
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j)
      g.b[i - 1][j - 1] = std::min(i, j) - static_cast<double>(i * j) / (l + 1);
  g.theta_norm = 2.0;
  g.dual_coxeter = l + 1;
  return g;
}

std::vector<double> LieData::x_coefficients(const std::vector<int>& grading) const {
  if (static_cast<int>(grading.size()) != rank + 1)
    throw Error(ErrorKind::Config, "grading needs rank+1 entries");
  int s = 0;
  for (int i = 0; i <= rank; ++i) s += kac_labels[i] * grading[i];
  if (s < 1) throw Error(ErrorKind::Config, "grading total s must be >= 1");
  std::vector<double> c(rank, 0.0);
  for (int i = 0; i < rank; ++i) {
    double w = 2.0 * d[i] - theta_norm * dual_coxeter * grading[i + 1] / static_cast<double>(s);
    for (int j = 0; j < rank; ++j) c[j] -= w * b[i][j];
  }
  return c;
}

}  // namespace qkz
