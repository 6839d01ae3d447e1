#pragma once

#include <vector>

namespace qkz {

enum class Algebra { A1, Al };

/// Root data of sl(l+1) needed for the grading element x and for epsilon.
struct LieData {
  Algebra algebra = Algebra::A1;
  int rank = 1;
  std::vector<int> kac_labels;          // a_0 .. a_l
  std::vector<int> d;                   // d_1 .. d_l
  std::vector<std::vector<double>> b;   // inverse Cartan matrix
  double theta_norm = 2.0;              // (theta|theta)
  int dual_coxeter = 2;

  static LieData sl2();
  static LieData sl(int l);  // sl(l+1)

  /// (theta|theta) h^vee / s.
  double epsilon(int s) const { return theta_norm * dual_coxeter / s; }

  /// Coefficients c_j of x = sum_j c_j h_j for the grading (s_0, ..., s_l).
  std::vector<double> x_coefficients(const std::vector<int>& grading) const;
};

}  // namespace qkz
