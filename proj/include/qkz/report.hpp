#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qkz/rsolve.hpp"

namespace qkz {

using Json = nlohmann::json;

struct ExtractedScalar {
  std::string name;
  cplx value;
};

struct VerificationReport {
  std::string name;
  Json params = Json::object();
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double wall_ms = 0.0;
  std::vector<ExtractedScalar> extracted_scalars;
  std::string note;

  /// passed <=> residual <= tolerance (NaN fails).
  void finalize() { passed = residual <= tolerance; }
};

Json to_json(const VerificationReport& r);
Json matrix_to_json(const Mat& m, const std::vector<int>& dims_out, const std::vector<int>& dims_in);

/// Serializes with every floating-point number printed as %.17g; non-finite
/// numbers become the strings "nan", "inf", "-inf".
std::string dump_json(const Json& j, int indent = 2);

/// Reports ordered by name, then by serialized params.
void sort_reports(std::vector<VerificationReport>& reports);
std::string format_text(const std::vector<VerificationReport>& reports);

/// mt19937_64 with a fixed bits-to-double mapping, so streams do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  cplx normal_pair();
  /// Modulus uniform in [lo, hi], argument uniform in [-pi, pi).
  cplx zeta(double lo = 0.5, double hi = 2.0);
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Seed for one named check, derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

std::string fmt_double(double x);
std::string fmt_cplx(cplx z);

}  // namespace qkz
