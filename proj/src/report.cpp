#include "qkz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qkz {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_cplx(cplx z) { return fmt_double(z.real()) + "," + fmt_double(z.imag()); }

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return fmt_double(x);
  return x;
}

void write_string(std::ostringstream& os, const std::string& s) {
  // nlohmann's own escaping for strings.
  os << Json(s).dump();
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const std::string pad(indent > 0 ? static_cast<std::size_t>(indent * (depth + 1)) : 0, ' ');
  const std::string pad_end(indent > 0 ? static_cast<std::size_t>(indent * depth) : 0, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << "," << nl;
        first = false;
        os << pad;
        write_string(os, it.key());
        os << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      os << nl << pad_end << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[" << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << "," << nl;
        first = false;
        os << pad;
        write(os, v, indent, depth + 1);
      }
      os << nl << pad_end << "]";
      return;
    }
    case Json::value_t::number_float: os << fmt_double(j.get<double>()); return;
    case Json::value_t::string: write_string(os, j.get<std::string>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

Json to_json(const VerificationReport& r) {
  Json j = Json::object();
  j["name"] = r.name;
  j["params"] = r.params;
  j["residual"] = number(r.residual);
  j["tolerance"] = number(r.tolerance);
  j["passed"] = r.passed;
  if (!r.extracted_scalars.empty()) {
    Json xs = Json::array();
    for (const auto& s : r.extracted_scalars)
      xs.push_back({{"name", s.name}, {"re", number(s.value.real())}, {"im", number(s.value.imag())}});
    j["extracted_scalars"] = xs;
  }
  if (!r.note.empty()) j["note"] = r.note;
  j["wall_ms"] = number(r.wall_ms);
  return j;
}

Json matrix_to_json(const Mat& m, const std::vector<int>& dims_out, const std::vector<int>& dims_in) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  return {{"site_dims_out", dims_out}, {"site_dims_in", dims_in}, {"data", data}};
}

void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const VerificationReport& a, const VerificationReport& b) {
    if (a.name != b.name) return a.name < b.name;
    return dump_json(a.params, -1) < dump_json(b.params, -1);
  });
}

std::string format_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-4s %.3e / %.1e  ", r.passed ? "ok" : "FAIL", r.residual, r.tolerance);
    os << buf << r.name << " " << dump_json(r.params, -1);
    for (const auto& s : r.extracted_scalars) os << "  " << s.name << "=" << fmt_cplx(s.value);
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << "\n";
  }
  return os.str();
}

cplx Rng::normal_pair() {
  // Box-Muller on our own uniforms.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

cplx Rng::zeta(double lo, double hi) {
  double mod = uniform(lo, hi);
  double arg = uniform(-std::numbers::pi, std::numbers::pi);
  return std::polar(mod, arg);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer over the combination.
  std::uint64_t z = seed ^ (h + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace qkz
