#pragma once

// Suite orchestration shared by the command-line tool and the tests.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkz/reduction.hpp"

namespace qkz {

enum class NormChoice { HW, Kappa, Both };

struct RunConfig {
  std::string command = "suite";
  int m = 1;
  int l = 1;
  int n = 2;
  cplx q{0.7, 0.0};
  int s0 = 1;
  int s1 = 1;
  std::vector<cplx> alphas{cplx{0.0, 0.0}};
  std::uint64_t seed = 42;
  std::optional<double> tol;
  int trunc = 400;
  int samples = 10;
  NormChoice norm = NormChoice::Both;
  std::string format = "json";
  std::string out;
  bool timing = false;

  /// Throws Error(Config | RootOfUnity | DegenerateQ) on invalid input.
  void validate() const;
  QContext qcontext() const;
  CheckContext context(Normalization norm) const;
  std::vector<Normalization> norms() const;
};

using Job = std::function<std::vector<VerificationReport>()>;

/// Registered check groups in suite order.
std::vector<std::string> check_names();
/// Jobs for one group; throws UnknownCheck.
std::vector<Job> jobs_for(const RunConfig& cfg, const std::string& name);
/// Runs jobs (concurrently when OpenMP is on) and sorts the reports.
std::vector<VerificationReport> run_jobs(const std::vector<Job>& jobs);
std::vector<VerificationReport> run_check(const RunConfig& cfg, const std::string& name);
std::vector<VerificationReport> run_suite(const RunConfig& cfg);

/// True for error kinds that mean bad input rather than a failed check.
bool is_config_error(ErrorKind k);

/// Rendered report array: JSON (17 significant digits) or text.
std::string render_reports(const std::vector<VerificationReport>& reports, const std::string& format);

}  // namespace qkz
