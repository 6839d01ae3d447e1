// Acceptance run: one PASS/FAIL line per criterion. Every criterion gathers
// reports from the library and compares each residual against the criterion's
// own threshold, independent of the tolerance stored in the report.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qkz/engine.hpp"
#include "qkz/idsuite.hpp"
#include "qkz/reduction.hpp"
#include "qkz/suite.hpp"

using namespace qkz;

namespace {

constexpr KindTriple kTriples[] = {
    {SiteKind::V, SiteKind::V, SiteKind::V},             {SiteKind::V, SiteKind::V, SiteKind::Vdual},
    {SiteKind::V, SiteKind::Vdual, SiteKind::V},         {SiteKind::V, SiteKind::Vdual, SiteKind::Vdual},
    {SiteKind::Vdual, SiteKind::V, SiteKind::V},         {SiteKind::Vdual, SiteKind::V, SiteKind::Vdual},
    {SiteKind::Vdual, SiteKind::Vdual, SiteKind::V},     {SiteKind::Vdual, SiteKind::Vdual, SiteKind::Vdual}};

struct Tally {
  int count = 0;
  int failed = 0;
  double worst = 0.0;
  std::string first_failure;

  void add(const VerificationReport& r, double limit) {
    ++count;
    const bool ok = r.residual <= limit;
    if (r.residual > worst || r.residual != r.residual) worst = r.residual;
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = r.name + " " + dump_json(r.params, -1);
    }
  }
  void add(const std::vector<VerificationReport>& rs, double limit) {
    for (const auto& r : rs) add(r, limit);
  }
  void fail(const std::string& why) {
    ++count;
    ++failed;
    if (first_failure.empty()) first_failure = why;
  }
};

CheckContext base_context(int m, Normalization nm = Normalization::HW) {
  CheckContext c;
  c.ctx.q = 0.7;
  c.m = m;
  c.norm = nm;
  c.samples = 5;
  c.seed = 20240611;
  c.alpha = {0.25, -0.1};
  return c;
}

ReductionCase reduction_case(ReductionMode mode, int n, int m, std::uint64_t seed) {
  ReductionCase rc;
  rc.mode = mode;
  rc.n = n;
  rc.check = base_context(m, Normalization::Kappa);
  rc.check.seed = seed;
  rc.check.samples = 1;
  return rc;
}

void c1(Tally& t) {
  for (int m : {1, 2, 3}) {
    const CheckContext c = base_context(m);
    t.add(check_rep_displayed_dual(c), 1e-12);
    t.add(check_rep_relations(c, SiteKind::V), 1e-12);
    t.add(check_rep_relations(c, SiteKind::Vdual), 1e-12);
    t.add(check_hopf(c), 1e-12);
  }
}

void c2(Tally& t) {
  for (int m : {1, 2, 3}) t.add(check_self_dual(base_context(m)), 1e-12);
}

void c3(Tally& t) {
  for (int m : {1, 2, 3})
    for (GradingChoice g : {GradingChoice{1, 1}, GradingChoice{1, 0}}) {
      CheckContext c = base_context(m);
      c.grading = g;
      t.add(check_double_dual(c), 1e-12);
    }
}

void c4(Tally& t) {
  for (int m : {1, 2, 3})
    for (KindPair k : kAllPairs) t.add(check_solver(base_context(m), k), 1e-11);
  t.add(check_degenerate_scan(base_context(1)), 0.0);
}

void c5(Tally& t) {
  for (int m : {1, 2, 3})
    for (Normalization nm : {Normalization::HW, Normalization::Kappa})
      for (KindPair k : kAllPairs) {
        const CheckContext c = base_context(m, nm);
        t.add(check_unitarity(c, k), 1e-10);
        t.add(check_initial_condition(c, k), 1e-12);
      }
}

void c6(Tally& t) {
  for (int m : {1, 2})
    for (const KindTriple& k : kTriples) {
      CheckContext c = base_context(m);
      c.samples = 20;
      t.add(check_ybe(c, k), 1e-9);
    }
}

void c7(Tally& t) {
  for (int m : {1, 2, 3}) {
    const CheckContext c = base_context(m);
    t.add(check_kappa_unit(c), 1e-10);
    t.add(check_kappa_inversion(c), 1e-10);
    t.add(check_difference_sl2(c), 1e-10);
    t.add(check_rho0_ratio_sl2(c), 1e-10);
    if (m % 2 == 0) t.add(check_kappa_even_rational(c), 1e-10);
  }
  CheckContext c4 = base_context(4);
  t.add(check_kappa_even_rational(c4), 1e-10);
  for (int l : {1, 2, 3}) {
    const CheckContext c = base_context(1);
    t.add(check_difference_sllpo(c, l), 1e-10);
    t.add(check_kappa_sllpo(c, l), 1e-10);
    t.add(check_rho0_ratio_sllpo(c, l), 1e-10);
  }
}

void c8(Tally& t) {
  for (int m : {1, 2, 3})
    for (Normalization nm : {Normalization::HW, Normalization::Kappa})
      for (const auto& r : check_crossing(base_context(m, nm))) {
        if (r.name == "crossing.proportionality") t.add(r, 1e-9);
        else if (r.name == "crossing.constancy" || r.name == "crossing.kappa_double_shift") t.add(r, 1e-8);
        else t.add(r, r.tolerance);
      }
}

void c9(Tally& t) {
  for (int m : {1, 2}) {
    Rng rng(99 + m);
    CheckContext c = base_context(m);
    c.alpha = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    for (KindPair k : kAllPairs) {
      t.add(check_invariance_X(c, k), 1e-11);
      t.add(check_invariance_A(c, k), 1e-11);
    }
    t.add(check_invariance_Xtilde(c), 1e-11);
  }
}

void c10(Tally& t) {
  for (int m : {1, 2})
    for (auto mode : {ReductionMode::SelfDual, ReductionMode::General})
      for (int n : {1, 2}) {
        const ReductionCase rc = reduction_case(mode, n, m, 7);
        Rng rng(1000 + 10 * m + n);
        const ChainSpec ch = generic_chain(rc, rng);
        for (int i = 0; i < ch.N(); ++i) t.add(check_lambda_forms(ch, i), 1e-10);
        for (int j = 0; j < ch.N(); ++j)
          for (int k = j + 1; k < ch.N(); ++k) {
            t.add(check_ddr(ch, j, k), 1e-11);
            t.add(check_qkz_compatibility(ch, j, k), 1e-9);
          }
      }
}

void c11(Tally& t) {
  for (int m : {1, 2})
    for (int n : {1, 2, 3})
      for (std::uint64_t seed = 1; seed <= 10; ++seed)
        for (const auto& r : theorem_check_selfdual(reduction_case(ReductionMode::SelfDual, n, m, seed)))
          t.add(r, r.name == "theorem.selfdual.end_to_end" ? 1e-8 : 1e-9);
}

void c12(Tally& t) {
  for (int m : {1, 2})
    for (int n : {1, 2})
      for (std::uint64_t seed = 1; seed <= 3; ++seed)
        for (const auto& r : theorem_check_general(reduction_case(ReductionMode::General, n, m, seed)))
          t.add(r, r.name == "theorem.general.end_to_end" ? 1e-8 : 1e-9);
}

void c13(Tally& t) {
  for (int m : {1, 2})
    for (auto mode : {ReductionMode::SelfDual, ReductionMode::General}) {
      ReductionCase rc = reduction_case(mode, 2, m, 5);
      rc.check.samples = 3;
      for (int i = 0; i + 1 < rc.n; ++i) t.add(check_rpr(rc, i), 1e-9);
    }
}

void c14(Tally& t) {
  RunConfig cfg;
  cfg.m = 2;
  cfg.samples = 3;
  cfg.seed = 314159;
  const std::string a = render_reports(run_suite(cfg), "json");
  const std::string b = render_reports(run_suite(cfg), "json");
  if (a.size() < 1000) t.fail("suite output is empty");
  else if (a != b) t.fail("suite output differs between runs");
  else ++t.count;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Tally&)>>> criteria = {
      {"representation fidelity", c1},
      {"almost self-duality", c2},
      {"double dual", c3},
      {"intertwiner solver", c4},
      {"unitarity and initial condition", c5},
      {"yang-baxter", c6},
      {"scalar identities", c7},
      {"crossing", c8},
      {"invariances", c9},
      {"qkz machinery", c10},
      {"reduction, self-dual case", c11},
      {"reduction, general case", c12},
      {"exchange relations", c13},
      {"determinism", c14},
  };
  int failed = 0, idx = 0;
  for (const auto& [label, run] : criteria) {
    ++idx;
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(t);
    } catch (const std::exception& e) {
      t.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = t.failed == 0 && t.count > 0;
    if (!ok) ++failed;
    std::printf("%s %2d %-32s reports=%-4d worst=%.3e  (%.1fs)", ok ? "PASS" : "FAIL", idx, label, t.count, t.worst,
                secs);
    if (!ok) std::printf("  first failure: %s", t.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
