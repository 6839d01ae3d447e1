#include "qkz/suite.hpp"

#include <exception>
#include <limits>

namespace qkz {

bool is_config_error(ErrorKind k) {
  return k == ErrorKind::Config || k == ErrorKind::RootOfUnity || k == ErrorKind::DegenerateQ ||
         k == ErrorKind::UnknownCheck;
}

QContext RunConfig::qcontext() const {
  QContext c;
  c.q = q;
  c.trunc_terms = trunc;
  return c;
}

void RunConfig::validate() const {
  qcontext().validate();
  GradingChoice{s0, s1}.validate();
  if (m < 1 || m > 6) throw Error(ErrorKind::Config, "m must be in 1..6");
  if (l < 1 || l > 8) throw Error(ErrorKind::Config, "l must be in 1..8");
  if (n < 1 || n > 3) throw Error(ErrorKind::Config, "n must be in 1..3");
  if (samples < 1) throw Error(ErrorKind::Config, "samples must be positive");
  if (trunc < 10) throw Error(ErrorKind::Config, "trunc must be at least 10");
  if (alphas.empty()) throw Error(ErrorKind::Config, "alpha list is empty");
  if (tol && !(*tol > 0.0)) throw Error(ErrorKind::Config, "tol must be positive");
  if (format != "json" && format != "text") throw Error(ErrorKind::Config, "format must be json or text");
}

CheckContext RunConfig::context(Normalization nm) const {
  CheckContext c;
  c.ctx = qcontext();
  c.grading = {s0, s1};
  c.m = m;
  c.alpha = alphas.front();
  c.seed = seed;
  c.samples = samples;
  c.norm = nm;
  c.tol_override = tol;
  c.timing = timing;
  return c;
}

std::vector<Normalization> RunConfig::norms() const {
  switch (norm) {
    case NormChoice::HW: return {Normalization::HW};
    case NormChoice::Kappa: return {Normalization::Kappa};
    default: return {Normalization::HW, Normalization::Kappa};
  }
}

namespace {

using R = std::vector<VerificationReport>;

Job one(std::function<VerificationReport()> f) {
  return [f] { return R{f()}; };
}

constexpr KindTriple kAllTriples[] = {
    {SiteKind::V, SiteKind::V, SiteKind::V},             {SiteKind::V, SiteKind::V, SiteKind::Vdual},
    {SiteKind::V, SiteKind::Vdual, SiteKind::V},         {SiteKind::V, SiteKind::Vdual, SiteKind::Vdual},
    {SiteKind::Vdual, SiteKind::V, SiteKind::V},         {SiteKind::Vdual, SiteKind::V, SiteKind::Vdual},
    {SiteKind::Vdual, SiteKind::Vdual, SiteKind::V},     {SiteKind::Vdual, SiteKind::Vdual, SiteKind::Vdual}};

ReductionCase make_case(const RunConfig& cfg, ReductionMode mode) {
  ReductionCase rc;
  rc.mode = mode;
  rc.n = cfg.n;
  rc.check = cfg.context(Normalization::Kappa);
  return rc;
}

// Engine checks on a chain with generic parameters and the kinds of the case.
R engine_reports(const RunConfig& cfg, ReductionMode mode, const std::string& what) {
  const ReductionCase rc = make_case(cfg, mode);
  Rng rng = rc.check.rng(std::string("engine.chain") + mode_name(mode));
  const ChainSpec chain = generic_chain(rc, rng);
  const int N = chain.N();
  R out;
  auto tag = [&](VerificationReport r) {
    r.params["mode"] = mode_name(mode);
    r.params["seed"] = cfg.seed;
    r.params["q"] = Json::array({cfg.q.real(), cfg.q.imag()});
    r.params["s0"] = cfg.s0;
    r.params["s1"] = cfg.s1;
    if (cfg.tol) r.tolerance = *cfg.tol;
    r.finalize();
    out.push_back(std::move(r));
  };
  if (what == "lambda_forms")
    for (int i = 0; i < N; ++i) tag(check_lambda_forms(chain, i));
  if (what == "ddr")
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        if (j != k) tag(check_ddr(chain, j, k));
  if (what == "compatibility")
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) tag(check_qkz_compatibility(chain, i, j));
  if (what == "rd_exchange") tag(check_rd_exchange(chain, cfg.seed, cfg.samples));
  if (what == "braid") tag(check_braid_welldefined(chain, cfg.seed, cfg.samples));
  return out;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> v = {
      "scalars",   "rep",           "solver",        "degenerate_scan",  "kappa_entry",     "unitarity",
      "initial_condition", "ratio_dependence", "ybe", "crossing",        "invariance",      "lambda_forms",
      "ddr",       "compatibility", "rd_exchange",   "braid",            "theorem_selfdual", "theorem_general",
      "rpr",       "scaling"};
  return v;
}

}  // namespace

std::vector<std::string> check_names() { return names(); }

std::vector<Job> jobs_for(const RunConfig& cfg, const std::string& name) {
  std::vector<Job> jobs;
  const CheckContext hw = cfg.context(Normalization::HW);
  const int l = cfg.l;
  if (name == "scalars") {
    jobs.push_back(one([=] { return check_kappa_unit(hw); }));
    jobs.push_back(one([=] { return check_kappa_inversion(hw); }));
    jobs.push_back(one([=] { return check_difference_sl2(hw); }));
    jobs.push_back(one([=] { return check_rho0_ratio_sl2(hw); }));
    if (cfg.m % 2 == 0) jobs.push_back(one([=] { return check_kappa_even_rational(hw); }));
    jobs.push_back(one([=] { return check_difference_sllpo(hw, l); }));
    jobs.push_back(one([=] { return check_kappa_sllpo(hw, l); }));
    jobs.push_back(one([=] { return check_rho0_ratio_sllpo(hw, l); }));
    jobs.push_back(one([=] { return check_fseries(hw, l); }));
  } else if (name == "rep") {
    jobs.push_back(one([=] { return check_rep_displayed_dual(hw); }));
    jobs.push_back(one([=] { return check_rep_relations(hw, SiteKind::V); }));
    jobs.push_back(one([=] { return check_rep_relations(hw, SiteKind::Vdual); }));
    jobs.push_back(one([=] { return check_hopf(hw); }));
    jobs.push_back(one([=] { return check_self_dual(hw); }));
    jobs.push_back(one([=] { return check_double_dual(hw); }));
  } else if (name == "solver") {
    for (KindPair k : kAllPairs) jobs.push_back(one([=] { return check_solver(hw, k); }));
  } else if (name == "degenerate_scan") {
    jobs.push_back(one([=] { return check_degenerate_scan(hw); }));
  } else if (name == "kappa_entry") {
    if (cfg.m % 2 == 0) jobs.push_back(one([=] { return check_kappa_entry(hw); }));
  } else if (name == "unitarity" || name == "initial_condition" || name == "ratio_dependence") {
    for (Normalization nm : cfg.norms()) {
      const CheckContext c = cfg.context(nm);
      for (KindPair k : kAllPairs) {
        if (name == "unitarity") jobs.push_back(one([=] { return check_unitarity(c, k); }));
        if (name == "initial_condition") jobs.push_back(one([=] { return check_initial_condition(c, k); }));
        if (name == "ratio_dependence") jobs.push_back(one([=] { return check_ratio_dependence(c, k); }));
      }
    }
  } else if (name == "ybe") {
    for (Normalization nm : cfg.norms()) {
      const CheckContext c = cfg.context(nm);
      for (KindTriple k : kAllTriples) jobs.push_back(one([=] { return check_ybe(c, k); }));
    }
  } else if (name == "crossing") {
    for (Normalization nm : cfg.norms()) {
      const CheckContext c = cfg.context(nm);
      jobs.push_back([=] { return check_crossing(c); });
    }
  } else if (name == "invariance") {
    for (Normalization nm : cfg.norms()) {
      const CheckContext base = cfg.context(nm);
      for (KindPair k : kAllPairs) {
        jobs.push_back(one([=] {
          VerificationReport r = check_invariance_X(base, k);
          r.params["norm"] = norm_name(base.norm);
          return r;
        }));
        for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
          CheckContext c = base;
          c.alpha = cfg.alphas[a];
          jobs.push_back(one([=] {
            VerificationReport r = check_invariance_A(c, k);
            r.params["norm"] = norm_name(c.norm);
            r.params["alpha"] = Json::array({c.alpha.real(), c.alpha.imag()});
            return r;
          }));
        }
      }
      jobs.push_back(one([=] {
        VerificationReport r = check_invariance_Xtilde(base);
        r.params["norm"] = norm_name(base.norm);
        return r;
      }));
    }
  } else if (name == "lambda_forms" || name == "ddr" || name == "compatibility" || name == "rd_exchange" ||
             name == "braid") {
    for (ReductionMode mode : {ReductionMode::SelfDual, ReductionMode::General})
      jobs.push_back([=] { return engine_reports(cfg, mode, name); });
  } else if (name == "theorem_selfdual") {
    jobs.push_back([=] { return theorem_check_selfdual(make_case(cfg, ReductionMode::SelfDual)); });
  } else if (name == "theorem_general") {
    jobs.push_back([=] { return theorem_check_general(make_case(cfg, ReductionMode::General)); });
  } else if (name == "rpr") {
    for (ReductionMode mode : {ReductionMode::SelfDual, ReductionMode::General})
      for (int i = 0; i + 1 < cfg.n; ++i) jobs.push_back(one([=] { return check_rpr(make_case(cfg, mode), i); }));
  } else if (name == "scaling") {
    for (ReductionMode mode : {ReductionMode::SelfDual, ReductionMode::General})
      jobs.push_back(one([=] { return check_scaling_covariance(make_case(cfg, mode)); }));
  } else {
    throw Error(ErrorKind::UnknownCheck, "unknown check '" + name + "'");
  }
  return jobs;
}

std::vector<VerificationReport> run_jobs(const std::vector<Job>& jobs) {
  std::vector<R> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < count; ++j) {
    try {
      slots[j] = jobs[j]();
    } catch (const Error& e) {
      if (is_config_error(e.kind())) {
        errors[j] = std::current_exception();
      } else {
        VerificationReport r;
        r.name = "error";
        r.params = {{"job", j}};
        r.residual = std::numeric_limits<double>::infinity();
        r.note = e.what();
        r.finalize();
        slots[j] = {r};
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<VerificationReport> all;
  for (auto& s : slots)
    for (auto& r : s) all.push_back(std::move(r));
  sort_reports(all);
  return all;
}

std::vector<VerificationReport> run_check(const RunConfig& cfg, const std::string& name) {
  cfg.validate();
  return run_jobs(jobs_for(cfg, name));
}

std::vector<VerificationReport> run_suite(const RunConfig& cfg) {
  cfg.validate();
  std::vector<Job> jobs;
  for (const auto& name : names()) {
    auto js = jobs_for(cfg, name);
    jobs.insert(jobs.end(), js.begin(), js.end());
  }
  return run_jobs(jobs);
}

std::string render_reports(const std::vector<VerificationReport>& reports, const std::string& format) {
  if (format == "text") return format_text(reports);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return dump_json(arr) + "\n";
}

}  // namespace qkz
