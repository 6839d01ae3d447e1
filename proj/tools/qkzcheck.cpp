// qkzcheck: runs the verification suite, single checks, R-operator dumps and
// scalar tables.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qkz/suite.hpp"

namespace {

using namespace qkz;

cplx parse_cplx(const std::string& s) {
  std::stringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (in.fail()) throw Error(ErrorKind::Config, "cannot parse complex '" + s + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw Error(ErrorKind::Config, "complex values are written re,im");
  }
  return {re, im};
}

SiteKind parse_kind(const std::string& s) {
  if (s == "V") return SiteKind::V;
  if (s == "V*" || s == "Vdual") return SiteKind::Vdual;
  throw Error(ErrorKind::Config, "site kind must be V or V*");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, "cannot open " + out);
  f << text;
}

int exit_for(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of R-operator and qKZ reduction identities"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string q = "0.7", norm = "both", check, k1 = "V", k2 = "V", z1 = "1", z2 = "1", zs = "0.5";
  std::vector<std::string> alphas{"0"};
  double tol = 0.0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "spin: module dimension m+1");
    sub->add_option("--l", cfg.l, "rank for the sl(l+1) scalar identities");
    sub->add_option("--n", cfg.n, "reduced chain length");
    sub->add_option("--q", q, "deformation parameter as re,im");
    sub->add_option("--s0", cfg.s0, "grading s0");
    sub->add_option("--s1", cfg.s1, "grading s1");
    sub->add_option("--alpha", alphas, "twist parameters as re,im (repeatable)");
    sub->add_option("--seed", cfg.seed, "64-bit seed");
    sub->add_option("--tol", tol, "override every tolerance");
    sub->add_option("--trunc", cfg.trunc, "product truncation terms");
    sub->add_option("--samples", cfg.samples, "random samples per check");
    sub->add_option("--norm", norm, "hw, kappa or both");
    sub->add_option("--format", cfg.format, "json or text");
    sub->add_option("--out", cfg.out, "write output to a file");
    sub->add_flag("--timing", cfg.timing, "record wall_ms (breaks byte-identical output)");
  };

  auto* suite = app.add_subcommand("suite", "run every check");
  common(suite);
  auto* verify = app.add_subcommand("verify", "run one check group");
  common(verify);
  verify->add_option("check", check, "check group")->required();
  auto* list = app.add_subcommand("list", "list check groups");
  auto* rmat = app.add_subcommand("rmat", "dump an R-operator");
  common(rmat);
  rmat->add_option("--k1", k1, "kind of the first site (V or V*)");
  rmat->add_option("--k2", k2, "kind of the second site");
  rmat->add_option("--z1", z1, "first spectral parameter re,im");
  rmat->add_option("--z2", z2, "second spectral parameter re,im");
  bool checked = false;
  rmat->add_flag("--check", checked, "dump the swapped form P R");
  auto* scalars = app.add_subcommand("scalars", "tabulate rho0, kappa and the difference constants");
  common(scalars);
  scalars->add_option("--z", zs, "argument z re,im");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : check_names()) std::cout << n << "\n";
      return 0;
    }
    cfg.q = parse_cplx(q);
    cfg.alphas.clear();
    for (const auto& a : alphas) cfg.alphas.push_back(parse_cplx(a));
    if (tol != 0.0) cfg.tol = tol;
    if (norm == "hw") cfg.norm = NormChoice::HW;
    else if (norm == "kappa") cfg.norm = NormChoice::Kappa;
    else if (norm == "both") cfg.norm = NormChoice::Both;
    else throw Error(ErrorKind::Config, "norm must be hw, kappa or both");

    if (suite->parsed()) {
      cfg.command = "suite";
      const auto reports = run_suite(cfg);
      emit(render_reports(reports, cfg.format), cfg.out);
      return exit_for(reports);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      const auto reports = run_check(cfg, check);
      emit(render_reports(reports, cfg.format), cfg.out);
      return exit_for(reports);
    }
    if (rmat->parsed()) {
      cfg.validate();
      const Normalization nm = cfg.norm == NormChoice::HW ? Normalization::HW : Normalization::Kappa;
      RFamily f = cfg.context(nm).family();
      const SiteKind a = parse_kind(k1), b = parse_kind(k2);
      const RResult r = f.result(a, parse_cplx(z1), b, parse_cplx(z2));
      const int d = f.dim();
      Json j = matrix_to_json(checked ? r.Rcheck : r.R, {d, d}, {d, d});
      j["kinds"] = std::string(kind_name(a)) + "|" + kind_name(b);
      j["norm"] = norm_name(nm);
      j["nullspace_gap"] = r.nullspace_gap;
      j["intertwining_residual"] = r.intertwining_residual;
      emit(dump_json(j) + "\n", cfg.out);
      return 0;
    }
    if (scalars->parsed()) {
      cfg.validate();
      const QContext ctx = cfg.qcontext();
      const cplx z = parse_cplx(zs);
      Json j = Json::object();
      auto put = [&](const char* key, const std::function<cplx()>& f) {
        try {
          const cplx v = f();
          j[key] = Json::array({v.real(), v.imag()});
        } catch (const Error& e) {
          if (is_config_error(e.kind())) throw;
          j[key] = std::string(e.what());
        }
      };
      j["z"] = Json::array({z.real(), z.imag()});
      j["m"] = cfg.m;
      j["l"] = cfg.l;
      put("rho0_sl2", [&] { return rho0_sl2(cfg.m, z, ctx); });
      put("kappa_sl2", [&] { return kappa_sl2(cfg.m, z, ctx); });
      put("rho0_ratio_sl2", [&] { return rho0_ratio_sl2(cfg.m, z, ctx); });
      put("d_sl2", [&] { return difference_probe_sl2(cfg.m, z, ctx).all_inverted; });
      if (cfg.m % 2 == 0) put("kappa_sl2_even_rational", [&] { return kappa_sl2_even_rational(cfg.m / 2, z, ctx); });
      put("rho0_sllpo", [&] { return rho0_sllpo(cfg.l, z, ctx); });
      put("kappa_sllpo", [&] { return kappa_sllpo(cfg.l, z, ctx); });
      put("rho0_ratio_sllpo", [&] { return rho0_ratio_sllpo(cfg.l, z, ctx); });
      put("d_sllpo", [&] { return difference_probe_sllpo(cfg.l, z, ctx).shifted_inverted; });
      emit(dump_json(j) + "\n", cfg.out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "qkzcheck: " << e.what() << "\n";
    return is_config_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "qkzcheck: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
