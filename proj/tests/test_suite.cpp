#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkz/report.hpp"
#include "qkz/suite.hpp"

using namespace qkz;

TEST_SUITE("suite") {

TEST_CASE("rng stream is fixed") {
  // The standard fixes the 10000th output of mt19937_64 at its default seed.
  Rng a(5489);
  for (int i = 0; i < 9999; ++i) a.bits();
  CHECK(a.bits() == 9981545732273789042ULL);
  Rng b(7), c(7);
  for (int i = 0; i < 5; ++i) CHECK(b.uniform() == c.uniform());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}

TEST_CASE("json numbers round trip and non-finite values become strings") {
  VerificationReport r;
  r.name = "x";
  r.residual = 0.1;
  r.tolerance = std::numeric_limits<double>::infinity();
  r.finalize();
  const Json j = Json::parse(dump_json(to_json(r)));
  CHECK(j["residual"].get<double>() == 0.1);
  CHECK(j["tolerance"].get<std::string>() == "inf");
  r.residual = std::nan("");
  r.finalize();
  CHECK_FALSE(r.passed);
}

TEST_CASE("reports sort by name then params") {
  std::vector<VerificationReport> v(3);
  v[0].name = "b";
  v[1].name = "a";
  v[1].params = {{"m", 2}};
  v[2].name = "a";
  v[2].params = {{"m", 1}};
  sort_reports(v);
  CHECK(v[0].name == "a");
  CHECK(v[0].params["m"] == 1);
  CHECK(v[2].name == "b");
}

TEST_CASE("registry") {
  const auto names = check_names();
  for (const char* want : {"scalars", "ybe", "crossing", "theorem_selfdual", "theorem_general", "rpr"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  RunConfig cfg;
  try {
    jobs_for(cfg, "no_such_check");
    FAIL("unknown check accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownCheck);
    CHECK(is_config_error(e.kind()));
  }
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.q = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
  try {
    cfg.validate();
    FAIL("root of unity accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RootOfUnity);
    CHECK(is_config_error(e.kind()));
  }
  RunConfig bad;
  bad.n = 9;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_FALSE(is_config_error(ErrorKind::DegeneratePoint));
}

TEST_CASE("single group run is deterministic") {
  RunConfig cfg;
  cfg.samples = 2;
  const std::string a = render_reports(run_check(cfg, "scalars"), "json");
  const std::string b = render_reports(run_check(cfg, "scalars"), "json");
  CHECK(a == b);
  for (const auto& r : run_check(cfg, "scalars")) CHECK(r.passed);
}

TEST_CASE("tolerance override fails tight checks") {
  RunConfig cfg;
  cfg.samples = 2;
  cfg.tol = 1e-30;
  const auto reports = run_check(cfg, "unitarity");
  CHECK(std::any_of(reports.begin(), reports.end(), [](const auto& r) { return !r.passed; }));
}

TEST_CASE("norm selection") {
  RunConfig cfg;
  cfg.norm = NormChoice::HW;
  CHECK(cfg.norms() == std::vector<Normalization>{Normalization::HW});
  cfg.norm = NormChoice::Both;
  CHECK(cfg.norms().size() == 2);
}

}
