#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("SIMPREF_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SIMPREF_CLI must point at the built CLI");
  return p;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("integrate: corrected rule is exact on t^4") {
  const RunResult r = run("integrate --expr t^4 --a 0 --b 1 --rule corrected --class c4");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("command") == "integrate");
  CHECK(std::abs(doc.at("estimate").get<double>() - 0.2) <= 1e-14);
  const double lo = doc.at("enclosure").at("lower").get<double>();
  const double hi = doc.at("enclosure").at("upper").get<double>();
  CHECK(hi - lo <= 1e-15);
  CHECK(doc.at("enclosure").at("theorem") == "THM4");
  CHECK(doc.at("exit") == 0);
}

TEST_CASE("integrate: cosh on [-2,2] meets a 1e-8 tolerance") {
  const RunResult r = run("integrate --expr 'cosh(t)' --a -2 --b 2 --tol 1e-8");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const double est = doc.at("estimate").get<double>();
  CHECK(std::abs(est - 7.253720815694037) <= 1e-7);
  const double lo = doc.at("enclosure").at("lower").get<double>();
  const double hi = doc.at("enclosure").at("upper").get<double>();
  CHECK(hi - lo <= 1.1e-8);
  CHECK(lo <= 7.253720815694037);
  CHECK(hi >= 7.253720815694037);
}

TEST_CASE("integrate: domain error exits 1, cap exits 3, bad flags exit 2") {
  const RunResult dom = run("integrate --expr 'log(t)' --a -1 --b 1");
  CHECK(dom.exit_code == 1);
  // the error path still emits schema-shaped JSON
  const json derr = json::parse(dom.out);
  CHECK(derr.at("command") == "integrate");
  CHECK(derr.at("exit") == 1);
  CHECK(derr.at("error").is_string());
  CHECK(run("integrate --expr t --a 2 --b 1").exit_code == 2);
  CHECK(run("integrate --expr t --a 0 --b 1 --class c9").exit_code == 2);
  CHECK(run("integrate --a 0 --b 1").exit_code == 2);       // missing --expr
  CHECK(run("integrate --expr t --a zz --b 1").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  const RunResult capped =
      run("integrate --expr 'coth(t)/t' --a 1 --b 2 --tol 1e-14 --panel-cap 8 --samples 65");
  CHECK(capped.exit_code == 3);
  const json doc = json::parse(capped.out);
  CHECK(doc.at("converged") == false);
  CHECK(doc.at("exit") == 3);
}

TEST_CASE("bound: lists candidates and the winner") {
  const RunResult r = run("bound --expr 'exp(t)' --a 0 --b 1 --class c2");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("enclosure").at("theorem") == "THM1");
  CHECK(doc.at("candidates").size() == 3);  // THM0, THM1, EQ7
  // user-supplied exact range flips confidence to analytic
  const RunResult ru =
      run("bound --expr 'exp(t)' --a 0 --b 1 --class c2 --m 1 --M 2.718281828459045");
  const json du = json::parse(ru.out);
  CHECK(du.at("enclosure").at("confidence") == "analytic-range");
  const double radius = du.at("enclosure").at("upper").get<double>();
  CHECK(std::abs(radius - (2.718281828459045 - 1.0) / 162.0) <= 1e-15);
}

TEST_CASE("bound: c3 radius for cosh on [-2,2] with exact ranges") {
  // M3 - m3 = 2 sinh 2, width^3 = 64
  const RunResult r = run(
      "bound --expr 'cosh(t)' --a -2 --b 2 --class c3 "
      "--m -3.6268604078470186 --M 3.6268604078470186");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const double expect = 1.0 / 1152.0 * 2.0 * 3.6268604078470186 * 64.0;
  bool saw_thm2 = false;
  for (const auto& cand : doc.at("candidates")) {
    if (cand.at("theorem") != "THM2") continue;
    saw_thm2 = true;
    CHECK(std::abs(cand.at("upper").get<double>() - expect) <= 1e-13);
    CHECK(cand.at("confidence") == "analytic-range");
    // the winner is never wider than this candidate (here THM1 wins)
    CHECK(doc.at("enclosure").at("upper").get<double>() -
              doc.at("enclosure").at("lower").get<double>() <=
          2.0 * expect);
  }
  CHECK(saw_thm2);
  // the integral-estimate form is reported alongside the defect form
  REQUIRE(doc.contains("integral_enclosure"));
  const double lo = doc.at("integral_enclosure").at("lower").get<double>();
  const double hi = doc.at("integral_enclosure").at("upper").get<double>();
  CHECK(lo <= 7.253720815694037);
  CHECK(hi >= 7.253720815694037);
}

TEST_CASE("integrate: fixed panels claim a tolerance only when given") {
  CHECK(run("integrate --expr 'exp(t)' --a 0 --b 1 --panels 2 --class c2").exit_code == 0);
  CHECK(run("integrate --expr 'exp(t)' --a 0 --b 1 --panels 2 --class c2 --tol 1e-12")
            .exit_code == 3);
}

TEST_CASE("bound: affine second derivative gives the zero THM3 upper") {
  const RunResult r = run("bound --expr 't^3' --a 0 --b 1 --class c4-convex2");
  const json doc = json::parse(r.out);
  bool saw_thm3 = false;
  for (const auto& cand : doc.at("candidates")) {
    if (cand.at("theorem") == "THM3") {
      saw_thm3 = true;
      CHECK(cand.at("lower").get<double>() == 0.0);
      CHECK(cand.at("upper").get<double>() <= 1e-14);
    }
  }
  CHECK(saw_thm3);
}

TEST_CASE("coth: brackets and usage validation") {
  const RunResult r = run("coth --y 1 --x 2 --method thm5");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const double lo = doc.at("enclosure").at("lower").get<double>();
  const double hi = doc.at("enclosure").at("upper").get<double>();
  CHECK(lo <= 0.7916767937627763);
  CHECK(hi >= 0.7916767937627763);
  CHECK(doc.at("enclosure").at("theorem") == "THM5");

  const RunResult r6 = run("coth --y 1 --x 2 --method thm6");
  const json doc6 = json::parse(r6.out);
  CHECK(std::abs(doc6.at("radius").get<double>() - 22.0 / 1125.0 * 31.0) <= 1e-12);

  CHECK(run("coth --y 0 --x 1").exit_code == 2);
  CHECK(run("coth --y 2 --x 1").exit_code == 2);
}

TEST_CASE("sharpness: witness ratio and search report") {
  const RunResult r = run("sharpness --witness d --param 1000");
  const json doc = json::parse(r.out);
  const double ratio = doc.at("estimate").get<double>();
  CHECK(ratio >= 1.0 / 1152.0 * (1.0 - 3e-6));
  CHECK(ratio <= 1.0 / 1152.0);

  const RunResult rs = run("sharpness --search c2 --trials 32 --seed 42");
  const json ds = json::parse(rs.out);
  CHECK(ds.at("class") == "C2");
  CHECK(ds.at("trials") == 32);
  CHECK(ds.at("best_ratio").get<double>() >= 1.0 / 288.0 - 1e-12);
  CHECK(ds.at("best_ratio").get<double>() <= 1.0 / 162.0 + 1e-10);
  CHECK(ds.at("paper_lower").get<double>() == doctest::Approx(1.0 / 288.0));
  CHECK(ds.at("paper_upper").get<double>() == doctest::Approx(1.0 / 162.0));
  CHECK(ds.contains("candidate_description"));
}

TEST_CASE("verify: quick suite emits schema-shaped properties") {
  const RunResult r = run("verify --suite coth --seed 42");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("command") == "verify");
  REQUIRE(doc.at("properties").is_array());
  CHECK(doc.at("properties").size() >= 5);
  for (const auto& p : doc.at("properties")) {
    CHECK(p.at("name").is_string());
    CHECK(p.at("pass").is_boolean());
    CHECK(p.at("slack").is_number());
    CHECK(p.at("pass") == true);
  }
  CHECK(doc.at("exit") == 0);
}

TEST_CASE("verify: csv format emits one row per property") {
  const RunResult r = run("verify --suite coth --seed 42 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("name,pass,slack", 0) == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines >= 6);
}

TEST_CASE("verify: identical seeds give byte-identical output") {
  const RunResult a = run("verify --suite sharpness --seed 42");
  const RunResult b = run("verify --suite sharpness --seed 42");
  CHECK(a.out == b.out);
}
