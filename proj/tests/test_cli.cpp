#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "thorin/cli.hpp"
#include "thorin/error.hpp"

using namespace thorin;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("grid grammar") {
    CHECK(cli::parse_grid("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    const auto lin = cli::parse_grid("0:1:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[1] == Approx(0.25));
    CHECK(lin.back() == 1.0);
    const auto lg = cli::parse_grid("log:0.01:100:5");
    REQUIRE(lg.size() == 5);
    CHECK(lg[2] == Approx(1.0));
    CHECK(lg.back() == Approx(100.0));
    CHECK_THROWS_AS(cli::parse_grid("1,x"), Error);
    CHECK_THROWS_AS(cli::parse_grid("log:-1:2:3"), Error);
    CHECK(cli::num(0.1) == "0.10000000000000001");
  }

  TEST_CASE("psi output") {
    const auto r = run({"psi", "--family", "galpha:0.5", "--lambda", "1"});
    REQUIRE(r.code == cli::kOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "lambda,psi,laplace,source,err_est");
    CHECK(l[1].rfind("1,1.76274717403908", 0) == 0);
  }

  TEST_CASE("sample is deterministic and has a header") {
    const std::vector<std::string> args{"sample", "--family", "arcsine", "--t", "0.5", "--method", "wg",
                                        "--n", "50", "--seed", "7", "--steps", "256"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK(first_line(a.out) == "value");
    CHECK(lines(a.out).size() == 51);
    CHECK(a.err.find("\"method\":\"wg\"") != std::string::npos);
    auto c = args;
    c[10] = "8";
    CHECK(run(c).out != a.out);
  }

  TEST_CASE("pdf columns") {
    const auto r = run({"pdf", "--family", "arcsine", "--t", "0.5", "--x", "1", "--method", "closed"});
    REQUIRE(r.code == cli::kOk);
    const auto l = lines(r.out);
    CHECK(l[0] == "x,f,err_est");
    CHECK(std::stod(l[1].substr(2)) == Approx(0.178318).epsilon(1e-5));
    const auto cr = run({"pdf", "--family", "arcsine", "--t", "0.5", "--x", "1.5", "--method", "cr", "--quantity",
                         "mean"});
    CHECK(cr.code == cli::kOk);
  }

  TEST_CASE("thorin columns") {
    const auto r = run({"thorin", "--target", "pareto:1", "--grid", "1"});
    REQUIRE(r.code == cli::kOk);
    const auto l = lines(r.out);
    CHECK(l[0].rfind("x,", 0) == 0);
    CHECK(l[1].find("0.4184") != std::string::npos);
  }

  TEST_CASE("json format") {
    const auto r = run({"psi", "--family", "uniform", "--lambda", "1,2", "--format", "json"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find('[') != std::string::npos);
    CHECK(r.out.find("\"psi\"") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"sample", "--family", "arcsine"}).code == cli::kUsage);
    CHECK(run({"verify", "--suite", "nosuch"}).code == cli::kUsage);
    CHECK(run({"psi", "--family", "nosuch", "--lambda", "1"}).code == cli::kDomain);
    CHECK(run({"psi", "--family", "galpha:2", "--lambda", "1"}).code == cli::kDomain);
    CHECK(run({"sample", "--family", "zratio:0.5", "--method", "closed", "--t", "1"}).code == cli::kDomain);
    const auto h = run({"--help"});
    CHECK(h.code == cli::kOk);
    CHECK(h.out.find("sample") != std::string::npos);
  }

  TEST_CASE("catalog lists every family") {
    const auto r = run({"catalog"});
    REQUIRE(r.code == cli::kOk);
    for (const char* name : {"point", "galpha", "arcsine", "uniform", "g0shift", "zratio", "pareto", "gammapow",
                             "stable", "reciprocal", "table", "gamma", "cosh", "sinh", "tanh", "besselj", "besselk",
                             "stablehalf", "powerjump"}) {
      INFO(std::string(name));
      CHECK(r.out.find(name) != std::string::npos);
    }
    const auto j = run({"catalog", "--format", "json"});
    CHECK(j.code == cli::kOk);
    CHECK(j.out.find('{') != std::string::npos);
  }
}
