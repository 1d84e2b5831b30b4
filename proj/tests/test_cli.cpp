#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>

#include "../tools/cli_app.hpp"
#include "json.hpp"

namespace {

const std::string kData = FEFWORK_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fefwork");
  std::ostringstream out, err;
  const int code = fefwork::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli report") {
  const Run r = cli({"report", kData + "/bell.json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("q").at("h_min").at("value").get<double>() == doctest::Approx(-1.0).epsilon(1e-6));

  const Run csv = cli({"--format", "csv", "report", kData + "/iso05.json"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("key,value\n", 0) == 0);
  CHECK(csv.out.find("entropy.S_A_given_B,0.5487") != std::string::npos);

  CHECK(cli({"--format", "table", "report", kData + "/mixed.json"}).code == 0);
}

TEST_CASE("cli exit codes") {
  SUBCASE("input errors") {
    const Run bad = cli({"report", kData + "/bad_trace.json"});
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(bad.err.find("trace") != std::string::npos);
    CHECK(cli({"report", kData + "/nope.json"}).code == 2);
    CHECK(cli({"--epsilon", "0.9", "report", kData + "/bell.json"}).code == 2);
    CHECK(cli({"--kbt", "-1", "report", kData + "/bell.json"}).code == 2);
    CHECK(cli({"--format", "xml", "report", kData + "/bell.json"}).code == 2);
    CHECK(cli({"certify", "--d", "2", "--samples", "0"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);
  }
  SUBCASE("help") { CHECK(cli({"--help"}).code == 0); }
}

TEST_CASE("cli certify") {
  const Run r = cli({"--seed", "3", "--restarts", "4", "certify", "--d", "2", "--samples", "5"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("violations").empty());
  CHECK(j.at("checked").get<int>() > 0);
  CHECK(r.out == cli({"--seed", "3", "--restarts", "4", "certify", "--d", "2", "--samples", "5"}).out);
}

TEST_CASE("cli isotropic-scan") {
  const Run r = cli({"--format", "csv", "isotropic-scan", "--d", "2", "--p0", "0", "--p1", "1", "--steps", "11"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("#", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "p,F,S,S_A_given_B,erasure_cost_upper,erasure_gain_lower,extract_lower,above,crossing");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 11);

  CHECK(cli({"isotropic-scan", "--d", "2", "--p0", "0.5", "--p1", "0.1"}).code == 2);
  CHECK(cli({"isotropic-scan", "--d", "2", "--p0", "-0.5"}).code == 2);
}

TEST_CASE("cli pipeline") {
  const Run erase = cli({"pipeline", kData + "/bell.json", "--kind", "erase-extract"});
  REQUIRE(erase.code == 0);
  const auto j = nlohmann::json::parse(erase.out);
  CHECK(j.at("total").at("value").get<double>() == doctest::Approx(std::log(4.0)));
  CHECK(j.at("classification") == "work-extraction");

  const Run fef = cli({"pipeline", kData + "/bell.json", "--erasure-bound", "fef"});
  CHECK(nlohmann::json::parse(fef.out).at("total").at("value").get<double>() ==
        doctest::Approx(std::log(4.0)));
  CHECK(cli({"pipeline", kData + "/mixed.json", "--erasure-bound", "fef"}).code == 2);

  const Run tw = cli({"--kbt", "2", "pipeline", kData + "/bell.json", "--kind", "twirl"});
  REQUIRE(tw.code == 0);
  CHECK(nlohmann::json::parse(tw.out).at("total").at("value").get<double>() ==
        doctest::Approx(std::log(4.0)));  // in units of kBT
  CHECK(cli({"pipeline", kData + "/product_pure.json", "--kind", "twirl"}).code == 2);
  CHECK(cli({"pipeline", kData + "/iso05.json", "--kind", "twirl"}).code == 2);

  const Run proc = cli({"--format", "csv", "pipeline", "--process", kData + "/erase_a.process.json"});
  CHECK(proc.code == 0);
  CHECK(proc.out.find("erasure-on-A") != std::string::npos);
  CHECK(cli({"pipeline", "--process", kData + "/unclosed.process.json"}).code == 2);
  CHECK(cli({"pipeline", "--process", kData + "/bad_subsystem.process.json"}).code == 2);
  CHECK(cli({"pipeline"}).code == 2);
}

TEST_CASE("cli twirl and minentropy") {
  const Run t = cli({"twirl", kData + "/product_pure.json"});
  REQUIRE(t.code == 0);
  const auto j = nlohmann::json::parse(t.out);
  CHECK(j.at("p").at("value").get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j.contains("work_cost"));

  const Run m = cli({"minentropy", kData + "/mixed.json"});
  REQUIRE(m.code == 0);
  CHECK(nlohmann::json::parse(m.out).at("h_min").at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cli environment overrides") {
  setenv("FEFWORK_FORMAT", "csv", 1);
  const Run r = cli({"report", kData + "/bell.json"});
  unsetenv("FEFWORK_FORMAT");
  CHECK(r.out.rfind("key,value", 0) == 0);
}
