#include "doctest.h"

#include <cmath>
#include <fstream>
#include <string>

#include "fefwork/io.hpp"
#include "fefwork/report.hpp"

using namespace fefwork;

namespace {

const std::string kData = FEFWORK_TEST_DATA;

}  // namespace

TEST_CASE("state files") {
  CHECK((loadStateFile(kData + "/bell.json").matrix() - singletState(2).matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((loadStateFile(kData + "/mixed.json").matrix() - maximallyMixed(2).matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loadStateFile(kData + "/iso05.json").matrix()(0, 0).real() == doctest::Approx(0.375));
  CHECK_THROWS_WITH_AS(loadStateFile(kData + "/bad_trace.json"), doctest::Contains("trace"), ValidationError);
  CHECK_THROWS_AS(loadStateFile(kData + "/missing.json"), ValidationError);
}

TEST_CASE("state JSON round trip") {
  Rng rng(10);
  const BipartiteState rho = randomState(3, 4, rng);
  const BipartiteState back = stateFromJson(json::parse(stateToJson(rho).dump()));
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("state JSON rejects malformed input") {
  CHECK_THROWS_AS(stateFromJson(json{{"family", "bell"}}), ValidationError);
  CHECK_THROWS_AS(stateFromJson(json{{"family", "werner"}, {"d", 2}}), ValidationError);
  CHECK_THROWS_AS(stateFromJson(json{{"d", 2}}), ValidationError);
  CHECK_THROWS_AS(stateFromJson(json{{"d", 2}, {"matrix", json::array({json::array({1, 0})})}}), ValidationError);
  CHECK_THROWS_AS(stateFromJson(json{{"family", "isotropic"}, {"d", 2}, {"p", 2.0}}), ValidationError);
}

TEST_CASE("pure state detection") {
  CHECK(pureStateFromJson(json{{"family", "bell"}, {"d", 3}}).has_value());
  CHECK(pureStateFromJson(json::parse(R"({"family": "pure-haar", "d": 2, "seed": 3})")).has_value());
  CHECK_FALSE(pureStateFromJson(json{{"family", "isotropic"}, {"d", 2}, {"p", 0.5}}).has_value());
  CHECK(pureStateFromJson(json{{"family", "isotropic"}, {"d", 2}, {"p", 1.0}}).has_value());
  std::ifstream in(kData + "/product_pure.json");
  CHECK(pureStateFromJson(json::parse(in)).has_value());
  std::ifstream mixed(kData + "/mixed.json");
  CHECK_FALSE(pureStateFromJson(json::parse(mixed)).has_value());
}

TEST_CASE("report JSON carries annotated numbers") {
  const json j = toJson(buildReport(materialize(IsotropicParams(2, 0.5))));
  const json& s = j.at("entropy").at("S_A_given_B");
  CHECK(s.at("value").get<double>() == doctest::Approx(0.548795).epsilon(1e-6));
  CHECK(s.at("units") == "bits");
  CHECK(s.contains("relation"));
  CHECK(s.contains("provenance"));
  CHECK(j.at("fef").at("lower_bound") == true);
  CHECK(j.at("entropy").at("h_min_smooth_lower").at("lower_bound") == true);
  CHECK(j.at("bounds").at("extract_lower").at("units") == "kBT");
  CHECK(j.at("extraction_estimate").at("applicable") == true);
  CHECK(j.at("thresholds").at("fef_lhv").is_null());
}

TEST_CASE("process JSON") {
  const TemperatureScale t(1.0);
  std::ifstream in(kData + "/erase_a.process.json");
  const ProcessSpec spec = processFromJson(json::parse(in), t, kData);
  CHECK(spec.actions.size() == 3);
  const WorkLedger l = replay(spec);
  CHECK(l.perAction[1].workGain.value() == doctest::Approx(-1.5));
  CHECK(l.total.value() == doctest::Approx(std::log(2.0)));
  CHECK((l.classification == Classification::ErasureOnA));

  const json round = processToJson(spec);
  const WorkLedger again = replay(processFromJson(round, t));
  CHECK(again.total.value() == doctest::Approx(l.total.value()));

  // declared work is an absolute energy, read relative to kBT
  const ProcessSpec hot = processFromJson(round, TemperatureScale(2.0));
  CHECK(replay(hot, ReplayOptions{2.0, {}}).perAction[0].workGain.inKbt == doctest::Approx(std::log(2.0) / 2.0));

  const json ledger = toJson(l, ReplayOptions{});
  CHECK(ledger.at("classification") == "erasure-on-A");
  CHECK(ledger.at("entries").size() == 3);
  CHECK(ledger.at("sign_convention") == "lowering-is-gain");

  std::ifstream bad(kData + "/bad_subsystem.process.json");
  CHECK_THROWS_WITH_AS(processFromJson(json::parse(bad), t, kData), doctest::Contains("undefined subsystem"),
                       ValidationError);
  CHECK_THROWS_AS(processFromJson(json{{"initial", "bell.json"}}, t, kData), ValidationError);
  CHECK_THROWS_AS(
      processFromJson(json::parse(R"({"initial": {"family": "bell", "d": 2}, "actions": [{"kind": "jump"}]})"), t),
      ValidationError);
}

TEST_CASE("sign convention tokens") {
  CHECK((parseSignConvention("lowering-is-gain") == SignConvention::LoweringIsGain));
  CHECK((parseSignConvention("raising-is-gain") == SignConvention::RaisingIsGain));
  CHECK(toString(SignConvention::RaisingIsGain) == "raising-is-gain");
  CHECK_THROWS_AS(parseSignConvention("positive"), ValidationError);
}
