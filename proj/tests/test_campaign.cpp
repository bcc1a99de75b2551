#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "entcont/error.hpp"
#include "entcont/state_io.hpp"
#include "harness.hpp"

using namespace entcont;
using namespace entcont::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("entcont_test_" + name);
}

}  // namespace

TEST_CASE("verify-fannes with amplitude 0 compares a state with itself") {
  CampaignConfig c;
  c.command = Command::VerifyFannes;
  c.trials = 1;
  c.amplitudes = {0.0};
  const CampaignResult r = run_campaign(c);
  CHECK(r.summary.total == 1);
  CHECK(r.summary.violations == 0);
  CHECK(r.rows.front().lhs == 0.0);
  CHECK(r.rows.front().distance == 0.0);
}

TEST_CASE("campaign rows: count, order and stream tags") {
  CampaignConfig c;
  c.command = Command::VerifyPure;
  c.trials = 7;
  c.dims = {{2, 2}, {3, 2}};
  c.amplitudes = {0.05, 1.0};
  const CampaignResult r = run_campaign(c);
  CHECK(r.rows.size() == 7 * 2 * 2);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].stream == i);
  CHECK(r.rows.front().da == 2);
  CHECK(r.rows.back().da == 3);
  CHECK(r.summary.violations <= r.summary.total);
  CHECK(r.summary.theorem_violations == 0);
}

TEST_CASE("verify-pure reports are byte-identical across runs and thread counts") {
  CampaignConfig c;
  c.command = Command::VerifyPure;
  c.trials = 100;
  c.seed = 7;
  c.dims = {{2, 2}};
  c.amplitudes = {0.05};
  c.out_path = temp_path("a.csv");
  run_campaign(c);
  c.out_path = temp_path("b.csv");
  run_campaign(c);
  c.out_path = temp_path("c.csv");
  c.threads = 4;
  run_campaign(c);
  const std::string a = slurp(temp_path("a.csv"));
  CHECK(!a.empty());
  CHECK(a == slurp(temp_path("b.csv")));
  CHECK(a == slurp(temp_path("c.csv")));
  CHECK(a.rfind(std::string(kCsvHeader) + "\n", 0) == 0);

  std::istringstream lines(a);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
    ++count;
  }
  CHECK(count == 101);
}

TEST_CASE("JSON reports mirror CSV rows") {
  CampaignConfig c;
  c.command = Command::VerifyFannes;
  c.trials = 5;
  c.dims = {{2, 1}, {2, 2}};
  const CampaignResult r = run_campaign(c);
  std::stringstream out;
  write_reports(out, r.rows, ReportFormat::Json);
  const auto doc = nlohmann::json::parse(out.str());
  REQUIRE(doc.is_array());
  CHECK(doc.size() == r.rows.size());
  CHECK(doc[3]["name"] == "fannes");
  CHECK(doc[3]["lhs"].get<double>() == r.rows[3].lhs);
  CHECK(doc[3]["stream"].get<std::uint64_t>() == 3);
}

TEST_CASE("verify-eof with the proof chain") {
  CampaignConfig c;
  c.command = Command::VerifyEof;
  c.trials = 3;
  c.amplitudes = {0.01, 0.1};
  c.chain = true;
  c.optimizer.restarts = 2;
  const CampaignResult r = run_campaign(c);
  CHECK(r.rows.size() == 3 * 2 * 9);
  CHECK(r.summary.theorem_violations == 0);
  CHECK(r.summary.regime_counts.at("restricted") + r.summary.regime_counts.count("unrestricted") >=
        1);
}

TEST_CASE("invalid campaign configs") {
  CampaignConfig c;
  c.trials = 0;
  CHECK_THROWS_AS(run_campaign(c), Error);
  c.trials = 1;
  c.dims.clear();
  CHECK_THROWS_AS(run_campaign(c), Error);
  c.dims = {{2, 2}};
  c.amplitudes = {1.5};
  CHECK_THROWS_AS(run_campaign(c), Error);
  c.amplitudes = {0.5};
  c.command = Command::Tightness;
  CHECK_THROWS_AS(run_campaign(c), Error);
  CHECK_THROWS_AS(parse_dims_list("2x"), Error);
  CHECK_THROWS_AS(parse_dims_list("0x2"), Error);
  CHECK_THROWS_AS(parse_command("verify-all"), Error);
  CHECK(parse_dims_list("2x2,8x8").size() == 2);
}

TEST_CASE("compute_single on named states") {
  CHECK(format_value(compute_single(Measure::PureE, named_state("bell"))) == "1.000000000");
  CHECK(format_value(compute_single(Measure::Entropy, named_state("maximally-mixed:4"))) ==
        "2.000000000");
  CHECK(format_value(compute_single(Measure::Eof2q, named_state("werner:0.5"))) == "0.1176188738");
  CHECK(format_value(compute_single(Measure::Tilde, named_state("bell"))) == "1.000000000");
  CHECK(format_value(compute_single(Measure::Entropy, named_state("tightness:2:0.1"))) ==
        "0.9709505945");
  CHECK(compute_single(Measure::TraceDistance, named_state("maximally-mixed:2"),
                       named_state("tightness:2:0.1")) == doctest::Approx(0.2));
  CHECK(compute_single(Measure::Entropy, named_state("maximally-mixed:2x3")) ==
        doctest::Approx(std::log2(6.0)));
  CHECK_THROWS_AS(compute_single(Measure::Fidelity, named_state("bell")), Error);
  CHECK_THROWS_AS(compute_single(Measure::PureE, named_state("werner:0.5")), Error);
  CHECK_THROWS_AS(compute_single(Measure::Eof2q, named_state("maximally-mixed:3")), Error);
  CHECK_THROWS_AS(named_state("ghz"), Error);
  CHECK_THROWS_AS(named_state("werner"), Error);
  CHECK_THROWS_AS(named_state("werner:1.5"), Error);
  CHECK_THROWS_AS(parse_measure("negativity"), Error);
}

TEST_CASE("state files feed compute_single") {
  const auto path = temp_path("werner.state");
  save_state(path, named_state("werner:0.5"));
  CHECK(compute_single(Measure::Eof2q, load_state(path)) ==
        doctest::Approx(0.11761887377091781).epsilon(1e-10));
  CHECK_THROWS_AS(load_state(temp_path("missing.state")), Error);
}

TEST_CASE("tightness tables") {
  const TightnessTable single = emit_tightness_table({2}, TightnessPolicy::FixedEps, 0.1);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].gap == doctest::Approx(0.02904940554533142).epsilon(1e-10));
  CHECK(single.rows[0].t == doctest::Approx(0.2));
  CHECK(single.rows[0].lower == doctest::Approx(-0.9));

  const TightnessTable table = emit_tightness_table({4, 16, 64, 256}, TightnessPolicy::FixedT, 1.0);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].gap > table.rows[i - 1].gap);
  }
  std::stringstream csv;
  write_tightness(csv, table, ReportFormat::Csv);
  CHECK(csv.str().rfind("d,epsilon,gap,t,lower", 0) == 0);
  std::stringstream json;
  write_tightness(json, table, ReportFormat::Json);
  CHECK(nlohmann::json::parse(json.str())["rows"].size() == 4);

  try {
    emit_tightness_table({}, TightnessPolicy::FixedT, 1.0);
    FAIL("expected InvalidConfig");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidConfig);
  }
  CHECK_THROWS_AS(emit_tightness_table({4}, TightnessPolicy::FixedEps, 0.5), Error);
}
