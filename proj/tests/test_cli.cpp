#include <gtest/gtest.h>

#include "cli.hpp"

using namespace eqlef;
using namespace eqlef::cli;

TEST(CliConfig, AcceptsKnownKeys) {
  const auto c = config_from_json(nlohmann::json::parse(
      R"({"suites": ["gtrace"], "k": [1, 2], "random_pairs": 3, "output": {"json": "a.json"}})"));
  EXPECT_EQ(c.suites, std::vector<std::string>{"gtrace"});
  EXPECT_EQ(c.k, (std::vector<int>{1, 2}));
  EXPECT_EQ(c.random_pairs, 3);
  EXPECT_EQ(c.json_out, "a.json");
  EXPECT_NO_THROW(validate(c));
}

TEST(CliConfig, RejectsBadDocuments) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"output": {"xml": "a"}})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"k": "two"})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"([1, 2])")), ConfigError);
  EXPECT_THROW(validate(config_from_json(nlohmann::json::parse(R"({"suites": []})"))), ConfigError);
  EXPECT_THROW(validate(config_from_json(nlohmann::json::parse(R"({"suites": ["nope"]})"))), ConfigError);
  EXPECT_THROW(validate(config_from_json(nlohmann::json::parse(R"({"operators": ["z +"]})"))), ConfigError);
  EXPECT_THROW(validate(config_from_json(nlohmann::json::parse(R"({"t_schedule": [0.1, 0.2, 0.01, 0.001]})"))),
               ConfigError);
}

TEST(CliParsing, GroupSpecs) {
  EXPECT_EQ(parse_element("Z4"), GroupElement::rotation(4, 1));
  EXPECT_EQ(parse_element("Z6^5"), GroupElement::rotation(6, 5));
  EXPECT_EQ(parse_element("F2^1"), GroupElement::reflection(2, 1));
  EXPECT_TRUE(parse_element("1").is_identity());
  EXPECT_THROW(parse_element("Q3"), ConfigError);
  EXPECT_EQ(parse_group("D4").order(), 4u);
  EXPECT_EQ(parse_group("Z3").order(), 3u);
  EXPECT_THROW(parse_group("D3"), ConfigError);
  EXPECT_EQ(parse_lambda("4:1,3").exponents(), (std::vector<long>{1, 3}));
  EXPECT_THROW(parse_lambda("4"), ConfigError);
}

TEST(CliReport, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(csv_row({"a", "b,c"}), "a,\"b,c\"\n");
}

TEST(CliReport, LefschetzRowHasBothSides) {
  const auto s = run_riemann_roch(SuiteConfig{});
  const auto j = suite_json(s);
  const auto& row = j["cases"][0];
  EXPECT_EQ(row["lhs"], row["rhs"]);
  const std::vector<std::string> keys{"name", "pass", "lhs", "rhs", "lhs_decimal", "rhs_decimal", "method", "note"};
  std::vector<std::string> got;
  for (const auto& [k, v] : row.items()) got.push_back(k);
  EXPECT_EQ(got, keys);
}

TEST(CliReport, ExactSuitesAreDeterministic) {
  SuiteConfig c;
  c.suites = {"gtrace", "hochschild", "averaging"};
  c.random_pairs = 20;
  c.random_chains = 20;
  c.hh0_operators = 10;
  auto dump = [&] {
    std::vector<SuiteResult> r;
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& s : c.suites) {
      r.push_back(run_suite(s, c));
      j.push_back(suite_json(r.back()));
    }
    return j.dump() + suites_csv(r);
  };
  EXPECT_EQ(dump(), dump());
}

TEST(CliCommands, ClassifyEmitsCertificate) {
  Options o;
  std::ostringstream os;
  EXPECT_EQ(classify(o, os), 0);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["algebraic_order"], 1);
  EXPECT_EQ(j["is_geometric"], "false");
  EXPECT_EQ(j["certificate"]["vector"].size(), 1u);
}

TEST(CliCommands, HeatCsvHasMonotoneT) {
  Options o;
  o.lambda = "2:1";
  o.t = "1e-2,1e-3,1e-4";
  std::ostringstream os;
  EXPECT_EQ(verify_heat(o, os), 0);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "t,value_re,value_im,abs_error");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(is, line)) {
    const double t = std::stod(line.substr(0, line.find(',')));
    EXPECT_LT(t, prev);
    prev = t;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  o.t = "1e-3,1e-2";
  EXPECT_THROW(verify_heat(o, os), ConfigError);
}

TEST(CliCommands, NegativeControlFails) {
  Options o;
  o.space = "cp1";
  o.k = "1";
  o.group = "Z4";
  std::ostringstream os;
  EXPECT_EQ(verify_lefschetz(o, os), 0);
  SuiteConfig c;
  c.suites = {"riemann_roch"};
  c.rhs_weight_shift = 1;
  EXPECT_FALSE(run_suite("riemann_roch", c).pass());
}
