#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "relmetric/error.hpp"
#include "relmetric/report_io.hpp"

using namespace relmetric;
using nlohmann::json;

namespace {

SearchConfig odd_config() {
  SearchConfig c;
  c.lo = 1e-3;
  c.hi = 12345.678;
  c.coarse_grid_points = 17;
  c.refine_iterations = 3;
  c.violation_tolerance = 1e-7;
  c.seed = 18446744073709551615ull;
  c.random_triples = 42;
  c.top_k = 2;
  c.order_samples = 99;
  c.order_hi = 1e9;
  c.order_tolerance = 0.1 + 0.2;
  return c;
}

ViolationReport sample_violation() {
  return {Point{464.40889238525932, -1.0 / 3.0}, Point{7.2685052598208202, 0.0}, Point{0.1, 1e-300}, 13.42935460744513,
          10.337921996868502, 3.0914326105766285};
}

RegionTable sample_table() {
  RegionTable t;
  t.step = 0.05;
  t.cells.push_back({0.2, 1.0, RegionCell::Label::NonMetric, false, false, sample_violation()});
  t.cells.push_back({0.5, 0.5, RegionCell::Label::Metric, true, true, std::nullopt});
  t.cells.push_back({0.8, 0.1, RegionCell::Label::BoundaryBand, false, true, sample_violation()});
  return t;
}

OrderReport sample_order() {
  OrderReport r;
  r.verdict = OrderReport::Verdict::DecreasingSomewhere;
  r.witness = std::pair{1.5, 2.25};
  r.ratio_samples = {{1.0, 1.0}, {1.5, 0.9999999999999999}, {2.25, std::numeric_limits<double>::infinity()}};
  r.dips_below_one = true;
  return r;
}

}  // namespace

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -2.5, 0.1 + 0.2}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v) << format_double(v);
  }
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(NAN), "nan");
}

TEST(OutputFormatTest, Parse) {
  EXPECT_EQ(output_format_from_string("json"), OutputFormat::Json);
  EXPECT_EQ(output_format_from_string("csv"), OutputFormat::Csv);
  EXPECT_THROW(output_format_from_string("xml"), ParseError);
}

TEST(JsonRoundTrip, SearchConfig) {
  const auto c = odd_config();
  EXPECT_EQ(search_config_from_json(json::parse(to_json(c).dump())), c);
  EXPECT_EQ(search_config_from_json(to_json(SearchConfig{})), SearchConfig{});
}

TEST(JsonRoundTrip, ViolationReport) {
  const auto r = sample_violation();
  EXPECT_EQ(violation_report_from_json(json::parse(to_json(r).dump())), r);
}

TEST(JsonRoundTrip, OrderReport) {
  const auto r = sample_order();
  EXPECT_EQ(order_report_from_json(json::parse(to_json(r).dump())), r);
  EXPECT_EQ(order_report_from_json(to_json(OrderReport{})), OrderReport{});
}

TEST(JsonRoundTrip, RegionTable) {
  const auto t = sample_table();
  EXPECT_EQ(region_table_from_json(json::parse(to_json(t).dump())), t);
}

TEST(JsonRoundTrip, PredicateAndPlem) {
  PredicateResult p;
  p.witness = PredicateWitness{"ratio-decreasing", {0.5, 2.0, 0.0}, 1.25, 1.0};
  const auto back = predicate_result_from_json(json::parse(to_json(p).dump()));
  EXPECT_EQ(back.witness, p.witness);
  EXPECT_TRUE(predicate_result_from_json(to_json(PredicateResult{})).pass());
  const PlemReport r{true, false, true};
  EXPECT_EQ(plem_report_from_json(json::parse(to_json(r).dump())), r);
}

TEST(JsonRoundTrip, RejectsMalformed) {
  EXPECT_THROW(search_config_from_json(json::parse(R"({"lo": 1})")), ParseError);
  EXPECT_THROW(violation_report_from_json(json::parse(R"({"x": 3})")), ParseError);
  auto j = to_json(sample_order());
  j["verdict"] = "sideways";
  EXPECT_THROW(order_report_from_json(j), ParseError);
  auto t = to_json(sample_table());
  t["cells"][0]["label"] = 7;
  EXPECT_THROW(region_table_from_json(t), ParseError);
}

TEST(CsvRoundTrip, SearchConfig) {
  const auto c = odd_config();
  EXPECT_EQ(search_config_from_csv(to_csv(c)), c);
}

TEST(CsvRoundTrip, ViolationReport) {
  const auto r = sample_violation();
  EXPECT_EQ(violation_report_from_csv(to_csv(r)), r);
}

TEST(CsvRoundTrip, OrderReport) {
  const auto r = sample_order();
  EXPECT_EQ(order_report_from_csv(to_csv(r)), r);
  EXPECT_EQ(order_report_from_csv(to_csv(OrderReport{})), OrderReport{});
}

TEST(CsvRoundTrip, RegionTable) {
  const auto t = sample_table();
  const std::string text = to_csv(t);
  EXPECT_NE(text.find("p,q,label,analytic,in_band,x,z,y,lhs,rhs,margin"), std::string::npos);
  EXPECT_EQ(region_table_from_csv(text), t);
}

TEST(CsvRoundTrip, ToleratesConfigHeader) {
  const auto r = sample_violation();
  EXPECT_EQ(violation_report_from_csv(csv_config_header(SearchConfig{}) + to_csv(r)), r);
}

TEST(CsvRoundTrip, RejectsMalformed) {
  EXPECT_THROW(violation_report_from_csv("x,z,y\n1,2,3\n"), ParseError);
  EXPECT_THROW(region_table_from_csv("p,q,label,analytic,in_band,x,z,y,lhs,rhs,margin\n0.1,0.2,bogus,1,0,,,,,,\n"),
               ParseError);
  EXPECT_THROW(search_config_from_csv("key,value\nlo,abc\n"), ParseError);
}
