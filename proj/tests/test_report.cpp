#include <gtest/gtest.h>

#include <sstream>

#include "mimo3way/report.hpp"
#include "mimo3way/serialize.hpp"
#include "support.hpp"

using namespace mimo3way;

namespace {

using R = Rational;

const SweepPoint* find_point(const std::vector<SweepPoint>& pts, R x, R y) {
  for (const auto& p : pts) {
    if (p.m1_over_m3 == x && p.m2_over_m3 == y) return &p;
  }
  return nullptr;
}

// Both region expressions of the normalized surface.
R region_value(R x, R y) { return x <= y + 1 ? (2 * x + y + 1) / 3 : y + 1; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(to_string(R(16, 3)), "16/3");
  EXPECT_EQ(to_string(R(4)), "4/1");
  EXPECT_EQ(parse_rational("16/3"), R(16, 3));
  EXPECT_EQ(parse_rational("-2"), R(-2));
  EXPECT_EQ(to_decimal(R(16, 3)), "5.3333");
  EXPECT_EQ(to_decimal(R(-1, 8)), "-0.1250");
  EXPECT_EQ(error_code_of([] { parse_rational("1/0"); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(error_code_of([] { parse_rational("x"); }), ErrorCode::kInvalidInput);
}

TEST(Sweep, SpecPoints) {
  const auto pts = sweep_surface(1, 6, MessageConfig::kUnicastOnly);
  const auto* a = find_point(pts, R(2), R(1));
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->dof_over_m3, R(2));
  EXPECT_EQ((2 * R(2) + 1 + 1) / 3, R(2));
  const auto* b = find_point(pts, R(1), R(1));
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->dof_over_m3, R(4, 3));
  const auto* c = find_point(pts, R(4), R(2));
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->dof_over_m3, R(3));
}

TEST(Sweep, MatchesRegionExpressions) {
  for (std::int64_t m3 : {1, 2, 3}) {
    const auto pts = sweep_surface(m3, 12, MessageConfig::kUnicastOnly);
    ASSERT_FALSE(pts.empty());
    for (const auto& p : pts) {
      ASSERT_EQ(p.dof_over_m3, region_value(p.m1_over_m3, p.m2_over_m3));
      ASSERT_EQ(p.m1_over_m3, R(p.config.m1(), m3));
    }
  }
}

TEST(Sweep, BroadcastSurface) {
  for (const auto& p : sweep_surface(2, 9, MessageConfig::kUnicastAndBroadcast)) {
    ASSERT_EQ(p.dof_over_m3, p.m2_over_m3 + 1);
  }
}

TEST(Sweep, RejectsBadRanges) {
  EXPECT_EQ(error_code_of([] { sweep_surface(0, 5, MessageConfig::kUnicastOnly); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(error_code_of([] { sweep_surface(3, 2, MessageConfig::kUnicastOnly); }), ErrorCode::kInvalidInput);
}

TEST(Sweep, CsvShape) {
  const auto pts = sweep_surface(1, 4, MessageConfig::kUnicastOnly);
  const auto text = render_sweep(pts, MessageConfig::kUnicastOnly, Format::kCsv);
  EXPECT_EQ(text.rfind("m1_over_m3,m2_over_m3,dof_over_m3\n", 0), 0u);
  EXPECT_EQ(count_lines(text), pts.size() + 1);
  const auto json = Json::parse(render_sweep(pts, MessageConfig::kUnicastOnly, Format::kJson));
  EXPECT_EQ(json["points"].size(), pts.size());
  EXPECT_EQ(json["messages"], "unicast");
}

TEST(Serialize, SplitAndConfig) {
  const auto cfg = AntennaConfig(5, 4, 2);
  EXPECT_EQ(to_json(cfg).dump(), R"({"m":[5,4,2]})");
  const auto s = AntennaSplit::from_receive(cfg, {R(0), R(11, 3), R(5, 3)});
  EXPECT_EQ(to_json(s).dump(), R"({"mt":["5/1","1/3","1/3"],"mr":["0/1","11/3","5/3"]})");
}

TEST(Serialize, AllocationCertificate) {
  const auto j = to_json(optimal_unicast_enumerated(AntennaConfig(3, 3, 3)));
  EXPECT_EQ(j["optimal_dof"], "4/1");
  EXPECT_EQ(j["certificate"]["kind"], "duality-pair");
  EXPECT_EQ(j["certificate"]["gap"], "0/1");
  const auto b = to_json(optimal_broadcast(AntennaConfig(5, 3, 2)));
  EXPECT_EQ(b["optimal_band"]["sum_mt_min"], "3/1");
}

TEST(Render, BoundsInEveryFormat) {
  const AntennaSplit s({R(3), R(1), R(1)}, {R(0), R(2), R(2)});
  const auto rep = genie_bound_unicast(s);
  const auto j = Json::parse(render_bounds(rep, s, nullptr, Format::kJson));
  EXPECT_EQ(j["bounds"]["combined_genie"], "4/1");
  const auto table = render_bounds(rep, s, nullptr, Format::kTable);
  EXPECT_NE(table.find("4.0000"), std::string::npos);
  const auto csv = render_bounds(rep, s, nullptr, Format::kCsv);
  EXPECT_EQ(csv.rfind("kind,label,value,binding\n", 0), 0u);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(Render, SlopeCsvIsTwoColumns) {
  SlopeEstimate e{.kind = SchemeKind::kUniA,
                  .config = AntennaConfig(3, 3, 3),
                  .snr_grid_db = {30, 50},
                  .mean_sum_rate_bits = {30.5, 57.1},
                  .slope_dof = 4.0,
                  .trials = 1,
                  .skipped_trials = 0,
                  .theoretical_dof = R(4),
                  .abs_error = 0.0,
                  .fit = SlopeFit::kTwoPoint,
                  .seed = 1};
  const auto csv = render_slope(e, Format::kCsv);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "snr_db,mean_rate");
  int rows = 0;
  while (std::getline(is, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 1);
    ++rows;
  }
  EXPECT_EQ(rows, 2);
}

TEST(Render, FormatNames) {
  EXPECT_EQ(parse_format("json"), Format::kJson);
  EXPECT_EQ(parse_format("csv"), Format::kCsv);
  EXPECT_EQ(parse_format("table"), Format::kTable);
  EXPECT_FALSE(parse_format("xml").has_value());
}
