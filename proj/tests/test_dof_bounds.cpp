#include <gtest/gtest.h>

#include <algorithm>

#include "mimo3way/dof_bounds.hpp"
#include "support.hpp"

using namespace mimo3way;

namespace {

AntennaSplit split_of(std::array<int, 3> mt, std::array<int, 3> mr) {
  return AntennaSplit({Rational(mt[0]), Rational(mt[1]), Rational(mt[2])},
                      {Rational(mr[0]), Rational(mr[1]), Rational(mr[2])});
}

bool has_label(const BoundReport& r, const std::string& label) {
  return std::find(r.binding_terms.begin(), r.binding_terms.end(), label) != r.binding_terms.end();
}

Rational min_of(const std::vector<BoundTerm>& terms) {
  Rational m = terms.front().value;
  for (const auto& t : terms) m = rmin(m, t.value);
  return m;
}

// Walks every split with components in [0, hi].
template <class F>
void for_each_split(int hi, F&& f) {
  for (int a = 0; a <= hi; ++a)
    for (int b = 0; b <= hi; ++b)
      for (int c = 0; c <= hi; ++c)
        for (int d = 0; d <= hi; ++d)
          for (int e = 0; e <= hi; ++e)
            for (int g = 0; g <= hi; ++g) f(std::array<int, 3>{a, b, c}, std::array<int, 3>{d, e, g});
}

}  // namespace

TEST(CutsetUnicast, SpecExample) {
  const auto r = cutset_bound_unicast(split_of({3, 1, 1}, {0, 2, 2}));
  EXPECT_EQ(r.combined_cutset, Rational(4));
  EXPECT_TRUE(has_label(r, "ΣM_R"));
  EXPECT_FALSE(r.combined_genie.has_value());
  // hand evaluation of the per-cut terms
  for (const auto& t : r.terms) {
    if (t.label == "cut{1|23}") EXPECT_EQ(t.value, Rational(3));
    if (t.label == "cut{23|1}") EXPECT_EQ(t.value, Rational(0));
    if (t.label == "cut{12|3}") EXPECT_EQ(t.value, Rational(2));
  }
}

TEST(CutsetUnicast, NoTransmitAntennas) {
  EXPECT_EQ(cutset_bound_unicast(split_of({0, 0, 0}, {1, 1, 1})).combined(), Rational(0));
}

TEST(CutsetUnicast, Symmetric) {
  for (int t = 0; t <= 6; ++t) {
    for (int r = 0; r <= 6; ++r) {
      const Rational expect = std::min({2 * (t + r), 3 * t, 3 * r});
      EXPECT_EQ(cutset_bound_unicast(split_of({t, t, t}, {r, r, r})).combined(), expect);
    }
  }
}

TEST(GenieUnicast, SpecExamples) {
  const auto r = genie_bound_unicast(split_of({3, 1, 1}, {0, 2, 2}));
  ASSERT_TRUE(r.combined_genie.has_value());
  EXPECT_EQ(*r.combined_genie, Rational(4));
  ASSERT_EQ(r.genie_candidates.size(), 5u);
  EXPECT_EQ(r.genie_candidates[0].value, Rational(5));
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(r.genie_candidates[i].value, Rational(4));
  EXPECT_EQ(genie_bound_unicast(split_of({1, 1, 1}, {1, 1, 1})).combined(), Rational(2));
}

TEST(GenieUnicast, ExposesSixTripleMessageBounds) {
  const auto r = genie_bound_unicast(split_of({2, 1, 3}, {1, 2, 0}));
  int genie = 0;
  for (const auto& t : r.terms) genie += t.label.rfind("genie{", 0) == 0;
  EXPECT_EQ(genie, 6);
}

TEST(GenieUnicast, CombinedIsMinimumOfCandidates) {
  for_each_split(3, [](auto mt, auto mr) {
    const auto s = split_of(mt, mr);
    const auto r = genie_bound_unicast(s);
    ASSERT_EQ(*r.combined_genie, min_of(r.genie_candidates));
    ASSERT_EQ(r.combined_cutset, min_of(r.cutset_candidates));
    ASSERT_FALSE(r.binding_terms.empty());
    ASSERT_EQ(*r.combined_genie, Rational(unicast_genie_value(mt, mr)));
  });
}

TEST(GenieUnicast, NeverAboveCutset) {
  for_each_split(4, [](auto mt, auto mr) {
    const auto s = split_of(mt, mr);
    ASSERT_LE(genie_bound_unicast(s).combined(), cutset_bound_unicast(s).combined());
  });
}

TEST(GenieUnicast, TxRxRelabelingSymmetry) {
  for_each_split(4, [](auto mt, auto mr) {
    const auto a = genie_bound_unicast(split_of(mt, mr));
    const auto b = genie_bound_unicast(split_of(mr, mt));
    ASSERT_EQ(a.combined(), b.combined());
    std::vector<Rational> va, vb;
    for (const auto& t : a.genie_candidates) va.push_back(t.value);
    for (const auto& t : b.genie_candidates) vb.push_back(t.value);
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    ASSERT_EQ(va, vb);
  });
}

TEST(Bounds, MonotoneInEveryComponent) {
  // grid up to 8 with a stride keeps this fast but covers the range
  for (int step = 0; step < 6; ++step) {
    for (int a : {0, 3, 8})
      for (int b : {0, 2, 7})
        for (int c : {1, 5})
          for (int d : {0, 4, 8})
            for (int e : {0, 3})
              for (int g : {2, 6}) {
                std::array<int, 6> base{a, b, c, d, e, g};
                std::array<int, 6> up = base;
                ++up[step];
                const auto s0 = split_of({base[0], base[1], base[2]}, {base[3], base[4], base[5]});
                const auto s1 = split_of({up[0], up[1], up[2]}, {up[3], up[4], up[5]});
                ASSERT_LE(cutset_bound_unicast(s0).combined(), cutset_bound_unicast(s1).combined());
                ASSERT_LE(genie_bound_unicast(s0).combined(), genie_bound_unicast(s1).combined());
                ASSERT_LE(cutset_bound_broadcast(s0).combined(), cutset_bound_broadcast(s1).combined());
              }
  }
}

TEST(SymmetricBound, Examples) {
  EXPECT_EQ(symmetric_bound(2, 2), Rational(4));
  EXPECT_EQ(symmetric_bound(5, 1), Rational(3));
  EXPECT_EQ(symmetric_bound(1, 5), Rational(3));
  EXPECT_EQ(symmetric_bound(Rational(4, 3), Rational(8, 3)), Rational(4));
  EXPECT_EQ(error_code_of([] { symmetric_bound(-1, 1); }), ErrorCode::kInvalidInput);
}

TEST(SymmetricBound, MatchesGenieOnSymmetricSplits) {
  for (int t = 0; t <= 10; ++t) {
    for (int r = 0; r <= 10; ++r) {
      EXPECT_EQ(symmetric_bound(t, r), genie_bound_unicast(split_of({t, t, t}, {r, r, r})).combined())
          << t << "," << r;
    }
  }
}

TEST(CutsetBroadcast, SpecExamples) {
  const auto r = cutset_bound_broadcast(split_of({2, 1, 2}, {3, 2, 0}));
  EXPECT_EQ(r.combined(), Rational(5));
  ASSERT_EQ(r.cutset_candidates.size(), 4u);
  EXPECT_EQ(r.cutset_candidates[2].value, Rational(7));
  EXPECT_EQ(r.messages, MessageConfig::kUnicastAndBroadcast);
  EXPECT_EQ(cutset_bound_broadcast(split_of({4, 2, 1}, {0, 0, 0})).combined(), Rational(0));
}

TEST(CutsetBroadcast, TermwiseRecomputation) {
  for_each_split(3, [](auto mt, auto mr) {
    const auto r = cutset_bound_broadcast(split_of(mt, mr));
    const int st = mt[0] + mt[1] + mt[2], sr = mr[0] + mr[1] + mr[2];
    const int expect = std::min({sr, mt[1] + mt[2] + mr[1] + mr[2], mr[2] + mt[0] + mt[1] + 2 * mt[2], 2 * st});
    ASSERT_EQ(r.combined(), Rational(expect));
  });
}

TEST(Bounds, FractionalSplitsStayExact) {
  const AntennaSplit s({Rational(5), Rational(1, 3), Rational(1, 3)},
                       {Rational(0), Rational(11, 3), Rational(5, 3)});
  EXPECT_EQ(genie_bound_unicast(s).combined(), Rational(16, 3));
}
