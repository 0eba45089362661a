#include <gtest/gtest.h>

#include <algorithm>

#include "mimo3way/allocation.hpp"
#include "mimo3way/dof_bounds.hpp"
#include "mimo3way/zf_schemes.hpp"
#include "support.hpp"

using namespace mimo3way;

namespace {

using R = Rational;

struct Run {
  SchemeInstance scheme;
  ChannelSet channels;
  VerificationReport report;
};

Run run(SchemeKind kind, const AntennaConfig& cfg, std::uint64_t seed) {
  auto channels = draw_scheme_channels(kind, cfg, seed);
  auto scheme = build_scheme(kind, cfg, channels, seed + 1000);
  auto report = verify_scheme(scheme, channels);
  return {std::move(scheme), std::move(channels), std::move(report)};
}

std::vector<Index> dims(const SchemeInstance& s) {
  std::vector<Index> out;
  for (const auto& st : s.streams) out.push_back(st.dim);
  return out;
}

const Stream& stream(const SchemeInstance& s, const std::string& label) {
  for (const auto& st : s.streams) {
    if (st.label == label) return st;
  }
  throw std::runtime_error("no stream " + label);
}

R optimum_value(SchemeKind kind, const AntennaConfig& cfg) {
  return kind == SchemeKind::kBcast ? optimal_broadcast(cfg).optimal_dof : optimal_unicast_closed_form(cfg).optimal_dof;
}

bool has_failure_prefix(const VerificationReport& rep, const std::string& prefix) {
  return std::any_of(rep.failures.begin(), rep.failures.end(),
                     [&](const std::string& f) { return f.rfind(prefix, 0) == 0; });
}

}  // namespace

TEST(SchemeNames, RoundTrip) {
  for (auto k : {SchemeKind::kUniA, SchemeKind::kUniB, SchemeKind::kBcast}) EXPECT_EQ(parse_scheme(scheme_name(k)), k);
  EXPECT_FALSE(parse_scheme("uni-c").has_value());
}

TEST(UniA, Symmetric333) {
  const auto r = run(SchemeKind::kUniA, AntennaConfig(3, 3, 3), 1);
  EXPECT_EQ(dims(r.scheme), (std::vector<Index>{1, 1, 1, 1}));
  EXPECT_EQ(r.scheme.extension_factor(), 1);
  EXPECT_TRUE(r.report.valid);
  EXPECT_EQ(r.report.achieved_dof, R(4));
  EXPECT_EQ(r.scheme.claimed_dof(), R(4));
  EXPECT_EQ(total_dof(r.scheme.messages()), R(4));
}

TEST(UniA, ExtendedSymmetric444) {
  const auto r = run(SchemeKind::kUniA, AntennaConfig(4, 4, 4), 2);
  EXPECT_EQ(r.scheme.extension_factor(), 3);
  EXPECT_EQ(r.scheme.layout.scaled, AntennaConfig(12, 12, 12));
  Index total = 0;
  for (auto d : dims(r.scheme)) total += d;
  EXPECT_EQ(total, 16);
  EXPECT_TRUE(r.report.valid);
  EXPECT_EQ(r.report.achieved_dof, R(16, 3));
}

TEST(UniA, Extended542) {
  const auto layout = scheme_layout(SchemeKind::kUniA, AntennaConfig(5, 4, 2));
  EXPECT_EQ(layout.extension_factor, 3);
  EXPECT_EQ(layout.scaled, AntennaConfig(15, 12, 6));
  EXPECT_EQ(layout.split.transmit(), (std::array<R, 3>{R(15), R(1), R(1)}));
  const auto r = run(SchemeKind::kUniA, AntennaConfig(5, 4, 2), 3);
  Index total = 0;
  for (auto d : dims(r.scheme)) total += d;
  EXPECT_EQ(total, 16);
  EXPECT_TRUE(r.report.valid);
  EXPECT_EQ(r.report.achieved_dof, R(16, 3));
}

TEST(UniA, Preconditions) {
  EXPECT_EQ(error_code_of([] { scheme_layout(SchemeKind::kUniA, AntennaConfig(2, 1, 1)); }),
            ErrorCode::kPrecondition);
  EXPECT_EQ(error_code_of([] { scheme_layout(SchemeKind::kUniA, AntennaConfig(9, 3, 3)); }),
            ErrorCode::kRegimeMismatch);
  EXPECT_EQ(error_code_of([] { scheme_layout(SchemeKind::kUniA, AntennaConfig(3, 3, 0)); }),
            ErrorCode::kPrecondition);
}

TEST(UniA, UnextendedChannelsRejected) {
  const AntennaConfig cfg(4, 4, 4);
  const auto small = draw_channels(AntennaSplit::from_transmit(cfg, {R(4), R(0), R(0)}), 1);
  EXPECT_EQ(error_code_of([&] { build_uni_a(cfg, small, 1); }), ErrorCode::kInvalidInput);
}

TEST(UniA, AdversarialCollidingChannels) {
  const AntennaConfig cfg(3, 3, 3);
  auto ch = draw_scheme_channels(SchemeKind::kUniA, cfg, 4);
  ch.h(1, 3) = ch.h(1, 2);
  const auto s = build_uni_a(cfg, ch, 5);
  const auto rep = verify_scheme(s, ch);
  EXPECT_FALSE(rep.valid);
  EXPECT_TRUE(has_failure_prefix(rep, "rank-deficient")) << ::testing::PrintToString(rep.failures);
  EXPECT_LT(rep.achieved_dof, R(4));
}

TEST(UniA, NullSpacePrecoderDimensions) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const auto& cfg : {AntennaConfig(3, 3, 3), AntennaConfig(6, 4, 3), AntennaConfig(7, 7, 5)}) {
      const auto r = run(SchemeKind::kUniA, cfg, seed);
      const auto& sp = r.scheme.split();
      const auto& u12 = stream(r.scheme, "u12");
      const auto& u13 = stream(r.scheme, "u13");
      ASSERT_EQ(u12.t.cols(), sp.tx(1) - numerical_rank(r.channels.h(1, 3)));
      ASSERT_EQ(u12.t.cols(), sp.tx(1) - sp.rx(3));
      ASSERT_EQ(u13.t.cols(), sp.tx(1) - sp.rx(2));
      ASSERT_LE(spectral_norm(r.channels.h(1, 3) * u12.t), 1e-10 * spectral_norm(r.channels.h(1, 3)));
    }
  }
}

TEST(UniB, Examples) {
  const auto a = run(SchemeKind::kUniB, AntennaConfig(4, 2, 1), 6);
  EXPECT_EQ(dims(a.scheme), (std::vector<Index>{2, 1}));
  EXPECT_TRUE(a.report.valid);
  EXPECT_EQ(a.report.achieved_dof, R(3));

  const auto b = run(SchemeKind::kUniB, AntennaConfig(6, 3, 3), 7);
  EXPECT_EQ(dims(b.scheme), (std::vector<Index>{3, 3}));
  EXPECT_EQ(b.report.achieved_dof, R(6));

  const auto c = run(SchemeKind::kUniB, AntennaConfig(2, 1, 1), 8);
  EXPECT_EQ(dims(c.scheme), (std::vector<Index>{1, 1}));
  EXPECT_EQ(c.scheme.split().tx(1), 0);
  EXPECT_EQ(c.scheme.streams_from(1), 0);
  EXPECT_TRUE(c.report.valid);
  EXPECT_EQ(c.report.achieved_dof, R(2));
}

TEST(UniB, RegimeMismatch) {
  EXPECT_EQ(error_code_of([] { scheme_layout(SchemeKind::kUniB, AntennaConfig(3, 3, 3)); }),
            ErrorCode::kRegimeMismatch);
}

TEST(Bcast, Examples) {
  const auto a = run(SchemeKind::kBcast, AntennaConfig(5, 3, 2), 9);
  EXPECT_EQ(dims(a.scheme), (std::vector<Index>{1, 2}));
  EXPECT_TRUE(a.report.valid);
  EXPECT_EQ(a.report.achieved_dof, R(5));
  EXPECT_EQ(a.scheme.messages().broadcast(3), R(2));

  const auto b = run(SchemeKind::kBcast, AntennaConfig(3, 3, 3), 10);
  EXPECT_EQ(dims(b.scheme), (std::vector<Index>{0, 3}));
  EXPECT_TRUE(b.report.valid);
  EXPECT_EQ(b.report.achieved_dof, R(6));

  const auto c = run(SchemeKind::kBcast, AntennaConfig(2, 1, 1), 11);
  EXPECT_EQ(dims(c.scheme), (std::vector<Index>{0, 1}));
  EXPECT_EQ(c.report.achieved_dof, R(2));
}

TEST(Bcast, RejectsEmptyNode) {
  EXPECT_EQ(error_code_of([] { scheme_layout(SchemeKind::kBcast, AntennaConfig(3, 2, 0)); }),
            ErrorCode::kPrecondition);
}

TEST(Schemes, PrecodersAndProjectorsHaveContractShapes) {
  for (auto kind : {SchemeKind::kUniA, SchemeKind::kUniB, SchemeKind::kBcast}) {
    const AntennaConfig cfg = kind == SchemeKind::kUniB ? AntennaConfig(7, 3, 2) : AntennaConfig(5, 4, 3);
    const auto r = run(kind, cfg, 12);
    const auto& sp = r.scheme.split();
    for (const auto& st : r.scheme.streams) {
      ASSERT_EQ(st.t.rows(), sp.tx(st.from));
      ASSERT_EQ(st.t.cols(), st.dim);
      if (st.dim > 0) ASSERT_EQ(numerical_rank(st.t), st.dim);
    }
    for (const auto& d : r.scheme.decodings) {
      ASSERT_EQ(d.q.rows(), sp.rx(d.receiver));
      const Index k = d.q.cols();
      ASSERT_LE((d.q.adjoint() * d.q - ComplexMatrix::Identity(k, k)).norm(), 1e-10);
    }
  }
}

TEST(Schemes, ValidOnSmallGridAndNeverAboveConverse) {
  // the full 100-seed grid runs in the acceptance binary
  for (int m1 = 1; m1 <= 7; ++m1) {
    for (int m2 = 1; m2 <= m1; ++m2) {
      for (int m3 = 1; m3 <= m2; ++m3) {
        const AntennaConfig cfg(m1, m2, m3);
        std::vector<SchemeKind> kinds{SchemeKind::kBcast};
        if (m3 >= 3 && m1 <= m2 + m3) kinds.push_back(SchemeKind::kUniA);
        if (m1 >= m2 + m3) kinds.push_back(SchemeKind::kUniB);
        for (auto kind : kinds) {
          for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto r = run(kind, cfg, seed);
            ASSERT_TRUE(r.report.valid) << scheme_name(kind) << " " << m1 << m2 << m3;
            ASSERT_EQ(r.report.achieved_dof, optimum_value(kind, cfg));
            const auto& sp = r.scheme.split();
            // split is at the extended size, so compare streams per extended use
            const R bound = kind == SchemeKind::kBcast ? cutset_bound_broadcast(sp).combined()
                                                       : genie_bound_unicast(sp).combined();
            ASSERT_LE(r.report.achieved_dof * r.scheme.extension_factor(), bound);
            for (const auto& d : r.report.decodings) {
              ASSERT_LE(d.max_residual, 1e-10);
            }
          }
        }
      }
    }
  }
}

TEST(Verify, DeterministicForSeed) {
  const auto a = run(SchemeKind::kUniA, AntennaConfig(5, 4, 3), 77);
  const auto b = run(SchemeKind::kUniA, AntennaConfig(5, 4, 3), 77);
  ASSERT_EQ(a.report.decodings.size(), b.report.decodings.size());
  for (std::size_t i = 0; i < a.report.decodings.size(); ++i) {
    EXPECT_EQ(a.report.decodings[i].max_residual, b.report.decodings[i].max_residual);
    EXPECT_EQ(a.report.decodings[i].decode_error, b.report.decodings[i].decode_error);
  }
}

TEST(Verify, ThresholdsAreConfigurable) {
  const auto r = run(SchemeKind::kUniB, AntennaConfig(4, 2, 1), 13);
  VerifyThresholds impossible;
  impossible.decode = -1.0;
  const auto rep = verify_scheme(r.scheme, r.channels, impossible);
  EXPECT_FALSE(rep.valid);
  EXPECT_TRUE(has_failure_prefix(rep, "decode error"));
}
