#include "mimo3way/zf_schemes.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "mimo3way/error.hpp"

namespace mimo3way {

const char* scheme_name(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::kUniA: return "uni-a";
    case SchemeKind::kUniB: return "uni-b";
    case SchemeKind::kBcast: return "bcast";
  }
  return "bcast";
}

std::optional<SchemeKind> parse_scheme(std::string_view text) {
  if (text == "uni-a") return SchemeKind::kUniA;
  if (text == "uni-b") return SchemeKind::kUniB;
  if (text == "bcast") return SchemeKind::kBcast;
  return std::nullopt;
}

SchemeLayout scheme_layout(SchemeKind kind, const AntennaConfig& cfg) {
  const auto m1 = cfg.m1(), m2 = cfg.m2(), m3 = cfg.m3();
  if (m3 == 0) {
    fail(ErrorCode::kPrecondition, std::string(scheme_name(kind)) +
                                       ": every node needs at least one antenna (got M3 = 0)");
  }
  switch (kind) {
    case SchemeKind::kUniA: {
      if (m1 > m2 + m3) {
        fail(ErrorCode::kRegimeMismatch, "uni-a requires M1 <= M2+M3, got (" + std::to_string(m1) + "," +
                                             std::to_string(m2) + "," + std::to_string(m3) + ")");
      }
      const std::int64_t e = (m2 + m3 - m1) % 3 == 0 && (m1 + 2 * m2 - m3) % 3 == 0 ? 1 : 3;
      const AntennaConfig s = cfg.scaled(e);
      // Checked on the extended counts, which are the ones actually split.
      if (s.m3() < 3) {
        fail(ErrorCode::kPrecondition,
             "uni-a requires M_l >= 3 at every node so that each node can split its antennas, got M3 = " +
                 std::to_string(s.m3()) + (e > 1 ? " after extension" : ""));
      }
      const std::int64_t k = (s.m2() + s.m3() - s.m1()) / 3;
      const AntennaSplit split({Rational(s.m1()), Rational(k), Rational(k)},
                               {Rational(0), Rational(s.m2() - k), Rational(s.m3() - k)});
      return {kind, s, split, e};
    }
    case SchemeKind::kUniB: {
      if (m1 < m2 + m3) {
        fail(ErrorCode::kRegimeMismatch, "uni-b requires M1 >= M2+M3, got (" + std::to_string(m1) + "," +
                                             std::to_string(m2) + "," + std::to_string(m3) + ")");
      }
      const AntennaSplit split({Rational(m1 - m2 - m3), Rational(m2), Rational(m3)},
                               {Rational(m2 + m3), Rational(0), Rational(0)});
      return {kind, cfg, split, 1};
    }
    case SchemeKind::kBcast: {
      const AntennaSplit split({Rational(m1 - m2), Rational(m2 - m3), Rational(m3)},
                               {Rational(m2), Rational(m3), Rational(0)});
      return {kind, cfg, split, 1};
    }
  }
  fail(ErrorCode::kInternal, "unknown scheme");
}

MessageSet SchemeInstance::messages() const {
  MessageSet out(kind == SchemeKind::kBcast ? MessageConfig::kUnicastAndBroadcast
                                            : MessageConfig::kUnicastOnly);
  const std::int64_t e = extension_factor();
  for (const auto& st : streams) {
    const Rational d(st.dim, e);
    if (st.to == 0) {
      out.set_broadcast(st.from, d);
    } else {
      out.set_unicast(st.from, st.to, d);
    }
  }
  return out;
}

Rational SchemeInstance::claimed_dof() const {
  std::int64_t total = 0;
  for (const auto& d : decodings) total += streams[d.stream].dim;
  return Rational(total, extension_factor());
}

Index SchemeInstance::streams_from(int node) const {
  Index n = 0;
  for (const auto& st : streams) {
    if (st.from == node) n += st.dim;
  }
  return n;
}

ChannelSet draw_scheme_channels(SchemeKind kind, const AntennaConfig& cfg, std::uint64_t seed) {
  return draw_channels(scheme_layout(kind, cfg).split, seed);
}

namespace {

// First `dim` columns of a basis, zero-padded when the basis is too small so
// that a degenerate draw still yields consistent shapes (verification then
// reports the rank loss).
ComplexMatrix leading_columns(const ComplexMatrix& basis, Index dim) {
  ComplexMatrix out = ComplexMatrix::Zero(basis.rows(), dim);
  const Index take = std::min(dim, basis.cols());
  out.leftCols(take) = basis.leftCols(take);
  return out;
}

ComplexMatrix random_orthonormal(Index rows, Index cols, Rng rng) {
  if (cols == 0) return ComplexMatrix(rows, 0);
  return orthonormalize_columns(random_gaussian(rows, cols, rng));
}

class Builder {
 public:
  Builder(SchemeKind kind, const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed)
      : s_{kind, cfg, scheme_layout(kind, cfg), {}, {}}, channels_(channels), rng_(seed) {
    if (!channels.conforms_to(s_.layout.split)) {
      fail(ErrorCode::kInvalidInput, std::string(scheme_name(kind)) +
                                         ": channel shapes do not match the scheme's split (draw them "
                                         "at the extended size)");
    }
  }

  const AntennaSplit& split() const { return s_.layout.split; }

  std::size_t random_stream(std::string label, int from, int to, Index dim) {
    const auto id = s_.streams.size();
    s_.streams.push_back({std::move(label), from, to, dim, random_orthonormal(split().tx(from), dim, rng_.split(id))});
    return id;
  }

  /// Precoder inside the null space of H_{from,nulled_at}.
  std::size_t null_stream(std::string label, int from, int to, Index dim, int nulled_at) {
    const auto id = s_.streams.size();
    const ComplexMatrix t = leading_columns(null_space_basis(channels_.h(from, nulled_at)), dim);
    s_.streams.push_back({std::move(label), from, to, dim, t, nulled_at});
    return id;
  }

  /// Projector at `receiver` onto the orthogonal complement of the listed
  /// streams' received signals.
  void decode(std::size_t stream, int receiver, std::vector<std::size_t> zero_forced) {
    const Index dim = s_.streams[stream].dim;
    if (dim == 0) return;
    const Index rows = split().rx(receiver);
    Index cols = 0;
    for (const auto z : zero_forced) cols += s_.streams[z].dim;
    ComplexMatrix interference(rows, cols);
    Index at = 0;
    for (const auto z : zero_forced) {
      const auto& st = s_.streams[z];
      interference.middleCols(at, st.dim) = channels_.h(st.from, receiver) * st.t;
      at += st.dim;
    }
    const ComplexMatrix q = leading_columns(null_space_basis(interference.adjoint()), dim);
    s_.decodings.push_back({stream, receiver, q, std::move(zero_forced)});
  }

  SchemeInstance finish() { return std::move(s_); }

 private:
  SchemeInstance s_;
  const ChannelSet& channels_;
  Rng rng_;
};

Index as_dim(const Rational& r) { return static_cast<Index>(r.numerator() / r.denominator()); }

}  // namespace

SchemeInstance build_uni_a(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed) {
  Builder b(SchemeKind::kUniA, cfg, channels, seed);
  const auto& sp = b.split();
  const auto u12 = b.null_stream("u12", 1, 2, as_dim(sp.mt(1) - sp.mr(3)), 3);
  const auto u13 = b.null_stream("u13", 1, 3, as_dim(sp.mt(1) - sp.mr(2)), 2);
  const auto u23 = b.random_stream("u23", 2, 3, sp.tx(2));
  const auto u32 = b.random_stream("u32", 3, 2, sp.tx(3));
  b.decode(u12, 2, {u32});
  b.decode(u32, 2, {u12});
  b.decode(u13, 3, {u23});
  b.decode(u23, 3, {u13});
  return b.finish();
}

SchemeInstance build_uni_b(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed) {
  Builder b(SchemeKind::kUniB, cfg, channels, seed);
  const auto u21 = b.random_stream("u21", 2, 1, b.split().tx(2));
  const auto u31 = b.random_stream("u31", 3, 1, b.split().tx(3));
  b.decode(u21, 1, {u31});
  b.decode(u31, 1, {u21});
  return b.finish();
}

SchemeInstance build_bcast(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed) {
  Builder b(SchemeKind::kBcast, cfg, channels, seed);
  const auto u21 = b.random_stream("u21", 2, 1, b.split().tx(2));
  const auto u3 = b.random_stream("u3BC", 3, 0, b.split().tx(3));
  b.decode(u21, 1, {u3});
  b.decode(u3, 1, {u21});
  b.decode(u3, 2, {});
  return b.finish();
}

SchemeInstance build_scheme(SchemeKind kind, const AntennaConfig& cfg, const ChannelSet& channels,
                            std::uint64_t seed) {
  switch (kind) {
    case SchemeKind::kUniA: return build_uni_a(cfg, channels, seed);
    case SchemeKind::kUniB: return build_uni_b(cfg, channels, seed);
    case SchemeKind::kBcast: return build_bcast(cfg, channels, seed);
  }
  fail(ErrorCode::kInternal, "unknown scheme");
}

namespace {

double relative(const ComplexMatrix& product, const ComplexMatrix& h, const ComplexMatrix& t) {
  const double scale = spectral_norm(h) * spectral_norm(t);
  return scale > 0.0 ? spectral_norm(product) / scale : 0.0;
}

std::string at_label(const std::string& message, int receiver) {
  return message + "@" + std::to_string(receiver);
}

}  // namespace

VerificationReport verify_scheme(const SchemeInstance& s, const ChannelSet& channels,
                                 const VerifyThresholds& thresholds, std::uint64_t symbol_seed) {
  const auto& split = s.split();
  if (!channels.conforms_to(split)) {
    fail(ErrorCode::kInvalidInput, "channels do not match the scheme's split");
  }
  VerificationReport rep;
  rep.kind = s.kind;
  rep.extension_factor = s.extension_factor();
  rep.claimed_dof = s.claimed_dof();

  for (const auto& st : s.streams) {
    if (st.dim == 0) continue;
    PrecoderCheck pc;
    pc.label = "T[" + st.label + "]";
    pc.cols = st.t.cols();
    pc.rank = numerical_rank(st.t);
    pc.passed = st.t.rows() == split.tx(st.from) && pc.cols == st.dim && pc.rank == st.dim;
    if (!pc.passed) rep.failures.push_back("rank-deficient " + pc.label);
    if (st.nulled_at != 0) {
      const auto& h = channels.h(st.from, st.nulled_at);
      pc.null_residual = relative(h * st.t, h, st.t);
      if (*pc.null_residual > thresholds.residual) {
        pc.passed = false;
        rep.failures.push_back("null-space residual " + pc.label);
      }
    }
    rep.precoders.push_back(std::move(pc));
  }

  // Zero-noise transmission of random symbols on every stream.
  Rng symbols(symbol_seed);
  std::vector<ComplexVector> u(s.streams.size());
  NodeVectors x, noise;
  for (int i = 1; i <= kNodes; ++i) {
    x[i - 1] = ComplexVector::Zero(split.tx(i));
    noise[i - 1] = ComplexVector::Zero(split.rx(i));
  }
  for (std::size_t k = 0; k < s.streams.size(); ++k) {
    const auto& st = s.streams[k];
    u[k] = random_gaussian(st.dim, 1, symbols).col(0);
    if (st.dim > 0) x[st.from - 1] += st.t * u[k];
  }
  const NodeVectors y = receive(split, channels, x, noise);

  std::int64_t passed_dims = 0;
  for (const auto& d : s.decodings) {
    const auto& st = s.streams[d.stream];
    const int j = d.receiver;
    const std::string label = at_label(st.label, j);
    DecodeCheck dc;
    dc.message = st.label;
    dc.receiver = j;
    dc.dim = st.dim;

    for (std::size_t k = 0; k < s.streams.size(); ++k) {
      const auto& other = s.streams[k];
      if (k == d.stream || other.dim == 0 || other.from == j) continue;
      const auto& h = channels.h(other.from, j);
      const double r = relative(d.q.adjoint() * h * other.t, h, other.t);
      dc.interference.push_back({other.label, r});
      dc.max_residual = std::max(dc.max_residual, r);
    }
    bool ok = true;
    if (dc.max_residual > thresholds.residual) {
      ok = false;
      rep.failures.push_back("interference residual Q[" + label + "]");
    }

    dc.projector_orthonormality =
        spectral_norm(d.q.adjoint() * d.q - ComplexMatrix::Identity(d.q.cols(), d.q.cols()));
    if (d.q.rows() != split.rx(j) || d.q.cols() != st.dim ||
        dc.projector_orthonormality > thresholds.residual) {
      ok = false;
      rep.failures.push_back("non-orthonormal projector Q[" + label + "]");
    }

    const auto& h = channels.h(st.from, j);
    const ComplexMatrix g = d.q.adjoint() * h * st.t;
    std::tie(dc.sigma_min, dc.sigma_max) = singular_value_range(g);
    // Also measured against ||H|| ||T||: a 1x1 G that is numerically zero
    // still has sigma_min == sigma_max.
    const double scale = std::max(dc.sigma_max, spectral_norm(h) * spectral_norm(st.t));
    if (!(scale > 0.0) || dc.sigma_min <= thresholds.conditioning * scale) {
      ok = false;
      rep.failures.push_back("rank-deficient G[" + label + "]");
    }

    const ComplexVector estimate = pseudo_inverse(g) * (d.q.adjoint() * y[j - 1]);
    const double norm = u[d.stream].norm();
    dc.decode_error = norm > 0.0 ? (estimate - u[d.stream]).norm() / norm : 0.0;
    if (!(dc.decode_error <= thresholds.decode)) {
      ok = false;
      rep.failures.push_back("decode error " + label);
    }

    dc.passed = ok;
    if (ok) passed_dims += st.dim;
    rep.decodings.push_back(std::move(dc));
  }

  rep.achieved_dof = Rational(passed_dims, s.extension_factor());
  rep.valid = rep.failures.empty();
  return rep;
}

}  // namespace mimo3way
