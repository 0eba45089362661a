#include "mimo3way/channel_model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mimo3way/error.hpp"

namespace mimo3way {

namespace {

void check_node(int node) {
  if (node < 1 || node > kNodes) {
    fail(ErrorCode::kInvalidInput, "node index " + std::to_string(node) + " outside 1..3");
  }
}

Index as_index(const Rational& r, const char* what, int node) {
  if (!is_integer(r)) {
    fail(ErrorCode::kInvalidInput, std::string(what) + std::to_string(node) + " = " + to_string(r) +
                                       " is fractional; apply symbol extension first");
  }
  return static_cast<Index>(r.numerator());
}

}  // namespace

AntennaConfig::AntennaConfig(std::int64_t m1, std::int64_t m2, std::int64_t m3) : m_{m1, m2, m3} {
  if (m3 < 0) fail(ErrorCode::kInvalidInput, "antenna counts must be nonnegative");
  if (!(m1 >= m2 && m2 >= m3)) {
    fail(ErrorCode::kInvalidInput, "antenna counts must satisfy M1 >= M2 >= M3, got (" +
                                       std::to_string(m1) + "," + std::to_string(m2) + "," +
                                       std::to_string(m3) + ")");
  }
}

AntennaConfig AntennaConfig::sorted(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::array<std::int64_t, 3> v{a, b, c};
  std::sort(v.begin(), v.end(), std::greater<>());
  return AntennaConfig(v[0], v[1], v[2]);
}

std::int64_t AntennaConfig::m(int node) const {
  check_node(node);
  return m_[node - 1];
}

AntennaConfig AntennaConfig::scaled(std::int64_t factor) const {
  if (factor < 1) fail(ErrorCode::kInvalidInput, "scale factor must be positive");
  return AntennaConfig(m_[0] * factor, m_[1] * factor, m_[2] * factor);
}

AntennaSplit::AntennaSplit(std::array<Rational, 3> mt, std::array<Rational, 3> mr)
    : mt_(mt), mr_(mr) {
  for (int l = 0; l < kNodes; ++l) {
    if (mt_[l] < 0 || mr_[l] < 0) {
      fail(ErrorCode::kInvalidInput,
           "split counts must be nonnegative at node " + std::to_string(l + 1));
    }
  }
}

AntennaSplit AntennaSplit::from_receive(const AntennaConfig& cfg, const std::array<Rational, 3>& mr) {
  std::array<Rational, 3> mt;
  for (int l = 0; l < kNodes; ++l) mt[l] = Rational(cfg.counts()[l]) - mr[l];
  return AntennaSplit(mt, mr);
}

AntennaSplit AntennaSplit::from_transmit(const AntennaConfig& cfg, const std::array<Rational, 3>& mt) {
  std::array<Rational, 3> mr;
  for (int l = 0; l < kNodes; ++l) mr[l] = Rational(cfg.counts()[l]) - mt[l];
  return AntennaSplit(mt, mr);
}

const Rational& AntennaSplit::mt(int node) const {
  check_node(node);
  return mt_[node - 1];
}

const Rational& AntennaSplit::mr(int node) const {
  check_node(node);
  return mr_[node - 1];
}

bool AntennaSplit::is_integer() const {
  return std::all_of(mt_.begin(), mt_.end(), [](const Rational& r) { return r.denominator() == 1; }) &&
         std::all_of(mr_.begin(), mr_.end(), [](const Rational& r) { return r.denominator() == 1; });
}

bool AntennaSplit::matches(const AntennaConfig& cfg) const {
  for (int l = 0; l < kNodes; ++l) {
    if (mt_[l] + mr_[l] != Rational(cfg.counts()[l])) return false;
  }
  return true;
}

std::int64_t AntennaSplit::extension_factor() const {
  return std::lcm(common_denominator(mt_.data(), mt_.data() + 3),
                  common_denominator(mr_.data(), mr_.data() + 3));
}

AntennaSplit AntennaSplit::scaled(std::int64_t factor) const {
  if (factor < 1) fail(ErrorCode::kInvalidInput, "scale factor must be positive");
  auto mt = mt_;
  auto mr = mr_;
  for (int l = 0; l < kNodes; ++l) {
    mt[l] *= factor;
    mr[l] *= factor;
  }
  return AntennaSplit(mt, mr);
}

Index AntennaSplit::tx(int node) const { return as_index(mt(node), "M_T", node); }
Index AntennaSplit::rx(int node) const { return as_index(mr(node), "M_R", node); }

int pair_index(int from, int to) {
  check_node(from);
  check_node(to);
  if (from == to) fail(ErrorCode::kInvalidInput, "a node has no channel to itself");
  return (from - 1) * 2 + (to > from ? to - 2 : to - 1);
}

const Rational& MessageSet::unicast(int from, int to) const { return unicast_[pair_index(from, to)]; }

const Rational& MessageSet::broadcast(int from) const {
  check_node(from);
  return broadcast_[from - 1];
}

void MessageSet::set_unicast(int from, int to, Rational d) {
  if (d < 0) fail(ErrorCode::kInvalidInput, "stream counts must be nonnegative");
  unicast_[pair_index(from, to)] = d;
}

void MessageSet::set_broadcast(int from, Rational d) {
  check_node(from);
  if (d < 0) fail(ErrorCode::kInvalidInput, "stream counts must be nonnegative");
  if (config_ == MessageConfig::kUnicastOnly && d != Rational(0)) {
    fail(ErrorCode::kInvalidInput, "unicast-only message set cannot carry broadcast streams");
  }
  broadcast_[from - 1] = d;
}

Rational total_dof(const MessageSet& msgs) {
  Rational total = 0;
  for (int i = 1; i <= kNodes; ++i) {
    for (int j = 1; j <= kNodes; ++j) {
      if (i != j) total += msgs.unicast(i, j);
    }
    total += 2 * msgs.broadcast(i);
  }
  return total;
}

bool ChannelSet::conforms_to(const AntennaSplit& split) const {
  if (!split.is_integer()) return false;
  for (int i = 1; i <= kNodes; ++i) {
    for (int j = 1; j <= kNodes; ++j) {
      if (i == j) continue;
      const auto& m = h(i, j);
      if (m.rows() != split.rx(j) || m.cols() != split.tx(i)) return false;
    }
  }
  return true;
}

ChannelSet draw_channels(const AntennaSplit& split, std::uint64_t seed) {
  ChannelSet out;
  const Rng root(seed);
  for (int i = 1; i <= kNodes; ++i) {
    for (int j = 1; j <= kNodes; ++j) {
      if (i == j) continue;
      auto rng = root.split(static_cast<std::uint64_t>(pair_index(i, j)));
      out.h(i, j) = random_gaussian(split.rx(j), split.tx(i), rng);
    }
  }
  return out;
}

NodeVectors receive(const AntennaSplit& split, const ChannelSet& channels, const NodeVectors& x,
                    const NodeVectors& noise) {
  if (!channels.conforms_to(split)) {
    fail(ErrorCode::kInvalidInput, "channel shapes do not match the antenna split");
  }
  for (int l = 1; l <= kNodes; ++l) {
    if (x[l - 1].size() != split.tx(l)) {
      fail(ErrorCode::kInvalidInput, "x" + std::to_string(l) + " must have length M_T" +
                                         std::to_string(l));
    }
    if (noise[l - 1].size() != split.rx(l)) {
      fail(ErrorCode::kInvalidInput, "noise at node " + std::to_string(l) +
                                         " must have length M_R" + std::to_string(l));
    }
  }
  NodeVectors y;
  for (int j = 1; j <= kNodes; ++j) {
    y[j - 1] = noise[j - 1];
    for (int i = 1; i <= kNodes; ++i) {
      if (i != j && x[i - 1].size() > 0) y[j - 1] += channels.h(i, j) * x[i - 1];
    }
  }
  return y;
}

}  // namespace mimo3way
