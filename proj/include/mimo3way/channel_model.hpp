#pragma once

#include <array>
#include <cstdint>

#include "mimo3way/matrix_kernel.hpp"
#include "mimo3way/rational.hpp"

namespace mimo3way {

// Nodes are numbered 1, 2, 3 on every public surface.
inline constexpr int kNodes = 3;

/// Total antenna counts per node, ordered m1 >= m2 >= m3 >= 0.
class AntennaConfig {
 public:
  AntennaConfig(std::int64_t m1, std::int64_t m2, std::int64_t m3);

  /// Convenience for callers that do not care about node identity.
  static AntennaConfig sorted(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t m(int node) const;
  std::int64_t m1() const noexcept { return m_[0]; }
  std::int64_t m2() const noexcept { return m_[1]; }
  std::int64_t m3() const noexcept { return m_[2]; }
  const std::array<std::int64_t, 3>& counts() const noexcept { return m_; }

  AntennaConfig scaled(std::int64_t factor) const;

  friend bool operator==(const AntennaConfig&, const AntennaConfig&) = default;

 private:
  std::array<std::int64_t, 3> m_;
};

/// Transmit/receive partition of every node's antennas. Counts are exact
/// rationals so that fractional optima survive until symbol extension.
class AntennaSplit {
 public:
  AntennaSplit(std::array<Rational, 3> mt, std::array<Rational, 3> mr);

  static AntennaSplit from_receive(const AntennaConfig& cfg, const std::array<Rational, 3>& mr);
  static AntennaSplit from_transmit(const AntennaConfig& cfg, const std::array<Rational, 3>& mt);

  const Rational& mt(int node) const;
  const Rational& mr(int node) const;
  const std::array<Rational, 3>& transmit() const noexcept { return mt_; }
  const std::array<Rational, 3>& receive() const noexcept { return mr_; }
  Rational total(int node) const { return mt(node) + mr(node); }

  bool is_integer() const;
  bool matches(const AntennaConfig& cfg) const;

  /// Smallest factor that makes every count an integer (1 or 3 for optima).
  std::int64_t extension_factor() const;

  AntennaSplit scaled(std::int64_t factor) const;
  /// Roles of transmit and receive antennas exchanged at every node.
  AntennaSplit swapped() const { return AntennaSplit(mr_, mt_); }

  /// Integer views; throw invalid-input for fractional splits.
  Index tx(int node) const;
  Index rx(int node) const;

  friend bool operator==(const AntennaSplit&, const AntennaSplit&) = default;

 private:
  std::array<Rational, 3> mt_;
  std::array<Rational, 3> mr_;
};

enum class MessageConfig { kUnicastOnly, kUnicastAndBroadcast };

/// Stream (DoF) counts per message.
class MessageSet {
 public:
  explicit MessageSet(MessageConfig config = MessageConfig::kUnicastOnly) : config_(config) {}

  MessageConfig config() const noexcept { return config_; }

  const Rational& unicast(int from, int to) const;
  const Rational& broadcast(int from) const;
  void set_unicast(int from, int to, Rational d);
  void set_broadcast(int from, Rational d);

 private:
  MessageConfig config_;
  std::array<Rational, 6> unicast_{};
  std::array<Rational, 3> broadcast_{};
};

/// Unicast counts plus broadcast counts weighted by two.
Rational total_dof(const MessageSet& msgs);

/// Position of the ordered pair (from -> to) in {12, 13, 21, 23, 31, 32}.
int pair_index(int from, int to);

/// The six channel matrices H_{from,to}, each rx(to) x tx(from).
class ChannelSet {
 public:
  ChannelSet() = default;

  const ComplexMatrix& h(int from, int to) const { return h_[pair_index(from, to)]; }
  ComplexMatrix& h(int from, int to) { return h_[pair_index(from, to)]; }

  /// True if every matrix has the shape the split mandates.
  bool conforms_to(const AntennaSplit& split) const;

 private:
  std::array<ComplexMatrix, 6> h_;
};

/// Independent CN(0,1) channels; each pair uses its own child stream of seed.
ChannelSet draw_channels(const AntennaSplit& split, std::uint64_t seed);

using NodeVectors = std::array<ComplexVector, 3>;

/// y_j = sum_{i != j} H_ij x_i + z_j.
NodeVectors receive(const AntennaSplit& split, const ChannelSet& channels, const NodeVectors& x,
                    const NodeVectors& noise);

}  // namespace mimo3way
