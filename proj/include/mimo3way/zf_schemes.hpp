#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimo3way/channel_model.hpp"
#include "mimo3way/matrix_kernel.hpp"
#include "mimo3way/rational.hpp"

namespace mimo3way {

enum class SchemeKind { kUniA, kUniB, kBcast };

/// "uni-a", "uni-b", "bcast".
const char* scheme_name(SchemeKind kind) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view text);

/// One message and its precoder T (tx(from) x dim).
struct Stream {
  std::string label;       // e.g. "u12", "u3BC"
  int from = 0;
  int to = 0;              // 0 for a broadcast message
  Index dim = 0;
  ComplexMatrix t;
  int nulled_at = 0;       // receiver whose channel T lies in the null space of, or 0
};

/// Linear zero-forcing decoder of one stream at one receiver.
struct Decoding {
  std::size_t stream = 0;  // index into SchemeInstance::streams
  int receiver = 0;
  ComplexMatrix q;         // rx(receiver) x dim, orthonormal columns
  std::vector<std::size_t> zero_forced;  // streams the projector is designed to null
};

/// Antenna counts a scheme runs at: the config scaled by the symbol
/// extension, and the integer split at that scale.
struct SchemeLayout {
  SchemeKind kind;
  AntennaConfig scaled;
  AntennaSplit split;
  std::int64_t extension_factor = 1;
};

/// Validates the scheme's preconditions and fixes its split. Throws
/// regime-mismatch or precondition errors.
SchemeLayout scheme_layout(SchemeKind kind, const AntennaConfig& cfg);

struct SchemeInstance {
  SchemeKind kind;
  AntennaConfig config;
  SchemeLayout layout;
  std::vector<Stream> streams;
  std::vector<Decoding> decodings;

  const AntennaSplit& split() const { return layout.split; }
  std::int64_t extension_factor() const { return layout.extension_factor; }

  /// Stream counts per message, in DoF (dims over the extension factor).
  MessageSet messages() const;
  /// Sum of dims over all decodings (broadcast streams decode twice) per
  /// channel use.
  Rational claimed_dof() const;
  /// Total streams sent by a node.
  Index streams_from(int node) const;
};

/// Channels of the right shape for the scheme's layout.
ChannelSet draw_scheme_channels(SchemeKind kind, const AntennaConfig& cfg, std::uint64_t seed);

// `channels` must conform to scheme_layout(kind, cfg).split, i.e. be drawn at
// the extended size; otherwise invalid-input. `seed` drives the random
// precoders only.
SchemeInstance build_uni_a(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed);
SchemeInstance build_uni_b(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed);
SchemeInstance build_bcast(const AntennaConfig& cfg, const ChannelSet& channels, std::uint64_t seed);
SchemeInstance build_scheme(SchemeKind kind, const AntennaConfig& cfg, const ChannelSet& channels,
                            std::uint64_t seed);

struct VerifyThresholds {
  double residual = 1e-10;      // relative interference / null-space residual
  double conditioning = 1e-8;   // min singular value over max
  double decode = 1e-8;         // relative round-trip symbol error
};

struct InterferenceCheck {
  std::string stream;
  double residual = 0.0;        // ||Q^H H T|| / (||H|| ||T||)
};

struct DecodeCheck {
  std::string message;
  int receiver = 0;
  Index dim = 0;
  std::vector<InterferenceCheck> interference;
  double max_residual = 0.0;
  double projector_orthonormality = 0.0;  // ||Q^H Q - I||
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double decode_error = 0.0;
  bool passed = false;
};

struct PrecoderCheck {
  std::string label;
  Index rank = 0;
  Index cols = 0;
  std::optional<double> null_residual;    // ||H T|| / (||H|| ||T||) for null-space precoders
  bool passed = false;
};

struct VerificationReport {
  SchemeKind kind;
  bool valid = false;
  std::vector<PrecoderCheck> precoders;
  std::vector<DecodeCheck> decodings;
  std::vector<std::string> failures;   // labels of the failing checks
  Rational achieved_dof;               // passed decodings only
  Rational claimed_dof;
  std::int64_t extension_factor = 1;
};

/// Never throws on a failing check; failures land in the report.
VerificationReport verify_scheme(const SchemeInstance& s, const ChannelSet& channels,
                                 const VerifyThresholds& thresholds = {},
                                 std::uint64_t symbol_seed = 0x5eed);

}  // namespace mimo3way
