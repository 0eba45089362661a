#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mimo3way/channel_model.hpp"
#include "mimo3way/rational.hpp"

namespace mimo3way {

struct BoundTerm {
  std::string label;
  Rational value;
};

/// Every closed-form bound term for one split, plus the combined minima.
///
/// `terms` holds the per-cut and per-genie inequalities (useful to see which
/// node grouping is tight); `cutset_candidates` and `genie_candidates` are the
/// terms whose minimum forms the combined bound.
struct BoundReport {
  MessageConfig messages = MessageConfig::kUnicastOnly;
  std::vector<BoundTerm> terms;
  std::vector<BoundTerm> cutset_candidates;
  Rational combined_cutset;
  std::vector<BoundTerm> genie_candidates;     // unicast genie report only
  std::optional<Rational> combined_genie;
  std::vector<std::string> binding_terms;      // labels attaining combined()

  /// Genie-aided value when present, otherwise the cut-set value.
  Rational combined() const { return combined_genie ? *combined_genie : combined_cutset; }
};

BoundReport cutset_bound_unicast(const AntennaSplit& split);

/// Five-term genie-aided bound; the report also carries the cut-set terms and
/// the six three-message genie inequalities.
BoundReport genie_bound_unicast(const AntennaSplit& split);

/// Bound for the symmetric channel with mt transmit and mr receive antennas
/// at every node.
Rational symmetric_bound(const Rational& mt, const Rational& mr);

BoundReport cutset_bound_broadcast(const AntennaSplit& split);

// Value-only evaluators. Templated so exhaustive searches can run on scaled
// integers; T needs +, comparison and multiplication by int.

template <class T>
T unicast_cutset_value(const std::array<T, 3>& mt, const std::array<T, 3>& mr) {
  const T sum_t = mt[0] + mt[1] + mt[2];
  const T sum_r = mr[0] + mr[1] + mr[2];
  return std::min({mt[1] + mt[2] + mr[1] + mr[2], sum_t, sum_r});
}

template <class T>
T unicast_genie_value(const std::array<T, 3>& mt, const std::array<T, 3>& mr) {
  const T sum_t = mt[0] + mt[1] + mt[2];
  const T sum_r = mr[0] + mr[1] + mr[2];
  const T a = std::max(mr[1], mt[2]) + std::max(mr[2], mt[1]);
  const T b = std::max(mr[1], mt[0]) + std::max(mr[0], mt[1]);
  const T c = std::max(mr[2], mt[0]) + std::max(mr[0], mt[2]);
  return std::min({sum_t, sum_r, a, b, c});
}

template <class T>
T broadcast_cutset_value(const std::array<T, 3>& mt, const std::array<T, 3>& mr) {
  const T sum_t = mt[0] + mt[1] + mt[2];
  const T sum_r = mr[0] + mr[1] + mr[2];
  return std::min({sum_r, mt[1] + mt[2] + mr[1] + mr[2], mr[2] + mt[0] + mt[1] + mt[2] + mt[2],
                   sum_t + sum_t});
}

}  // namespace mimo3way
