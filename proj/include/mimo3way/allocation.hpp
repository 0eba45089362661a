#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mimo3way/channel_model.hpp"
#include "mimo3way/linear_program.hpp"
#include "mimo3way/rational.hpp"

namespace mimo3way {

enum class Regime {
  kUnicastBalanced,   // M1 <= M2 + M3
  kUnicastDominant,   // M1 >= M2 + M3
  kBroadcast,
};

const char* regime_name(Regime r) noexcept;

struct ClosedFormCertificate {
  std::string formula;
};

/// Primal/dual pair of the LP subproblem that attains the optimum.
struct DualityCertificate {
  LinearProgram lp;
  std::uint8_t subproblem = 0;   // branch pattern, see unicast_subproblem_lp
  std::vector<Rational> primal;  // [d, M_R1, M_R2, M_R3]
  std::vector<Rational> dual;
  Rational gap;
};

struct GridSearchCertificate {
  std::int64_t denominator = 1;
  std::size_t points = 0;
};

using Certificate = std::variant<ClosedFormCertificate, DualityCertificate, GridSearchCertificate>;

/// Range of total transmit antennas for which a broadcast split is optimal.
struct TransmitBand {
  Rational sum_mt_min;
  Rational sum_mt_max;
};

struct AllocationResult {
  Rational optimal_dof;
  AntennaSplit split;
  Certificate certificate;
  Regime regime;
  std::int64_t extension_factor = 1;         // lcm of the split and DoF denominators
  std::optional<TransmitBand> band;          // broadcast only
  std::size_t subproblems_solved = 0;        // enumerated solver only
  std::size_t subproblems_feasible = 0;
};

AllocationResult optimal_unicast_closed_form(const AntennaConfig& cfg);

enum class SubproblemSet {
  kAll,               // all 64 branch patterns
  kMirrorReduced,     // one representative per Tx/Rx mirror orbit (36 patterns)
};

/// Splits the non-convex allocation problem into one LP per choice of branch
/// in each of the six max-terms and solves every LP exactly.
AllocationResult optimal_unicast_enumerated(const AntennaConfig& cfg,
                                            SubproblemSet set = SubproblemSet::kMirrorReduced);

/// Exhaustive search over every split on the 1/denominator grid.
AllocationResult optimal_unicast_bruteforce(const AntennaConfig& cfg, std::int64_t denominator);

AllocationResult optimal_broadcast(const AntennaConfig& cfg);

/// True iff a transmit vector lies in the optimal broadcast set: M2 <= sum(mt)
/// <= M1 and 0 <= mt_l <= M_l.
bool in_broadcast_band(const AntennaConfig& cfg, const std::array<Rational, 3>& mt);

// Branch pattern bits. Bit k selects the receive-side argument of max-term k:
//   k=0 max{M_R2,M_T3}  k=1 max{M_R3,M_T2}  k=2 max{M_R2,M_T1}
//   k=3 max{M_R1,M_T2}  k=4 max{M_R3,M_T1}  k=5 max{M_R1,M_T3}
inline constexpr std::uint8_t kSubproblemCount = 64;

/// The pattern reached by exchanging every node's transmit and receive roles.
std::uint8_t mirror_pattern(std::uint8_t pattern) noexcept;

/// Smallest pattern of every mirror orbit, ascending.
std::vector<std::uint8_t> mirror_representatives();

/// Variables [d, M_R1, M_R2, M_R3]; minimise -d. Rows:
///   1-3   the three max-sum bounds under the pattern
///   4-6   M_Rl <= M_l        7  -d <= 0        8-10  -M_Rl <= 0
///   11-16 branch conditions for terms 0..5
///   17-18 d <= sum M_T, d <= sum M_R (when include_sum_rows)
LinearProgram unicast_subproblem_lp(const AntennaConfig& cfg, std::uint8_t pattern,
                                    bool include_sum_rows = true);

/// Branch pattern of the hand-solved balanced-regime subproblem: receive side
/// for terms 0 and 1, transmit side for the rest.
inline constexpr std::uint8_t kBalancedPattern = 0b000011;

/// The balanced subproblem in its textbook 17-row form: rows 1-16 as above,
/// the sum rows dropped, and row 17 the regime condition 0 <= M2 + M3 - M1.
LinearProgram balanced_subproblem_lp(const AntennaConfig& cfg);

/// Closed-form optimal primal/dual pair of balanced_subproblem_lp:
/// v = [(2M1+M2+M3)/3, 0, (M1+2M2-M3)/3, (M1+2M3-M2)/3] and
/// lambda = 1/3, 1/3, 1/3, 2/3 on rows 1, 2, 3, 8.
struct PrimalDualPair {
  std::vector<Rational> primal;
  std::vector<Rational> dual;
};
PrimalDualPair balanced_subproblem_pair(const AntennaConfig& cfg);

}  // namespace mimo3way
