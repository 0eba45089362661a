#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimo3way/allocation.hpp"
#include "mimo3way/dof_bounds.hpp"
#include "mimo3way/rate_simulator.hpp"
#include "mimo3way/zf_schemes.hpp"

namespace mimo3way {

enum class Format { kJson, kCsv, kTable };

std::optional<Format> parse_format(std::string_view text);

/// JSON keeps exact "p/q" rationals; CSV and tables print 4-decimal values.
/// Every rendering ends with a newline.
std::string render_bounds(const BoundReport& report, const AntennaSplit& split,
                          const AllocationResult* allocation, Format format);
std::string render_allocation(const AllocationResult& result, const AntennaConfig& cfg,
                              std::string_view method, Format format);
std::string render_verification(const VerificationReport& report, const SchemeInstance& scheme,
                                std::uint64_t seed, Format format);
/// CSV is the two plot-ready columns snr_db,mean_rate.
std::string render_slope(const SlopeEstimate& estimate, Format format);

/// One point of the normalized optimal-DoF surface.
struct SweepPoint {
  AntennaConfig config;
  Rational m1_over_m3;
  Rational m2_over_m3;
  Rational dof_over_m3;
};

/// Every integer config with m3 <= M2 <= M1 <= m_max, optimum from the
/// closed forms. Throws invalid-input for m3 < 1 or m_max < m3.
std::vector<SweepPoint> sweep_surface(std::int64_t m3, std::int64_t m_max, MessageConfig messages);

std::string render_sweep(const std::vector<SweepPoint>& points, MessageConfig messages, Format format);

}  // namespace mimo3way
