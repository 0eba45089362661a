#pragma once

#include <cstdint>
#include <vector>

#include "mimo3way/channel_model.hpp"
#include "mimo3way/rational.hpp"
#include "mimo3way/zf_schemes.hpp"

namespace mimo3way {

enum class ProjectorMode {
  kDesigned,
  kRandomAblation,   // projectors replaced by random orthonormal ones
};

/// Sum rate in bits per channel use with Gaussian inputs and equal power per
/// stream at each node. Broadcast messages count twice at the rate of their
/// weaker receiver; the result is divided by the extension factor.
/// Throws validation if the scheme does not verify on these channels
/// (designed mode only).
double sum_rate(const SchemeInstance& s, const ChannelSet& channels, double snr_linear,
                ProjectorMode mode = ProjectorMode::kDesigned, std::uint64_t ablation_seed = 0);

enum class SlopeFit {
  kTwoPoint,       // top two SNR points
  kLeastSquares,   // top half of the grid
};

const char* fit_name(SlopeFit fit) noexcept;

struct SlopeOptions {
  SlopeFit fit = SlopeFit::kTwoPoint;
  ProjectorMode mode = ProjectorMode::kDesigned;
  unsigned threads = 0;   // 0: hardware concurrency
};

struct SlopeEstimate {
  SchemeKind kind;
  AntennaConfig config;
  std::vector<double> snr_grid_db;          // ascending
  std::vector<double> mean_sum_rate_bits;
  double slope_dof = 0.0;
  std::size_t trials = 0;
  std::size_t skipped_trials = 0;           // draws on which the scheme did not verify
  Rational theoretical_dof;
  double abs_error = 0.0;
  SlopeFit fit = SlopeFit::kTwoPoint;
  std::uint64_t seed = 0;
};

/// Optimal DoF the scheme should reach: the unicast optimum for uni-a and
/// uni-b, M2 + M3 for bcast.
Rational theoretical_dof(SchemeKind kind, const AntennaConfig& cfg);

/// Slope of rate against log2(snr) at the top of the grid. Points need not be
/// sorted; throws invalid-input for fewer than two points.
double fit_slope(const std::vector<double>& snr_db, const std::vector<double>& rate, SlopeFit fit);

/// Needs >= 2 grid points with the largest >= 30 dB and trials >= 1. Trial t
/// uses seeds derived from (seed, t) only, so results do not depend on the
/// thread count.
SlopeEstimate estimate_dof(const AntennaConfig& cfg, SchemeKind kind, const std::vector<double>& snr_grid_db,
                           std::size_t trials, std::uint64_t seed, const SlopeOptions& options = {});

}  // namespace mimo3way
