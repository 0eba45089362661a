#include "mimo3way/rate_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "mimo3way/allocation.hpp"
#include "mimo3way/error.hpp"

namespace mimo3way {

namespace {

double log2det_hermitian(const ComplexMatrix& a) {
  // a = I + PSD, so the Cholesky factor exists.
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success) fail(ErrorCode::kInternal, "log-det of a non-positive matrix");
  const auto& l = llt.matrixL();
  double acc = 0.0;
  for (Index i = 0; i < a.rows(); ++i) acc += std::log2(std::real(l(i, i)));
  return 2.0 * acc;
}

double unchecked_sum_rate(const SchemeInstance& s, const ChannelSet& channels, double snr,
                          ProjectorMode mode, std::uint64_t ablation_seed) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) fail(ErrorCode::kInvalidInput, "SNR must be finite and >= 0");
  const Rng ablation(ablation_seed);
  std::array<double, 3> power{};
  for (int i = 1; i <= kNodes; ++i) {
    const Index n = s.streams_from(i);
    power[i - 1] = n > 0 ? snr / static_cast<double>(n) : 0.0;
  }

  std::vector<std::optional<double>> broadcast_min(s.streams.size());
  double total = 0.0;
  for (std::size_t di = 0; di < s.decodings.size(); ++di) {
    const auto& d = s.decodings[di];
    const auto& st = s.streams[d.stream];
    const int j = d.receiver;
    const ComplexMatrix q = mode == ProjectorMode::kDesigned
                                ? d.q
                                : orthonormalize_columns(random_gaussian(d.q.rows(), d.q.cols(),
                                                                         ablation.split(di).seed()));
    const Index n = q.cols();
    ComplexMatrix interference = ComplexMatrix::Identity(n, n);
    for (std::size_t k = 0; k < s.streams.size(); ++k) {
      const auto& other = s.streams[k];
      if (k == d.stream || other.dim == 0 || other.from == j) continue;
      const ComplexMatrix g = q.adjoint() * channels.h(other.from, j) * other.t;
      interference += power[other.from - 1] * g * g.adjoint();
    }
    const ComplexMatrix g = q.adjoint() * channels.h(st.from, j) * st.t;
    const ComplexMatrix signal = interference + power[st.from - 1] * g * g.adjoint();
    const double rate = log2det_hermitian(signal) - log2det_hermitian(interference);
    if (st.to == 0) {
      auto& m = broadcast_min[d.stream];
      m = m ? std::min(*m, rate) : rate;
    } else {
      total += rate;
    }
  }
  for (const auto& m : broadcast_min) {
    if (m) total += 2.0 * *m;
  }
  return total / static_cast<double>(s.extension_factor());
}

double db_to_log2(double db) { return db / 10.0 * std::log2(10.0); }

}  // namespace

double sum_rate(const SchemeInstance& s, const ChannelSet& channels, double snr_linear, ProjectorMode mode,
                std::uint64_t ablation_seed) {
  if (mode == ProjectorMode::kDesigned) {
    const auto rep = verify_scheme(s, channels);
    if (!rep.valid) fail(ErrorCode::kValidation, "scheme does not verify: " + rep.failures.front());
  }
  return unchecked_sum_rate(s, channels, snr_linear, mode, ablation_seed);
}

const char* fit_name(SlopeFit fit) noexcept {
  return fit == SlopeFit::kTwoPoint ? "two-point" : "least-squares";
}

Rational theoretical_dof(SchemeKind kind, const AntennaConfig& cfg) {
  if (kind == SchemeKind::kBcast) return optimal_broadcast(cfg).optimal_dof;
  return optimal_unicast_closed_form(cfg).optimal_dof;
}

double fit_slope(const std::vector<double>& snr_db, const std::vector<double>& rate, SlopeFit fit) {
  if (snr_db.size() != rate.size() || snr_db.size() < 2) {
    fail(ErrorCode::kInvalidInput, "slope fit needs at least two (snr, rate) points");
  }
  std::vector<std::size_t> order(snr_db.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return snr_db[a] < snr_db[b]; });

  const std::size_t n = order.size();
  const std::size_t used = fit == SlopeFit::kTwoPoint ? 2 : std::max<std::size_t>(2, (n + 1) / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = n - used; i < n; ++i) {
    const double x = db_to_log2(snr_db[order[i]]);
    const double y = rate[order[i]];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(used);
  const double den = k * sxx - sx * sx;
  if (!(den > 0.0)) fail(ErrorCode::kInvalidInput, "slope fit needs distinct SNR points");
  return (k * sxy - sx * sy) / den;
}

SlopeEstimate estimate_dof(const AntennaConfig& cfg, SchemeKind kind, const std::vector<double>& snr_grid_db,
                           std::size_t trials, std::uint64_t seed, const SlopeOptions& options) {
  if (snr_grid_db.size() < 2) fail(ErrorCode::kInvalidInput, "SNR grid needs at least two points");
  if (*std::max_element(snr_grid_db.begin(), snr_grid_db.end()) < 30.0) {
    fail(ErrorCode::kInvalidInput, "largest SNR point must be >= 30 dB");
  }
  if (trials < 1) fail(ErrorCode::kInvalidInput, "trials must be >= 1");
  for (const double db : snr_grid_db) {
    if (!std::isfinite(db)) fail(ErrorCode::kInvalidInput, "SNR points must be finite");
  }
  scheme_layout(kind, cfg);  // surface precondition errors before spawning work

  std::vector<double> grid = snr_grid_db;
  std::sort(grid.begin(), grid.end());

  // Per-trial rates; empty when the draw did not verify.
  std::vector<std::vector<double>> rates(trials);
  auto run_trial = [&](std::size_t t) {
    const std::uint64_t trial_seed = Rng::derive(seed, t);
    const ChannelSet ch = draw_scheme_channels(kind, cfg, Rng::derive(trial_seed, 0));
    const SchemeInstance s = build_scheme(kind, cfg, ch, Rng::derive(trial_seed, 1));
    if (!verify_scheme(s, ch, {}, Rng::derive(trial_seed, 2)).valid) return;
    std::vector<double> r;
    r.reserve(grid.size());
    for (const double db : grid) {
      r.push_back(unchecked_sum_rate(s, ch, std::pow(10.0, db / 10.0), options.mode, Rng::derive(trial_seed, 3)));
    }
    rates[t] = std::move(r);
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
  if (threads <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < trials; t += threads) run_trial(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SlopeEstimate out{.kind = kind, .config = cfg, .snr_grid_db = grid, .mean_sum_rate_bits = {}, .theoretical_dof = {}};
  out.trials = trials;
  out.fit = options.fit;
  out.seed = seed;
  out.mean_sum_rate_bits.assign(grid.size(), 0.0);
  std::size_t valid = 0;
  for (const auto& r : rates) {  // merged in trial order
    if (r.empty()) continue;
    ++valid;
    for (std::size_t i = 0; i < grid.size(); ++i) out.mean_sum_rate_bits[i] += r[i];
  }
  out.skipped_trials = trials - valid;
  if (valid == 0) {
    fail(ErrorCode::kValidation, std::string(scheme_name(kind)) + ": the scheme failed verification on every draw");
  }
  for (auto& m : out.mean_sum_rate_bits) m /= static_cast<double>(valid);

  out.slope_dof = std::max(0.0, fit_slope(grid, out.mean_sum_rate_bits, options.fit));
  out.theoretical_dof = theoretical_dof(kind, cfg);
  out.abs_error = std::abs(out.slope_dof - to_double(out.theoretical_dof));
  return out;
}

}  // namespace mimo3way
