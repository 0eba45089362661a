#include "mimo3way/mimo3way.h"

#include <array>
#include <exception>
#include <functional>
#include <map>
#include <new>
#include <string>
#include <vector>

#include "mimo3way/allocation.hpp"
#include "mimo3way/dof_bounds.hpp"
#include "mimo3way/error.hpp"
#include "mimo3way/rate_simulator.hpp"
#include "mimo3way/report.hpp"
#include "mimo3way/zf_schemes.hpp"

using namespace mimo3way;

struct m3w_report {
  std::function<std::string(Format)> render;
  std::map<Format, std::string> cache;
};

namespace {

thread_local std::string last_error;

m3w_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return M3W_ERR_INVALID_INPUT;
    case ErrorCode::kRegimeMismatch: return M3W_ERR_REGIME_MISMATCH;
    case ErrorCode::kPrecondition: return M3W_ERR_PRECONDITION;
    case ErrorCode::kValidation: return M3W_ERR_VALIDATION;
    case ErrorCode::kInternal: return M3W_ERR_INTERNAL;
  }
  return M3W_ERR_INTERNAL;
}

template <class Body>
m3w_status guarded(Body&& body) {
  last_error.clear();
  try {
    body();
    return M3W_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return M3W_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return M3W_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return M3W_ERR_INTERNAL;
  }
}

AntennaConfig config_of(const int64_t m[3]) { return AntennaConfig(m[0], m[1], m[2]); }

MessageConfig messages_of(m3w_messages msgs) {
  switch (msgs) {
    case M3W_MSGS_UNICAST: return MessageConfig::kUnicastOnly;
    case M3W_MSGS_BROADCAST: return MessageConfig::kUnicastAndBroadcast;
  }
  fail(ErrorCode::kInvalidInput, "unknown message configuration");
}

SchemeKind scheme_of(m3w_scheme s) {
  switch (s) {
    case M3W_SCHEME_UNI_A: return SchemeKind::kUniA;
    case M3W_SCHEME_UNI_B: return SchemeKind::kUniB;
    case M3W_SCHEME_BCAST: return SchemeKind::kBcast;
  }
  fail(ErrorCode::kInvalidInput, "unknown scheme");
}

Rational rational_of(const m3w_rational& r) {
  if (r.den == 0) fail(ErrorCode::kInvalidInput, "rational with zero denominator");
  return Rational(r.num, r.den);
}

m3w_rational to_c(const Rational& r) { return {r.numerator(), r.denominator()}; }

BoundReport bounds_for(const AntennaSplit& split, MessageConfig msgs) {
  return msgs == MessageConfig::kUnicastOnly ? genie_bound_unicast(split) : cutset_bound_broadcast(split);
}

AllocationResult optimum(const AntennaConfig& cfg, MessageConfig msgs) {
  return msgs == MessageConfig::kUnicastOnly ? optimal_unicast_closed_form(cfg) : optimal_broadcast(cfg);
}

void emit(m3w_report** out, std::function<std::string(Format)> render) {
  if (!out) return;
  *out = new m3w_report{std::move(render), {}};
}

}  // namespace

#define M3W_REQUIRE(ptr)                    \
  do {                                      \
    if ((ptr) == nullptr) {                 \
      last_error = #ptr " must not be NULL"; \
      return M3W_ERR_NULL_ARGUMENT;         \
    }                                       \
  } while (0)

extern "C" {

const char* m3w_version(void) { return "0.1.0"; }

const char* m3w_status_string(m3w_status status) {
  switch (status) {
    case M3W_OK: return "ok";
    case M3W_ERR_INVALID_INPUT: return "invalid-input";
    case M3W_ERR_REGIME_MISMATCH: return "regime-mismatch";
    case M3W_ERR_PRECONDITION: return "precondition";
    case M3W_ERR_VALIDATION: return "validation";
    case M3W_ERR_INTERNAL: return "internal";
    case M3W_ERR_NULL_ARGUMENT: return "null-argument";
  }
  return "unknown";
}

const char* m3w_last_error(void) { return last_error.c_str(); }

m3w_status m3w_bounds(const m3w_rational mt[3], const m3w_rational mr[3], m3w_messages msgs, m3w_report** out) {
  M3W_REQUIRE(mt);
  M3W_REQUIRE(mr);
  M3W_REQUIRE(out);
  return guarded([&] {
    const AntennaSplit split({rational_of(mt[0]), rational_of(mt[1]), rational_of(mt[2])},
                             {rational_of(mr[0]), rational_of(mr[1]), rational_of(mr[2])});
    auto report = bounds_for(split, messages_of(msgs));
    emit(out, [report = std::move(report), split](Format f) { return render_bounds(report, split, nullptr, f); });
  });
}

m3w_status m3w_bounds_allocated(const int64_t m[3], m3w_messages msgs, m3w_report** out) {
  M3W_REQUIRE(m);
  M3W_REQUIRE(out);
  return guarded([&] {
    const auto mc = messages_of(msgs);
    auto alloc = optimum(config_of(m), mc);
    auto report = bounds_for(alloc.split, mc);
    emit(out, [report = std::move(report), alloc = std::move(alloc)](Format f) {
      return render_bounds(report, alloc.split, &alloc, f);
    });
  });
}

m3w_status m3w_allocate(const int64_t m[3], m3w_messages msgs, m3w_alloc_method method, int64_t denominator,
                        m3w_report** out) {
  M3W_REQUIRE(m);
  M3W_REQUIRE(out);
  return guarded([&] {
    const AntennaConfig cfg = config_of(m);
    std::string name;
    std::optional<AllocationResult> r;
    if (messages_of(msgs) == MessageConfig::kUnicastAndBroadcast) {
      name = "closed-form";
      r = optimal_broadcast(cfg);
    } else {
      switch (method) {
        case M3W_ALLOC_CLOSED_FORM:
          name = "closed-form";
          r = optimal_unicast_closed_form(cfg);
          break;
        case M3W_ALLOC_ENUMERATED:
          name = "enumerated";
          r = optimal_unicast_enumerated(cfg);
          break;
        case M3W_ALLOC_BRUTEFORCE:
          name = "bruteforce";
          r = optimal_unicast_bruteforce(cfg, denominator);
          break;
        default: fail(ErrorCode::kInvalidInput, "unknown allocation method");
      }
    }
    emit(out, [r = std::move(*r), cfg, name](Format f) { return render_allocation(r, cfg, name, f); });
  });
}

m3w_status m3w_optimal_dof(const int64_t m[3], m3w_messages msgs, m3w_rational* dof) {
  M3W_REQUIRE(m);
  M3W_REQUIRE(dof);
  return guarded([&] { *dof = to_c(optimum(config_of(m), messages_of(msgs)).optimal_dof); });
}

m3w_status m3w_verify_scheme(const int64_t m[3], m3w_scheme scheme, uint64_t seed, m3w_report** out, int* valid) {
  M3W_REQUIRE(m);
  return guarded([&] {
    const AntennaConfig cfg = config_of(m);
    const SchemeKind kind = scheme_of(scheme);
    // Channels and precoders use independent child streams of the seed.
    const ChannelSet ch = draw_scheme_channels(kind, cfg, Rng::derive(seed, 0));
    SchemeInstance s = build_scheme(kind, cfg, ch, Rng::derive(seed, 1));
    VerificationReport rep = verify_scheme(s, ch, {}, Rng::derive(seed, 2));
    if (valid) *valid = rep.valid ? 1 : 0;
    emit(out, [rep = std::move(rep), s = std::move(s), seed](Format f) {
      return render_verification(rep, s, seed, f);
    });
  });
}

m3w_status m3w_estimate_dof(const int64_t m[3], m3w_scheme scheme, const double* snr_db, size_t n_snr,
                            size_t trials, uint64_t seed, m3w_fit fit, unsigned threads, double* slope,
                            m3w_rational* theoretical, m3w_report** out) {
  M3W_REQUIRE(m);
  if (n_snr > 0) M3W_REQUIRE(snr_db);
  return guarded([&] {
    SlopeOptions opt;
    opt.threads = threads;
    switch (fit) {
      case M3W_FIT_TWO_POINT: opt.fit = SlopeFit::kTwoPoint; break;
      case M3W_FIT_LEAST_SQUARES: opt.fit = SlopeFit::kLeastSquares; break;
      default: fail(ErrorCode::kInvalidInput, "unknown slope fit");
    }
    const std::vector<double> grid(snr_db, snr_db + n_snr);
    auto e = estimate_dof(config_of(m), scheme_of(scheme), grid, trials, seed, opt);
    if (slope) *slope = e.slope_dof;
    if (theoretical) *theoretical = to_c(e.theoretical_dof);
    emit(out, [e = std::move(e)](Format f) { return render_slope(e, f); });
  });
}

m3w_status m3w_sweep(int64_t m3, int64_t m_max, m3w_messages msgs, m3w_report** out) {
  M3W_REQUIRE(out);
  return guarded([&] {
    const auto mc = messages_of(msgs);
    auto points = sweep_surface(m3, m_max, mc);
    emit(out, [points = std::move(points), mc](Format f) { return render_sweep(points, mc, f); });
  });
}

m3w_status m3w_report_render(m3w_report* report, m3w_format format, const char** text) {
  M3W_REQUIRE(report);
  M3W_REQUIRE(text);
  return guarded([&] {
    Format f;
    switch (format) {
      case M3W_FORMAT_JSON: f = Format::kJson; break;
      case M3W_FORMAT_CSV: f = Format::kCsv; break;
      case M3W_FORMAT_TABLE: f = Format::kTable; break;
      default: fail(ErrorCode::kInvalidInput, "unknown output format");
    }
    auto it = report->cache.find(f);
    if (it == report->cache.end()) it = report->cache.emplace(f, report->render(f)).first;
    *text = it->second.c_str();
  });
}

void m3w_report_free(m3w_report* report) { delete report; }

}  // extern "C"
