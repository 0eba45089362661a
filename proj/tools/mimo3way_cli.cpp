// mimo3way-cli: bounds, allocation, scheme verification, slope estimation
// and sweeps over the C API.
#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mimo3way/mimo3way.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kInternal = 3 };

struct UsageError {
  std::string message;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int report_error(const std::string& code, const std::string& message, int exit_code) {
  std::fprintf(stderr, "error[%s]: %s\n", code.c_str(), one_line(message).c_str());
  return exit_code;
}

int status_exit(m3w_status s) {
  switch (s) {
    case M3W_OK: return kOk;
    case M3W_ERR_INTERNAL: return kInternal;
    case M3W_ERR_NULL_ARGUMENT: return kInternal;
    default: return kDomain;
  }
}

// Throws on failure so every command body reads straight through.
struct Failed {
  m3w_status status;
};

void check(m3w_status s) {
  if (s != M3W_OK) throw Failed{s};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw UsageError{what + ": '" + s + "' is not an integer"};
  return v;
}

m3w_rational parse_rational(const std::string& s, const std::string& what) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return {parse_int(s, what), 1};
  const auto den = parse_int(s.substr(slash + 1), what);
  if (den <= 0) throw UsageError{what + ": denominator must be positive in '" + s + "'"};
  return {parse_int(s.substr(0, slash), what), den};
}

template <class T, class Parse>
std::array<T, 3> parse_triple(const std::string& text, const std::string& what, Parse parse) {
  const auto parts = split_list(text);
  if (parts.size() != 3) throw UsageError{what + " expects three comma-separated values, got '" + text + "'"};
  return {parse(parts[0], what), parse(parts[1], what), parse(parts[2], what)};
}

std::array<std::int64_t, 3> parse_config(const std::string& text, bool sort) {
  auto m = parse_triple<std::int64_t>(text, "--m", parse_int);
  if (sort) std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

std::vector<double> parse_snr(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split_list(text)) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size() || !std::isfinite(v)) {
      throw UsageError{"--snr: '" + part + "' is not a number"};
    }
    out.push_back(v);
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("M3W_SEED")) {
    std::uint64_t v = 0;
    const std::string s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError{"M3W_SEED: '" + s + "' is not an unsigned integer"};
    return v;
  }
  return kDefaultSeed;
}

m3w_format format_of(const std::string& f) {
  if (f == "json") return M3W_FORMAT_JSON;
  if (f == "csv") return M3W_FORMAT_CSV;
  return M3W_FORMAT_TABLE;
}

m3w_messages messages_of(const std::string& m) {
  return m == "broadcast" ? M3W_MSGS_BROADCAST : M3W_MSGS_UNICAST;
}

m3w_scheme scheme_of(const std::string& s) {
  if (s == "uni-a") return M3W_SCHEME_UNI_A;
  if (s == "uni-b") return M3W_SCHEME_UNI_B;
  return M3W_SCHEME_BCAST;
}

// Owns a report and prints it.
class Report {
 public:
  Report() = default;
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  ~Report() { m3w_report_free(r_); }

  m3w_report** out() { return &r_; }

  void print(m3w_format format) {
    const char* text = nullptr;
    check(m3w_report_render(r_, format, &text));
    std::fputs(text, stdout);
  }

 private:
  m3w_report* r_ = nullptr;
};

struct Options {
  std::string m, mt, mr, msgs = "unicast", format, scheme, method = "enumerated", snr = "30,50", fit = "two-point";
  bool allocate = false, sort = false;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 50;
  std::int64_t denominator = 3;
  double tol = 0.2;
  unsigned threads = 0;
  std::int64_t m3 = 1, max = 10;
};

int cmd_bounds(const Options& o) {
  Report rep;
  if (o.allocate) {
    if (o.m.empty()) throw UsageError{"bounds --allocate needs --m"};
    const auto m = parse_config(o.m, o.sort);
    check(m3w_bounds_allocated(m.data(), messages_of(o.msgs), rep.out()));
  } else {
    if (!o.m.empty()) throw UsageError{"bounds --m needs --allocate; pass --mt and --mr for an explicit split"};
    if (o.mt.empty() || o.mr.empty()) throw UsageError{"bounds needs --mt and --mr, or --m with --allocate"};
    const auto mt = parse_triple<m3w_rational>(o.mt, "--mt", parse_rational);
    const auto mr = parse_triple<m3w_rational>(o.mr, "--mr", parse_rational);
    check(m3w_bounds(mt.data(), mr.data(), messages_of(o.msgs), rep.out()));
  }
  rep.print(format_of(o.format.empty() ? "table" : o.format));
  return kOk;
}

int cmd_allocate(const Options& o) {
  const auto m = parse_config(o.m, o.sort);
  const m3w_alloc_method method = o.method == "closed-form"  ? M3W_ALLOC_CLOSED_FORM
                                  : o.method == "bruteforce" ? M3W_ALLOC_BRUTEFORCE
                                                             : M3W_ALLOC_ENUMERATED;
  Report rep;
  check(m3w_allocate(m.data(), messages_of(o.msgs), method, o.denominator, rep.out()));
  rep.print(format_of(o.format.empty() ? "table" : o.format));
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto m = parse_config(o.m, o.sort);
  Report rep;
  int valid = 0;
  check(m3w_verify_scheme(m.data(), scheme_of(o.scheme), o.seed.value_or(default_seed()), rep.out(), &valid));
  rep.print(format_of(o.format.empty() ? "json" : o.format));
  if (!valid) return report_error("validation", "scheme " + o.scheme + " did not verify", kDomain);
  return kOk;
}

int cmd_slope(const Options& o) {
  const auto m = parse_config(o.m, o.sort);
  const auto grid = parse_snr(o.snr);
  const m3w_fit fit = o.fit == "least-squares" ? M3W_FIT_LEAST_SQUARES : M3W_FIT_TWO_POINT;
  Report rep;
  double slope = 0.0;
  m3w_rational theory{0, 1};
  check(m3w_estimate_dof(m.data(), scheme_of(o.scheme), grid.data(), grid.size(), o.trials,
                         o.seed.value_or(default_seed()), fit, o.threads, &slope, &theory, rep.out()));
  rep.print(format_of(o.format.empty() ? "table" : o.format));
  const double target = static_cast<double>(theory.num) / static_cast<double>(theory.den);
  if (!(std::abs(slope - target) <= o.tol)) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "slope %.4f is outside %.4f +- %.4f", slope, target, o.tol);
    return report_error("validation", msg, kDomain);
  }
  return kOk;
}

int cmd_sweep(const Options& o) {
  Report rep;
  check(m3w_sweep(o.m3, o.max, messages_of(o.msgs), rep.out()));
  rep.print(format_of(o.format.empty() ? "csv" : o.format));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degrees of freedom of the full-duplex MIMO 3-way channel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(m3w_version()));
  Options o;

  const std::vector<std::string> formats{"json", "csv", "table"};
  const std::vector<std::string> msg_kinds{"unicast", "broadcast"};
  const std::vector<std::string> schemes{"uni-a", "uni-b", "bcast"};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or table")->check(CLI::IsMember(formats));
  };
  auto config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--m", o.m, "antenna counts M1,M2,M3 with M1 >= M2 >= M3");
    if (required) opt->required();
    sub->add_flag("--sort", o.sort, "sort --m into descending order first");
  };
  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed (default: $M3W_SEED or 12345)");
  };

  auto* bounds = app.add_subcommand("bounds", "upper bounds on the total DoF of a split");
  config(bounds, false);
  bounds->add_option("--mt", o.mt, "transmit antennas M_T1,M_T2,M_T3 (integers or p/q)");
  bounds->add_option("--mr", o.mr, "receive antennas M_R1,M_R2,M_R3");
  bounds->add_option("--msgs", o.msgs, "unicast or broadcast")->check(CLI::IsMember(msg_kinds));
  bounds->add_flag("--allocate", o.allocate, "use the optimal split of --m");
  common(bounds);

  auto* allocate = app.add_subcommand("allocate", "optimal antenna allocation");
  config(allocate, true);
  allocate->add_option("--msgs", o.msgs, "unicast or broadcast")->check(CLI::IsMember(msg_kinds));
  allocate->add_option("--method", o.method, "closed-form, enumerated or bruteforce")
      ->check(CLI::IsMember({"closed-form", "enumerated", "bruteforce"}));
  allocate->add_option("--denominator", o.denominator, "grid step 1/q for bruteforce")->check(CLI::Range(1, 12));
  common(allocate);

  auto* verify = app.add_subcommand("verify-scheme", "build and verify a zero-forcing scheme");
  config(verify, true);
  verify->add_option("--scheme", o.scheme, "uni-a, uni-b or bcast")->required()->check(CLI::IsMember(schemes));
  seed(verify);
  common(verify);

  auto* slope = app.add_subcommand("slope", "Monte-Carlo high-SNR slope of the sum rate");
  config(slope, true);
  slope->add_option("--scheme", o.scheme, "uni-a, uni-b or bcast")->required()->check(CLI::IsMember(schemes));
  slope->add_option("--snr", o.snr, "SNR grid in dB, comma-separated");
  slope->add_option("--trials", o.trials, "channel draws")->check(CLI::Range(1, 100000));
  slope->add_option("--fit", o.fit, "two-point or least-squares")->check(CLI::IsMember({"two-point", "least-squares"}));
  slope->add_option("--tol", o.tol, "allowed |slope - theory| for exit status 0")->check(CLI::NonNegativeNumber);
  slope->add_option("--threads", o.threads, "worker threads, 0 for all cores");
  seed(slope);
  common(slope);

  auto* sweep = app.add_subcommand("sweep", "optimal DoF surface normalized by M3");
  sweep->add_option("--m3", o.m3, "fixed M3")->check(CLI::PositiveNumber);
  sweep->add_option("--max", o.max, "largest M1");
  sweep->add_option("--msgs", o.msgs, "unicast or broadcast")->check(CLI::IsMember(msg_kinds));
  common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  try {
    if (bounds->parsed()) return cmd_bounds(o);
    if (allocate->parsed()) return cmd_allocate(o);
    if (verify->parsed()) return cmd_verify(o);
    if (slope->parsed()) return cmd_slope(o);
    return cmd_sweep(o);
  } catch (const UsageError& e) {
    return report_error("usage", e.message, kUsage);
  } catch (const Failed& f) {
    return report_error(m3w_status_string(f.status), m3w_last_error(), status_exit(f.status));
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kInternal);
  }
}
