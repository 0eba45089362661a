#include "mimo3way/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mimo3way/error.hpp"
#include "mimo3way/serialize.hpp"

namespace mimo3way {

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "table") return Format::kTable;
  return std::nullopt;
}

namespace {

using Row = std::vector<std::string>;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fixed(double x, int places = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string dec(const Rational& r) { return to_decimal(r, 4); }

std::string triple(const std::array<Rational, 3>& v) {
  return "(" + dec(v[0]) + ", " + dec(v[1]) + ", " + dec(v[2]) + ")";
}

// Quotes a CSV field when needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv(const Row& header, const std::vector<Row>& rows) {
  std::ostringstream os;
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

// Display width in code points, so labels such as "ΣM_T" line up.
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string table(const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = width(header[i]);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], width(r[i]));
  }
  std::ostringstream os;
  auto line = [&](const Row& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += "  ";
      s += r[i];
      if (i + 1 < r.size()) s.append(w[i] - width(r[i]), ' ');
    }
    os << s << "\n";
  };
  line(header);
  std::size_t total = 0;
  for (const auto x : w) total += x;
  os << std::string(total + 2 * (w.size() - 1), '-') << "\n";
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace

std::string render_bounds(const BoundReport& report, const AntennaSplit& split,
                          const AllocationResult* allocation, Format format) {
  if (format == Format::kJson) {
    Json out{{"split", to_json(split)}};
    if (allocation) out["allocation"] = to_json(*allocation);
    out["bounds"] = to_json(report);
    return dump(out);
  }
  const auto binding = [&](const std::string& label) {
    return std::find(report.binding_terms.begin(), report.binding_terms.end(), label) !=
           report.binding_terms.end();
  };
  std::vector<Row> rows;
  for (const auto& t : report.terms) rows.push_back({"term", t.label, dec(t.value), ""});
  for (const auto& t : report.cutset_candidates) {
    rows.push_back({"cutset", t.label, dec(t.value), !report.combined_genie && binding(t.label) ? "*" : ""});
  }
  for (const auto& t : report.genie_candidates) {
    rows.push_back({"genie", t.label, dec(t.value), binding(t.label) ? "*" : ""});
  }
  rows.push_back({"combined", "cutset", dec(report.combined_cutset), ""});
  if (report.combined_genie) rows.push_back({"combined", "genie", dec(*report.combined_genie), ""});
  rows.push_back({"combined", "bound", dec(report.combined()), ""});

  if (format == Format::kCsv) return csv({"kind", "label", "value", "binding"}, rows);
  std::string head = std::string("messages: ") + messages_name(report.messages) +
                     "\nsplit: M_T = " + triple(split.transmit()) + ", M_R = " + triple(split.receive()) + "\n";
  if (allocation) head += "allocated: optimal DoF " + dec(allocation->optimal_dof) + "\n";
  std::string tail = "binding:";
  for (const auto& b : report.binding_terms) tail += " " + b;
  return head + "\n" + table({"kind", "label", "value", "binding"}, rows) + "\n" + tail + "\n";
}

std::string render_allocation(const AllocationResult& result, const AntennaConfig& cfg, std::string_view method,
                              Format format) {
  if (format == Format::kJson) {
    Json out{{"config", to_json(cfg)}, {"method", std::string(method)}};
    const Json body = to_json(result);
    for (const auto& [k, v] : body.items()) out[k] = v;
    return dump(out);
  }
  std::vector<Row> rows{
      {"config", std::to_string(cfg.m1()) + "," + std::to_string(cfg.m2()) + "," + std::to_string(cfg.m3())},
      {"method", std::string(method)},
      {"regime", regime_name(result.regime)},
      {"optimal_dof", dec(result.optimal_dof)},
      {"optimal_dof_exact", to_string(result.optimal_dof)},
      {"mt", triple(result.split.transmit())},
      {"mr", triple(result.split.receive())},
      {"extension_factor", std::to_string(result.extension_factor)},
  };
  if (result.band) {
    rows.push_back({"band_sum_mt", "[" + dec(result.band->sum_mt_min) + ", " + dec(result.band->sum_mt_max) + "]"});
  }
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ClosedFormCertificate>) {
          rows.push_back({"certificate", "closed-form " + c.formula});
        } else if constexpr (std::is_same_v<T, DualityCertificate>) {
          rows.push_back({"certificate", "duality-pair, subproblem " + std::to_string(c.subproblem) +
                                             ", gap " + to_string(c.gap)});
        } else {
          rows.push_back({"certificate", "grid-search 1/" + std::to_string(c.denominator) + ", " +
                                             std::to_string(c.points) + " points"});
        }
      },
      result.certificate);
  if (format == Format::kCsv) return csv({"field", "value"}, rows);
  return table({"field", "value"}, rows);
}

std::string render_verification(const VerificationReport& report, const SchemeInstance& scheme, std::uint64_t seed,
                                Format format) {
  if (format == Format::kJson) {
    Json out{{"seed", seed}, {"instance", to_json(scheme)}};
    const Json body = to_json(report);
    for (const auto& [k, v] : body.items()) out[k] = v;
    return dump(out);
  }
  std::vector<Row> rows;
  for (const auto& d : report.decodings) {
    rows.push_back({d.message, std::to_string(d.receiver), std::to_string(d.dim), sci(d.max_residual),
                    sci(d.sigma_min), sci(d.sigma_max), sci(d.decode_error), d.passed ? "yes" : "no"});
  }
  const Row header{"message", "receiver", "dim", "max_residual", "sigma_min", "sigma_max", "decode_error", "passed"};
  if (format == Format::kCsv) return csv(header, rows);
  std::string out = std::string("scheme ") + scheme_name(report.kind) + ", seed " + std::to_string(seed) +
                    ", extension " + std::to_string(report.extension_factor) + "\n\n" + table(header, rows) +
                    "\nstatus: " + (report.valid ? "Valid" : "Invalid") + "\nachieved DoF: " +
                    dec(report.achieved_dof) + " (claimed " + dec(report.claimed_dof) + ")\n";
  for (const auto& f : report.failures) out += "failure: " + f + "\n";
  return out;
}

std::string render_slope(const SlopeEstimate& e, Format format) {
  if (format == Format::kJson) return dump(to_json(e));
  std::vector<Row> rows;
  for (std::size_t i = 0; i < e.snr_grid_db.size(); ++i) {
    rows.push_back({fixed(e.snr_grid_db[i]), fixed(e.mean_sum_rate_bits[i])});
  }
  if (format == Format::kCsv) return csv({"snr_db", "mean_rate"}, rows);
  return std::string("scheme ") + scheme_name(e.kind) + ", " + std::to_string(e.trials) + " trials (" +
         std::to_string(e.skipped_trials) + " skipped), seed " + std::to_string(e.seed) + "\n\n" +
         table({"snr_db", "mean_rate"}, rows) + "\nslope (" + fit_name(e.fit) + "): " + fixed(e.slope_dof) +
         "\ntheoretical DoF: " + dec(e.theoretical_dof) + "\nabs error: " + fixed(e.abs_error) + "\n";
}

std::vector<SweepPoint> sweep_surface(std::int64_t m3, std::int64_t m_max, MessageConfig messages) {
  if (m3 < 1) fail(ErrorCode::kInvalidInput, "sweep needs M3 >= 1");
  if (m_max < m3) fail(ErrorCode::kInvalidInput, "sweep needs max >= M3");
  if (m_max > 1000) fail(ErrorCode::kInvalidInput, "sweep max is capped at 1000");
  std::vector<SweepPoint> out;
  for (std::int64_t m1 = m3; m1 <= m_max; ++m1) {
    for (std::int64_t m2 = m3; m2 <= m1; ++m2) {
      const AntennaConfig cfg(m1, m2, m3);
      const Rational d = messages == MessageConfig::kUnicastOnly ? optimal_unicast_closed_form(cfg).optimal_dof
                                                                 : optimal_broadcast(cfg).optimal_dof;
      out.push_back({cfg, Rational(m1, m3), Rational(m2, m3), d / m3});
    }
  }
  return out;
}

std::string render_sweep(const std::vector<SweepPoint>& points, MessageConfig messages, Format format) {
  if (format == Format::kJson) {
    Json arr = Json::array();
    for (const auto& p : points) {
      arr.push_back({{"m", {p.config.m1(), p.config.m2(), p.config.m3()}},
                     {"m1_over_m3", to_json(p.m1_over_m3)},
                     {"m2_over_m3", to_json(p.m2_over_m3)},
                     {"dof_over_m3", to_json(p.dof_over_m3)}});
    }
    return dump(Json{{"messages", messages_name(messages)}, {"points", arr}});
  }
  std::vector<Row> rows;
  for (const auto& p : points) rows.push_back({dec(p.m1_over_m3), dec(p.m2_over_m3), dec(p.dof_over_m3)});
  const Row header{"m1_over_m3", "m2_over_m3", "dof_over_m3"};
  return format == Format::kCsv ? csv(header, rows) : table(header, rows);
}

}  // namespace mimo3way
