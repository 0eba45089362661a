#include "mimo3way/serialize.hpp"

#include <type_traits>

namespace mimo3way {

namespace {

template <class Range>
Json rational_array(const Range& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

Json terms_json(const std::vector<BoundTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back({{"label", t.label}, {"value", to_json(t.value)}});
  return out;
}

}  // namespace

const char* messages_name(MessageConfig config) noexcept {
  return config == MessageConfig::kUnicastOnly ? "unicast" : "broadcast";
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const AntennaConfig& cfg) { return {{"m", {cfg.m1(), cfg.m2(), cfg.m3()}}}; }

Json to_json(const AntennaSplit& split) {
  return {{"mt", rational_array(split.transmit())}, {"mr", rational_array(split.receive())}};
}

Json to_json(const MessageSet& msgs) {
  Json unicast = Json::object();
  for (int i = 1; i <= kNodes; ++i) {
    for (int j = 1; j <= kNodes; ++j) {
      if (i != j) unicast["d" + std::to_string(i) + std::to_string(j)] = to_json(msgs.unicast(i, j));
    }
  }
  Json out{{"config", messages_name(msgs.config())}, {"unicast", unicast}};
  if (msgs.config() == MessageConfig::kUnicastAndBroadcast) {
    Json bc = Json::object();
    for (int k = 1; k <= kNodes; ++k) bc["d" + std::to_string(k) + "BC"] = to_json(msgs.broadcast(k));
    out["broadcast"] = bc;
  }
  out["total_dof"] = to_json(total_dof(msgs));
  return out;
}

Json to_json(const BoundReport& report) {
  Json out{{"messages", messages_name(report.messages)},
           {"terms", terms_json(report.terms)},
           {"cutset_candidates", terms_json(report.cutset_candidates)},
           {"combined_cutset", to_json(report.combined_cutset)}};
  if (report.combined_genie) {
    out["genie_candidates"] = terms_json(report.genie_candidates);
    out["combined_genie"] = to_json(*report.combined_genie);
  }
  out["combined"] = to_json(report.combined());
  out["binding_terms"] = report.binding_terms;
  return out;
}

Json to_json(const LinearProgram& lp) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    Json row{{"a", rational_array(lp.a[r])}, {"b", to_json(lp.b[r])}};
    if (r < lp.constraints.size()) row["label"] = lp.constraints[r];
    rows.push_back(std::move(row));
  }
  return {{"variables", lp.variables}, {"c", rational_array(lp.c)}, {"constraints", rows}};
}

Json to_json(const AllocationResult& result) {
  Json out{{"regime", regime_name(result.regime)},
           {"optimal_dof", to_json(result.optimal_dof)},
           {"split", to_json(result.split)},
           {"extension_factor", result.extension_factor}};
  if (result.band) {
    out["optimal_band"] = {{"sum_mt_min", to_json(result.band->sum_mt_min)},
                           {"sum_mt_max", to_json(result.band->sum_mt_max)}};
  }
  out["certificate"] = std::visit(
      [](const auto& c) -> Json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ClosedFormCertificate>) {
          return {{"kind", "closed-form"}, {"formula", c.formula}};
        } else if constexpr (std::is_same_v<T, DualityCertificate>) {
          return {{"kind", "duality-pair"},
                  {"subproblem", c.subproblem},
                  {"primal", rational_array(c.primal)},
                  {"dual", rational_array(c.dual)},
                  {"gap", to_json(c.gap)},
                  {"lp", to_json(c.lp)}};
        } else {
          return {{"kind", "grid-search"}, {"denominator", c.denominator}, {"points", c.points}};
        }
      },
      result.certificate);
  if (result.subproblems_solved > 0) {
    out["subproblems"] = {{"solved", result.subproblems_solved}, {"feasible", result.subproblems_feasible}};
  }
  return out;
}

Json to_json(const SchemeInstance& scheme) {
  Json streams = Json::array();
  for (const auto& st : scheme.streams) {
    streams.push_back({{"message", st.label},
                       {"from", st.from},
                       {"to", st.to == 0 ? Json("BC") : Json(st.to)},
                       {"dim", st.dim}});
  }
  return {{"scheme", scheme_name(scheme.kind)},
          {"config", to_json(scheme.config)},
          {"scaled_config", to_json(scheme.layout.scaled)},
          {"split", to_json(scheme.split())},
          {"extension_factor", scheme.extension_factor()},
          {"streams", streams},
          {"messages", to_json(scheme.messages())},
          {"claimed_dof", to_json(scheme.claimed_dof())}};
}

Json to_json(const VerificationReport& report) {
  Json precoders = Json::array();
  for (const auto& p : report.precoders) {
    Json j{{"label", p.label}, {"rank", p.rank}, {"cols", p.cols}};
    if (p.null_residual) j["null_residual"] = *p.null_residual;
    j["passed"] = p.passed;
    precoders.push_back(std::move(j));
  }
  Json decodings = Json::array();
  for (const auto& d : report.decodings) {
    Json interference = Json::array();
    for (const auto& i : d.interference) interference.push_back({{"stream", i.stream}, {"residual", i.residual}});
    const double cond = d.sigma_min > 0.0 ? d.sigma_max / d.sigma_min : -1.0;
    decodings.push_back({{"message", d.message},
                         {"receiver", d.receiver},
                         {"dim", d.dim},
                         {"interference", interference},
                         {"max_residual", d.max_residual},
                         {"projector_orthonormality", d.projector_orthonormality},
                         {"sigma_min", d.sigma_min},
                         {"sigma_max", d.sigma_max},
                         {"condition_number", cond < 0.0 ? Json(nullptr) : Json(cond)},
                         {"decode_error", d.decode_error},
                         {"passed", d.passed}});
  }
  return {{"scheme", scheme_name(report.kind)},
          {"status", report.valid ? "Valid" : "Invalid"},
          {"achieved_dof", to_json(report.achieved_dof)},
          {"claimed_dof", to_json(report.claimed_dof)},
          {"extension_factor", report.extension_factor},
          {"failures", report.failures},
          {"precoders", precoders},
          {"decodings", decodings}};
}

Json to_json(const SlopeEstimate& e) {
  return {{"scheme", scheme_name(e.kind)},
          {"config", to_json(e.config)},
          {"seed", e.seed},
          {"trials", e.trials},
          {"skipped_trials", e.skipped_trials},
          {"fit", fit_name(e.fit)},
          {"snr_grid_db", e.snr_grid_db},
          {"mean_sum_rate_bits", e.mean_sum_rate_bits},
          {"slope_dof", e.slope_dof},
          {"theoretical_dof", to_json(e.theoretical_dof)},
          {"abs_error", e.abs_error}};
}

}  // namespace mimo3way
