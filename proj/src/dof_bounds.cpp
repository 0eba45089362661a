#include "mimo3way/dof_bounds.hpp"

#include "mimo3way/error.hpp"

namespace mimo3way {

namespace {

Rational min_of(const std::vector<BoundTerm>& terms) {
  Rational best = terms.front().value;
  for (const auto& t : terms) best = rmin(best, t.value);
  return best;
}

std::vector<std::string> attaining(const std::vector<BoundTerm>& terms, const Rational& value) {
  std::vector<std::string> out;
  for (const auto& t : terms) {
    if (t.value == value) out.push_back(t.label);
  }
  return out;
}

// Single-source and single-sink cuts shared by both message configurations.
void add_unicast_cuts(const AntennaSplit& s, std::vector<BoundTerm>& terms) {
  const auto& t = s.transmit();
  const auto& r = s.receive();
  terms.push_back({"cut{1|23}", rmin(t[0], r[1] + r[2])});
  terms.push_back({"cut{2|13}", rmin(t[1], r[0] + r[2])});
  terms.push_back({"cut{3|12}", rmin(t[2], r[0] + r[1])});
  terms.push_back({"cut{12|3}", rmin(t[0] + t[1], r[2])});
  terms.push_back({"cut{23|1}", rmin(t[1] + t[2], r[0])});
  terms.push_back({"cut{13|2}", rmin(t[0] + t[2], r[1])});
  terms.push_back({"sum single-source cuts", terms[terms.size() - 6].value +
                                                 terms[terms.size() - 5].value +
                                                 terms[terms.size() - 4].value});
  terms.push_back({"sum single-sink cuts", terms[terms.size() - 4].value +
                                               terms[terms.size() - 3].value +
                                               terms[terms.size() - 2].value});
}

std::vector<BoundTerm> unicast_cutset_candidates(const AntennaSplit& s) {
  const auto& t = s.transmit();
  const auto& r = s.receive();
  return {
      {"M_T2+M_T3+M_R2+M_R3", t[1] + t[2] + r[1] + r[2]},
      {"ΣM_T", t[0] + t[1] + t[2]},
      {"ΣM_R", r[0] + r[1] + r[2]},
  };
}

}  // namespace

BoundReport cutset_bound_unicast(const AntennaSplit& split) {
  BoundReport rep;
  rep.messages = MessageConfig::kUnicastOnly;
  add_unicast_cuts(split, rep.terms);
  rep.cutset_candidates = unicast_cutset_candidates(split);
  rep.combined_cutset = min_of(rep.cutset_candidates);
  rep.binding_terms = attaining(rep.cutset_candidates, rep.combined_cutset);
  return rep;
}

BoundReport genie_bound_unicast(const AntennaSplit& split) {
  BoundReport rep = cutset_bound_unicast(split);
  const auto& t = split.transmit();
  const auto& r = split.receive();

  // Three-message bounds: a genie hands node k one extra message plus the
  // noise-correction sequence, letting it decode a third message.
  rep.terms.push_back({"genie{1:W23}", rmin(rmax(r[0], t[2]), t[1] + t[2])});
  rep.terms.push_back({"genie{1:W32}", rmin(rmax(r[0], t[1]), t[1] + t[2])});
  rep.terms.push_back({"genie{2:W13}", rmin(rmax(r[1], t[2]), t[0] + t[2])});
  rep.terms.push_back({"genie{2:W31}", rmin(rmax(r[1], t[0]), t[0] + t[2])});
  rep.terms.push_back({"genie{3:W12}", rmin(rmax(r[2], t[1]), t[0] + t[1])});
  rep.terms.push_back({"genie{3:W21}", rmin(rmax(r[2], t[0]), t[0] + t[1])});

  rep.genie_candidates = {
      {"ΣM_T", t[0] + t[1] + t[2]},
      {"ΣM_R", r[0] + r[1] + r[2]},
      {"max{M_R2,M_T3}+max{M_R3,M_T2}", rmax(r[1], t[2]) + rmax(r[2], t[1])},
      {"max{M_R2,M_T1}+max{M_R1,M_T2}", rmax(r[1], t[0]) + rmax(r[0], t[1])},
      {"max{M_R3,M_T1}+max{M_R1,M_T3}", rmax(r[2], t[0]) + rmax(r[0], t[2])},
  };
  rep.combined_genie = min_of(rep.genie_candidates);
  rep.binding_terms = attaining(rep.genie_candidates, *rep.combined_genie);
  return rep;
}

Rational symmetric_bound(const Rational& mt, const Rational& mr) {
  if (mt < 0 || mr < 0) fail(ErrorCode::kInvalidInput, "antenna counts must be nonnegative");
  if (mt >= mr) return rmin(3 * mr, 2 * mt);
  return rmin(3 * mt, 2 * mr);
}

BoundReport cutset_bound_broadcast(const AntennaSplit& split) {
  BoundReport rep;
  rep.messages = MessageConfig::kUnicastAndBroadcast;
  const auto& t = split.transmit();
  const auto& r = split.receive();
  rep.terms.push_back({"cut{12|3}", rmin(t[0] + t[1], r[2])});
  rep.terms.push_back({"cut{23|1}", rmin(t[1] + t[2], r[0])});
  rep.terms.push_back({"cut{13|2}", rmin(t[0] + t[2], r[1])});
  rep.terms.push_back({"sum single-sink cuts", rep.terms[0].value + rep.terms[1].value +
                                                   rep.terms[2].value});
  rep.cutset_candidates = {
      {"ΣM_R", r[0] + r[1] + r[2]},
      {"M_T2+M_T3+M_R2+M_R3", t[1] + t[2] + r[1] + r[2]},
      {"M_R3+M_T1+M_T2+2M_T3", r[2] + t[0] + t[1] + 2 * t[2]},
      {"2ΣM_T", 2 * (t[0] + t[1] + t[2])},
  };
  rep.combined_cutset = min_of(rep.cutset_candidates);
  rep.binding_terms = attaining(rep.cutset_candidates, rep.combined_cutset);
  return rep;
}

}  // namespace mimo3way
