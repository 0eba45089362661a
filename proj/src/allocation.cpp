#include "mimo3way/allocation.hpp"

#include <array>
#include <numeric>
#include <string>

#include "mimo3way/dof_bounds.hpp"
#include "mimo3way/error.hpp"

namespace mimo3way {

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::kUnicastBalanced: return "M1<=M2+M3";
    case Regime::kUnicastDominant: return "M1>=M2+M3";
    case Regime::kBroadcast: return "broadcast";
  }
  return "broadcast";
}

namespace {

std::int64_t extension_of(const AntennaSplit& split, const Rational& dof) {
  return std::lcm(split.extension_factor(), dof.denominator());
}

AllocationResult make_result(const Rational& dof, const AntennaSplit& split, Certificate cert, Regime regime) {
  return {dof, split, std::move(cert), regime, extension_of(split, dof), std::nullopt, 0, 0};
}

// Max-term k compares M_R{receive_node} against M_T{transmit_node}.
struct MaxTerm {
  int receive_node;
  int transmit_node;
};
constexpr std::array<MaxTerm, 6> kMaxTerms{{{2, 3}, {3, 2}, {2, 1}, {1, 2}, {3, 1}, {1, 3}}};

bool receive_side(std::uint8_t pattern, int k) { return (pattern >> k) & 1U; }

// Affine form over [d, M_R1, M_R2, M_R3] plus a constant.
struct Affine {
  std::array<Rational, 4> coef{};
  Rational constant = 0;
};

Affine term_value(const AntennaConfig& cfg, std::uint8_t pattern, int k) {
  Affine f;
  const auto [rn, tn] = kMaxTerms[k];
  if (receive_side(pattern, k)) {
    f.coef[rn] = 1;
  } else {
    f.coef[tn] = -1;
    f.constant = cfg.m(tn);
  }
  return f;
}

std::string term_label(std::uint8_t pattern, int k) {
  const auto [rn, tn] = kMaxTerms[k];
  return receive_side(pattern, k) ? "M_R" + std::to_string(rn) : "M_T" + std::to_string(tn);
}

void add_row(LinearProgram& lp, std::array<Rational, 4> coef, Rational rhs, std::string label) {
  lp.a.emplace_back(coef.begin(), coef.end());
  lp.b.push_back(rhs);
  lp.constraints.push_back(std::move(label));
}

}  // namespace

std::uint8_t mirror_pattern(std::uint8_t pattern) noexcept {
  std::uint8_t out = 0;
  for (int k = 0; k < 6; k += 2) {
    const bool lo = (pattern >> k) & 1U;
    const bool hi = (pattern >> (k + 1)) & 1U;
    if (!hi) out |= static_cast<std::uint8_t>(1U << k);
    if (!lo) out |= static_cast<std::uint8_t>(1U << (k + 1));
  }
  return out;
}

std::vector<std::uint8_t> mirror_representatives() {
  std::vector<std::uint8_t> reps;
  for (unsigned p = 0; p < kSubproblemCount; ++p) {
    const auto q = static_cast<std::uint8_t>(p);
    if (q <= mirror_pattern(q)) reps.push_back(q);
  }
  return reps;
}

LinearProgram unicast_subproblem_lp(const AntennaConfig& cfg, std::uint8_t pattern,
                                    bool include_sum_rows) {
  if (pattern >= kSubproblemCount) fail(ErrorCode::kInvalidInput, "branch pattern must be < 64");
  LinearProgram lp;
  lp.c = {Rational(-1), Rational(0), Rational(0), Rational(0)};
  lp.variables = {"d", "M_R1", "M_R2", "M_R3"};

  for (int k = 0; k < 6; k += 2) {
    const Affine f = term_value(cfg, pattern, k);
    const Affine g = term_value(cfg, pattern, k + 1);
    std::array<Rational, 4> coef{Rational(1), 0, 0, 0};
    for (int j = 1; j < 4; ++j) coef[j] = -(f.coef[j] + g.coef[j]);
    add_row(lp, coef, f.constant + g.constant,
            "d <= " + term_label(pattern, k) + "+" + term_label(pattern, k + 1));
  }
  for (int l = 1; l <= 3; ++l) {
    std::array<Rational, 4> coef{};
    coef[l] = 1;
    add_row(lp, coef, cfg.m(l), "M_R" + std::to_string(l) + " <= M" + std::to_string(l));
  }
  add_row(lp, {Rational(-1), 0, 0, 0}, 0, "d >= 0");
  for (int l = 1; l <= 3; ++l) {
    std::array<Rational, 4> coef{};
    coef[l] = -1;
    add_row(lp, coef, 0, "M_R" + std::to_string(l) + " >= 0");
  }
  for (int k = 0; k < 6; ++k) {
    const auto [rn, tn] = kMaxTerms[k];
    std::array<Rational, 4> coef{};
    const std::string r = "M_R" + std::to_string(rn);
    const std::string t = "M_T" + std::to_string(tn);
    if (receive_side(pattern, k)) {
      // M_R{rn} >= M{tn} - M_R{tn}
      coef[rn] = -1;
      coef[tn] = -1;
      add_row(lp, coef, -cfg.m(tn), r + " >= " + t);
    } else {
      coef[rn] = 1;
      coef[tn] = 1;
      add_row(lp, coef, cfg.m(tn), t + " >= " + r);
    }
  }
  if (include_sum_rows) {
    const Rational total = cfg.m1() + cfg.m2() + cfg.m3();
    add_row(lp, {Rational(1), 1, 1, 1}, total, "d <= ΣM_T");
    add_row(lp, {Rational(1), -1, -1, -1}, 0, "d <= ΣM_R");
  }
  return lp;
}

LinearProgram balanced_subproblem_lp(const AntennaConfig& cfg) {
  LinearProgram lp = unicast_subproblem_lp(cfg, kBalancedPattern, false);
  add_row(lp, {Rational(0), 0, 0, 0}, cfg.m2() + cfg.m3() - cfg.m1(), "M1 <= M2+M3");
  return lp;
}

PrimalDualPair balanced_subproblem_pair(const AntennaConfig& cfg) {
  const Rational m1 = cfg.m1(), m2 = cfg.m2(), m3 = cfg.m3();
  PrimalDualPair pair;
  pair.primal = {(2 * m1 + m2 + m3) / 3, Rational(0), (m1 + 2 * m2 - m3) / 3, (m1 + 2 * m3 - m2) / 3};
  pair.dual.assign(17, Rational(0));
  pair.dual[0] = Rational(1, 3);
  pair.dual[1] = Rational(1, 3);
  pair.dual[2] = Rational(1, 3);
  pair.dual[7] = Rational(2, 3);
  return pair;
}

AllocationResult optimal_unicast_closed_form(const AntennaConfig& cfg) {
  const Rational m1 = cfg.m1(), m2 = cfg.m2(), m3 = cfg.m3();
  if (m1 <= m2 + m3) {
    const Rational dof = m1 + (m2 + m3 - m1) / 3;
    const auto split =
        AntennaSplit::from_receive(cfg, {Rational(0), (m1 + 2 * m2 - m3) / 3, (m1 + 2 * m3 - m2) / 3});
    return make_result(dof, split, ClosedFormCertificate{"M1+(M2+M3-M1)/3"}, Regime::kUnicastBalanced);
  }
  const Rational dof = m2 + m3;
  const auto split = AntennaSplit::from_receive(cfg, {m2 + m3, Rational(0), Rational(0)});
  return make_result(dof, split, ClosedFormCertificate{"M2+M3"}, Regime::kUnicastDominant);
}

namespace {

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& v) {
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.cols(); ++j) lhs += lp.a[r][j] * v[j];
    if (lhs > lp.b[r]) return false;
  }
  return true;
}

}  // namespace

AllocationResult optimal_unicast_enumerated(const AntennaConfig& cfg, SubproblemSet set) {
  std::vector<std::uint8_t> patterns;
  if (set == SubproblemSet::kAll) {
    for (unsigned p = 0; p < kSubproblemCount; ++p) patterns.push_back(static_cast<std::uint8_t>(p));
  } else {
    patterns = mirror_representatives();
  }

  std::optional<Rational> best;
  std::uint8_t best_pattern = 0;
  std::vector<Rational> best_point;
  std::size_t feasible = 0;
  for (const auto p : patterns) {
    const auto sol = solve_by_vertex_enumeration(unicast_subproblem_lp(cfg, p));
    if (!sol) continue;
    ++feasible;
    const Rational value = -sol->objective;
    if (!best || value > *best) {
      best = value;
      best_pattern = p;
      best_point = sol->point;
    }
  }
  if (!best) fail(ErrorCode::kInternal, "every allocation subproblem is infeasible");

  // Prefer the canonical allocation as the reported optimum when it attains
  // the enumerated value; the certificate then comes from a subproblem that
  // contains it.
  const auto canonical = optimal_unicast_closed_form(cfg);
  std::vector<Rational> v_can{*best, canonical.split.mr(1), canonical.split.mr(2), canonical.split.mr(3)};
  std::uint8_t chosen = best_pattern;
  std::vector<Rational> point = best_point;
  if (canonical.optimal_dof == *best) {
    for (unsigned p = 0; p < kSubproblemCount; ++p) {
      const auto q = static_cast<std::uint8_t>(p);
      if (satisfies(unicast_subproblem_lp(cfg, q), v_can)) {
        chosen = q;
        point = v_can;
        break;
      }
    }
  }

  LinearProgram lp = unicast_subproblem_lp(cfg, chosen);
  auto dual = solve_dual_by_enumeration(lp);
  if (!dual) fail(ErrorCode::kInternal, "winning allocation subproblem has an infeasible dual");
  const auto check = verify_duality(lp, point, *dual);
  if (!check.optimal()) {
    fail(ErrorCode::kInternal, std::string("allocation certificate failed: ") + status_name(check.status));
  }

  const auto split = AntennaSplit::from_receive(cfg, {point[1], point[2], point[3]});
  const Regime regime = Rational(cfg.m1()) <= Rational(cfg.m2() + cfg.m3()) ? Regime::kUnicastBalanced
                                                                            : Regime::kUnicastDominant;
  AllocationResult out = make_result(
      *best, split, DualityCertificate{std::move(lp), chosen, point, std::move(*dual), check.gap}, regime);
  out.subproblems_solved = patterns.size();
  out.subproblems_feasible = feasible;
  return out;
}

AllocationResult optimal_unicast_bruteforce(const AntennaConfig& cfg, std::int64_t denominator) {
  if (denominator < 1) fail(ErrorCode::kInvalidInput, "grid denominator must be >= 1");
  const std::int64_t q = denominator;
  const std::array<std::int64_t, 3> mq{cfg.m1() * q, cfg.m2() * q, cfg.m3() * q};

  std::int64_t best = -1;
  std::array<std::int64_t, 3> arg{};
  std::size_t points = 0;
  for (std::int64_t r1 = 0; r1 <= mq[0]; ++r1) {
    for (std::int64_t r2 = 0; r2 <= mq[1]; ++r2) {
      for (std::int64_t r3 = 0; r3 <= mq[2]; ++r3) {
        const std::array<std::int64_t, 3> mr{r1, r2, r3};
        const std::array<std::int64_t, 3> mt{mq[0] - r1, mq[1] - r2, mq[2] - r3};
        const auto value = unicast_genie_value(mt, mr);
        ++points;
        if (value > best) {
          best = value;
          arg = mr;
        }
      }
    }
  }
  const Rational dof(best, q);

  std::array<Rational, 3> mr{Rational(arg[0], q), Rational(arg[1], q), Rational(arg[2], q)};
  const auto canonical = optimal_unicast_closed_form(cfg);
  const auto& cmr = canonical.split.receive();
  const bool on_grid = (cmr[0] * q).denominator() == 1 && (cmr[1] * q).denominator() == 1 &&
                       (cmr[2] * q).denominator() == 1;
  if (on_grid && canonical.optimal_dof == dof) mr = cmr;

  const auto split = AntennaSplit::from_receive(cfg, mr);
  const Regime regime = Rational(cfg.m1()) <= Rational(cfg.m2() + cfg.m3()) ? Regime::kUnicastBalanced
                                                                            : Regime::kUnicastDominant;
  return make_result(dof, split, GridSearchCertificate{q, points}, regime);
}

bool in_broadcast_band(const AntennaConfig& cfg, const std::array<Rational, 3>& mt) {
  Rational sum = 0;
  for (int l = 0; l < 3; ++l) {
    if (mt[l] < 0 || mt[l] > Rational(cfg.counts()[l])) return false;
    sum += mt[l];
  }
  return Rational(cfg.m2()) <= sum && sum <= Rational(cfg.m1());
}

AllocationResult optimal_broadcast(const AntennaConfig& cfg) {
  const Rational dof = cfg.m2() + cfg.m3();
  const auto split = AntennaSplit::from_transmit(
      cfg, {Rational(cfg.m1() - cfg.m2()), Rational(cfg.m2() - cfg.m3()), Rational(cfg.m3())});
  if (!in_broadcast_band(cfg, split.transmit())) {
    fail(ErrorCode::kInternal, "canonical broadcast split falls outside the optimal band");
  }
  if (cutset_bound_broadcast(split).combined_cutset != dof) {
    fail(ErrorCode::kInternal, "canonical broadcast split does not attain M2+M3");
  }
  AllocationResult out = make_result(dof, split, ClosedFormCertificate{"M2+M3"}, Regime::kBroadcast);
  out.band = TransmitBand{Rational(cfg.m2()), Rational(cfg.m1())};
  return out;
}

}  // namespace mimo3way
