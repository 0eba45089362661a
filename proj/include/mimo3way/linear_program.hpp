#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimo3way/rational.hpp"

namespace mimo3way {

/// min c^T v  subject to  A v <= b, over exact rationals.
struct LinearProgram {
  std::vector<Rational> c;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::string> variables;
  std::vector<std::string> constraints;

  std::size_t rows() const noexcept { return a.size(); }
  std::size_t cols() const noexcept { return c.size(); }

  /// Throws invalid-input on inconsistent dimensions.
  void validate() const;
};

enum class DualityStatus { kOptimal, kNotPrimalFeasible, kNotDualFeasible, kNonzeroGap };

struct DualityCheck {
  DualityStatus status = DualityStatus::kOptimal;
  Rational gap;                          // c^T v + b^T lambda
  std::vector<std::size_t> violated;     // 1-based constraint (primal) or variable (dual) indices

  bool optimal() const noexcept { return status == DualityStatus::kOptimal; }
};

const char* status_name(DualityStatus s) noexcept;

/// Checks A v <= b, then A^T lambda + c = 0 and lambda >= 0, then the gap.
/// The pair certifies joint optimality iff the status is kOptimal.
DualityCheck verify_duality(const LinearProgram& lp, std::span<const Rational> v,
                            std::span<const Rational> lambda);

struct VertexSolution {
  Rational objective;                    // c^T v at the optimum
  std::vector<Rational> point;
};

/// Exact solve by enumerating every basis of `cols()` constraints. Requires a
/// bounded feasible region; returns nullopt when infeasible.
std::optional<VertexSolution> solve_by_vertex_enumeration(const LinearProgram& lp);

/// Optimal basic solution of the dual  max -b^T lambda  s.t.  A^T lambda + c = 0,
/// lambda >= 0. Returns nullopt when the dual is infeasible.
std::optional<std::vector<Rational>> solve_dual_by_enumeration(const LinearProgram& lp);

}  // namespace mimo3way
