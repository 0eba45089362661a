#include "mimo3way/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "mimo3way/error.hpp"

namespace mimo3way {

void LinearProgram::validate() const {
  if (b.size() != a.size()) {
    fail(ErrorCode::kInvalidInput, "LP has " + std::to_string(a.size()) + " constraint rows but " +
                                       std::to_string(b.size()) + " right-hand sides");
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != c.size()) {
      fail(ErrorCode::kInvalidInput, "LP row " + std::to_string(r + 1) + " has " +
                                         std::to_string(a[r].size()) + " coefficients, expected " +
                                         std::to_string(c.size()));
    }
  }
  if (!variables.empty() && variables.size() != c.size()) {
    fail(ErrorCode::kInvalidInput, "LP variable labels do not match objective length");
  }
  if (!constraints.empty() && constraints.size() != a.size()) {
    fail(ErrorCode::kInvalidInput, "LP constraint labels do not match row count");
  }
}

const char* status_name(DualityStatus s) noexcept {
  switch (s) {
    case DualityStatus::kOptimal: return "Optimal";
    case DualityStatus::kNotPrimalFeasible: return "NotPrimalFeasible";
    case DualityStatus::kNotDualFeasible: return "NotDualFeasible";
    case DualityStatus::kNonzeroGap: return "NonzeroGap";
  }
  return "NonzeroGap";
}

DualityCheck verify_duality(const LinearProgram& lp, std::span<const Rational> v,
                            std::span<const Rational> lambda) {
  lp.validate();
  if (v.size() != lp.cols() || lambda.size() != lp.rows()) {
    fail(ErrorCode::kInvalidInput, "primal/dual vectors do not match the LP dimensions");
  }
  DualityCheck out;
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.cols(); ++j) lhs += lp.a[r][j] * v[j];
    if (lhs > lp.b[r]) out.violated.push_back(r + 1);
  }
  Rational gap = 0;
  for (std::size_t j = 0; j < lp.cols(); ++j) gap += lp.c[j] * v[j];
  for (std::size_t r = 0; r < lp.rows(); ++r) gap += lp.b[r] * lambda[r];
  out.gap = gap;
  if (!out.violated.empty()) {
    out.status = DualityStatus::kNotPrimalFeasible;
    return out;
  }
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    if (lambda[r] < 0) out.violated.push_back(r + 1);
  }
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    Rational s = lp.c[j];
    for (std::size_t r = 0; r < lp.rows(); ++r) s += lp.a[r][j] * lambda[r];
    if (s != Rational(0)) out.violated.push_back(j + 1);
  }
  if (!out.violated.empty()) {
    out.status = DualityStatus::kNotDualFeasible;
    return out;
  }
  out.status = gap == Rational(0) ? DualityStatus::kOptimal : DualityStatus::kNonzeroGap;
  return out;
}

namespace {

using Wide = __int128;

// Integer image of the LP: row r is scaled by row_scale[r], the objective by
// objective_scale, so every coefficient is integral.
struct IntegerLp {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Wide> a;  // row-major m x n
  std::vector<Wide> b;
  std::vector<Wide> c;
  std::vector<std::int64_t> row_scale;
  std::int64_t objective_scale = 1;

  Wide at(std::size_t r, std::size_t j) const { return a[r * n + j]; }
};

IntegerLp to_integer(const LinearProgram& lp) {
  lp.validate();
  IntegerLp out;
  out.m = lp.rows();
  out.n = lp.cols();
  out.a.resize(out.m * out.n);
  out.b.resize(out.m);
  out.c.resize(out.n);
  out.row_scale.resize(out.m);
  for (std::size_t r = 0; r < out.m; ++r) {
    std::int64_t s = lp.b[r].denominator();
    for (const auto& x : lp.a[r]) s = std::lcm(s, x.denominator());
    out.row_scale[r] = s;
    for (std::size_t j = 0; j < out.n; ++j) {
      const auto& x = lp.a[r][j];
      out.a[r * out.n + j] = static_cast<Wide>(x.numerator()) * (s / x.denominator());
    }
    out.b[r] = static_cast<Wide>(lp.b[r].numerator()) * (s / lp.b[r].denominator());
  }
  out.objective_scale = common_denominator(lp.c.data(), lp.c.data() + lp.c.size());
  for (std::size_t j = 0; j < out.n; ++j) {
    out.c[j] = static_cast<Wide>(lp.c[j].numerator()) * (out.objective_scale / lp.c[j].denominator());
  }
  return out;
}

// Fraction-free (Bareiss) determinant of an n x n row-major matrix, in place.
template <class T>
T bareiss_det(std::vector<T>& m, std::size_t n) {
  T sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      sign = -sign;
    }
    const T pivot = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * pivot - m[i * n + k] * m[k * n + j]) / prev;
      }
    }
    prev = pivot;
  }
  return sign * m[(n - 1) * n + (n - 1)];
}

// Cramer solve of M x = rhs: x = num / det with det > 0. Returns false when
// M is singular.
template <class T>
bool cramer(const std::vector<T>& mat, const std::vector<T>& rhs, std::size_t n,
            std::vector<T>& scratch, std::vector<T>& num, T& det) {
  scratch = mat;
  det = bareiss_det(scratch, n);
  if (det == 0) return false;
  num.assign(n, 0);
  for (std::size_t col = 0; col < n; ++col) {
    scratch = mat;
    for (std::size_t r = 0; r < n; ++r) scratch[r * n + col] = rhs[r];
    num[col] = bareiss_det(scratch, n);
  }
  if (det < 0) {
    det = -det;
    for (auto& x : num) x = -x;
  }
  return true;
}

// True when every Bareiss intermediate and every product formed by the
// enumeration fits in int64. Minors are bounded by Hadamard's inequality.
bool fits_int64(const IntegerLp& ilp) {
  Wide max_abs = 1;
  auto widen = [&](Wide x) { max_abs = std::max(max_abs, x < 0 ? -x : x); };
  for (const auto x : ilp.a) widen(x);
  for (const auto x : ilp.b) widen(x);
  for (const auto x : ilp.c) widen(x);
  const long double n = static_cast<long double>(ilp.n);
  const long double hadamard = std::pow(std::sqrt(n + 1) * static_cast<long double>(max_abs), n);
  const long double worst = hadamard * hadamard * (n + 1) * static_cast<long double>(max_abs);
  return worst < 0x1p61L;
}

template <class T>
std::vector<T> narrow(const std::vector<Wide>& v) {
  return std::vector<T>(v.begin(), v.end());
}

struct PrimalVertex {
  Wide objective_num = 0;
  Wide det = 1;
  std::vector<Wide> point;
};

struct DualVertex {
  Wide det = 1;
  std::vector<std::size_t> basis;
  std::vector<Wide> lambda;
};

// Visits every increasing n-subset of {0..m-1}.
template <class Visit>
void for_each_basis(std::size_t m, std::size_t n, Visit&& visit) {
  if (n > m) return;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class T>
std::optional<PrimalVertex> primal_vertices(const IntegerLp& ilp) {
  const std::size_t n = ilp.n;
  const auto a = narrow<T>(ilp.a);
  const auto b = narrow<T>(ilp.b);
  const auto c = narrow<T>(ilp.c);
  std::vector<T> mat(n * n), rhs(n), scratch, num;
  std::optional<PrimalVertex> best;
  T best_num = 0, best_den = 1;

  for_each_basis(ilp.m, n, [&](const std::vector<std::size_t>& basis) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) mat[k * n + j] = a[basis[k] * n + j];
      rhs[k] = b[basis[k]];
    }
    T det;
    if (!cramer(mat, rhs, n, scratch, num, det)) return;
    for (std::size_t r = 0; r < ilp.m; ++r) {
      T lhs = 0;
      for (std::size_t j = 0; j < n; ++j) lhs += a[r * n + j] * num[j];
      if (lhs > b[r] * det) return;
    }
    T obj = 0;
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * num[j];
    if (!best || obj * best_den < best_num * det) {
      best_num = obj;
      best_den = det;
      best = PrimalVertex{obj, det, std::vector<Wide>(num.begin(), num.end())};
    }
  });
  return best;
}

template <class T>
std::optional<DualVertex> dual_vertices(const IntegerLp& ilp) {
  const std::size_t n = ilp.n;
  const auto a = narrow<T>(ilp.a);
  const auto b = narrow<T>(ilp.b);
  std::vector<T> mat(n * n), rhs(n), scratch, num;
  for (std::size_t j = 0; j < n; ++j) rhs[j] = static_cast<T>(-ilp.c[j]);
  std::optional<DualVertex> best;
  T best_num = 0, best_den = 1;

  for_each_basis(ilp.m, n, [&](const std::vector<std::size_t>& basis) {
    // Column k of the system is scaled constraint row basis[k].
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) mat[j * n + k] = a[basis[k] * n + j];
    }
    T det;
    if (!cramer(mat, rhs, n, scratch, num, det)) return;
    for (const auto& x : num) {
      if (x < 0) return;
    }
    T obj = 0;
    for (std::size_t k = 0; k < n; ++k) obj += b[basis[k]] * num[k];
    if (!best || obj * best_den < best_num * det) {
      best_num = obj;
      best_den = det;
      best = DualVertex{det, basis, std::vector<Wide>(num.begin(), num.end())};
    }
  });
  return best;
}

Rational to_rational(Wide num, Wide den) {
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  const Wide gcd = a == 0 ? 1 : a;
  num /= gcd;
  den /= gcd;
  constexpr Wide lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || -num > lim || den > lim) {
    fail(ErrorCode::kInternal, "rational overflow in exact LP solve");
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

std::optional<VertexSolution> solve_by_vertex_enumeration(const LinearProgram& lp) {
  const IntegerLp ilp = to_integer(lp);
  if (ilp.n == 0) fail(ErrorCode::kInvalidInput, "LP has no variables");
  const auto best = fits_int64(ilp) ? primal_vertices<std::int64_t>(ilp) : primal_vertices<Wide>(ilp);
  if (!best) return std::nullopt;

  VertexSolution sol;
  sol.objective = to_rational(best->objective_num, best->det * ilp.objective_scale);
  sol.point.reserve(ilp.n);
  for (const auto x : best->point) sol.point.push_back(to_rational(x, best->det));
  return sol;
}

std::optional<std::vector<Rational>> solve_dual_by_enumeration(const LinearProgram& lp) {
  const IntegerLp ilp = to_integer(lp);
  if (ilp.n == 0) fail(ErrorCode::kInvalidInput, "LP has no variables");
  const auto best = fits_int64(ilp) ? dual_vertices<std::int64_t>(ilp) : dual_vertices<Wide>(ilp);
  if (!best) return std::nullopt;

  // Undo the scalings: lambda_r = row_scale_r * lambda'_r / objective_scale.
  std::vector<Rational> lambda(ilp.m, Rational(0));
  for (std::size_t k = 0; k < ilp.n; ++k) {
    const auto r = best->basis[k];
    lambda[r] = to_rational(best->lambda[k] * ilp.row_scale[r], best->det * ilp.objective_scale);
  }
  return lambda;
}

}  // namespace mimo3way
