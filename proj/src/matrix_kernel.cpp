#include "mimo3way/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mimo3way/error.hpp"

namespace mimo3way {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;

double default_relative_tol(const ComplexMatrix& a) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon();
}

Index rank_from_singular_values(const Eigen::VectorXd& sv, double relative_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = relative_tol * sv(0);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++r;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void require_finite(const ComplexMatrix& a, std::string_view what) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const Complex z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        fail(ErrorCode::kInvalidInput,
             std::string(what) + " has a non-finite entry at (" + std::to_string(i) + ", " +
                 std::to_string(j) + ")");
      }
    }
  }
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Svd svd(a);
  return svd.singularValues()(0);
}

Index numerical_rank(const ComplexMatrix& a, double tol) {
  if (tol < 0.0 || std::isnan(tol)) fail(ErrorCode::kInvalidInput, "rank tolerance must be >= 0");
  require_finite(a);
  if (a.size() == 0) return 0;
  Svd svd(a);
  return rank_from_singular_values(svd.singularValues(), tol == 0.0 ? default_relative_tol(a) : tol);
}

ComplexMatrix null_space_basis(const ComplexMatrix& a) {
  require_finite(a);
  const Index n = a.cols();
  if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
  if (n == 0) return ComplexMatrix(0, 0);
  Svd svd(a, Eigen::ComputeFullV);
  const Index r = rank_from_singular_values(svd.singularValues(), default_relative_tol(a));
  return svd.matrixV().rightCols(n - r);
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a) {
  require_finite(a);
  if (a.size() == 0) return ComplexMatrix::Zero(a.cols(), a.rows());
  Svd svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Index r = rank_from_singular_values(sv, default_relative_tol(a));
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix v = svd.matrixV().leftCols(r);
  const Eigen::VectorXd inv = sv.head(r).cwiseInverse();
  return v * inv.asDiagonal() * u.adjoint();
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  require_finite(a);
  if (a.cols() == 0) return ComplexMatrix(a.rows(), 0);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  return qr.householderQ() * ComplexMatrix::Identity(a.rows(), a.cols());
}

std::pair<double, double> singular_value_range(const ComplexMatrix& a) {
  if (a.size() == 0) return {0.0, 0.0};
  Svd svd(a);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

Complex Rng::complex_normal() {
  const double re = half_normal_(engine_);
  const double im = half_normal_(engine_);
  return {re, im};
}

ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  if (rows < 0 || cols < 0) fail(ErrorCode::kInvalidInput, "matrix dimensions must be >= 0");
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

ComplexMatrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  return random_gaussian(rows, cols, rng);
}

}  // namespace mimo3way
