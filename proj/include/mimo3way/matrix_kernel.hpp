#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace mimo3way {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative residual allowed for null-space and pseudo-inverse identities.
inline constexpr double kNullTolerance = 1e-10;

/// Throws invalid-input if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, std::string_view what = "matrix");

/// Largest singular value; 0 for an empty matrix.
double spectral_norm(const ComplexMatrix& a);

/// Number of singular values strictly above tol * sigma_max. A zero tol selects
/// max(rows, cols) * machine epsilon.
Index numerical_rank(const ComplexMatrix& a, double tol = 0.0);

/// Orthonormal basis of the right null space; cols(A) - rank(A) columns.
ComplexMatrix null_space_basis(const ComplexMatrix& a);

/// Moore-Penrose pseudo-inverse via the SVD, with the default rank threshold.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a);

/// Orthonormal basis of the column span of a full-column-rank matrix (thin QR).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

/// (sigma_min, sigma_max) over the min(rows, cols) singular values.
std::pair<double, double> singular_value_range(const ComplexMatrix& a);

/// Seeded generator that can spawn statistically independent child streams.
/// Children depend only on (seed, stream id), never on how much the parent
/// has been used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const { return Rng(derive(seed_, stream)); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::mt19937_64& engine() noexcept { return engine_; }

  /// Circularly-symmetric complex normal with unit variance.
  Complex complex_normal();

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> half_normal_{0.0, 0.70710678118654752440};
};

/// i.i.d. CN(0, 1) entries.
ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng);
ComplexMatrix random_gaussian(Index rows, Index cols, std::uint64_t seed);

}  // namespace mimo3way
