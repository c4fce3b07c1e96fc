#pragma once

// Matrix-free operators and their norms: the averaged standard
// representation, power iteration for the top singular value, Rayleigh
// witnesses, and Kronecker-product matvecs.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "affres/affine_group.hpp"

namespace affres {

/// Real linear operator on R^dim given by its action and its adjoint's action.
class LinOp {
 public:
  using Apply = std::function<void(std::span<const double>, std::span<double>)>;

  LinOp(std::size_t dim, Apply matvec, Apply adjoint_matvec);

  std::size_t dim() const noexcept { return dim_; }

  void apply(std::span<const double> v, std::span<double> out) const;
  void apply_adjoint(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;
  std::vector<double> apply_adjoint(std::span<const double> v) const;

 private:
  std::size_t dim_;
  Apply matvec_;
  Apply adjoint_;
};

struct NormEstimate {
  double value = 0.0;
  double tolerance = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t max_iterations = 100000;
  std::size_t block_size = 8;
  // When false, stop as soon as one step changes the top Ritz value by at
  // most tol (relative). When true, additionally require the error left
  // after extrapolating the observed contraction rate to be within tol.
  bool extrapolate = true;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// Largest singular value by block power iteration on M*M from a seeded
/// start, with Rayleigh-Ritz on the block so that clusters of up to
/// block_size nearly equal singular values do not stall convergence. The
/// reported value is the top Ritz value, never above the true norm beyond
/// rounding. The block shrinks toward 1 for operators of dimension above
/// 2^20 to bound memory.
NormEstimate op_norm(const LinOp& op, const PowerIterationOptions& options);
NormEstimate op_norm(const LinOp& op, double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// P (1/k) sum_i rho(g_i) P with P the projection onto mean-zero vectors.
LinOp averaged_operator(const AffineGroup& group, const GeneratorSet& gens);

/// Re <Mv, v> / <v, v>.
double rayleigh_quotient(const LinOp& op, std::span<const double> v);

/// 1_X - (|X|/p) 1; requires 0 < |X| < p.
std::vector<double> meanzero_indicator(const FpSubset& set);

/// (A_1 (x) ... (x) A_n) v for square d x d factors, index of A_1 most significant.
std::vector<double> kron_matvec(std::span<const Eigen::MatrixXd> factors, std::span<const double> v);

/// Largest singular value of an explicit matrix (Jacobi SVD).
double dense_spectral_norm(const Eigen::MatrixXd& m);

/// Upper limit on d^n accepted by kron_matvec.
inline constexpr std::size_t kMaxKronDim = std::size_t{1} << 24;

}  // namespace affres
