#pragma once

// Almost-invariant sets in F_p. For A = {a_1..a_k} and L = ceil(1/eps):
//
//   P = { n_1 a_1 + ... + n_k a_k : 0 <= n_i < L }
//   Q = { a_1^{n_1} ... a_k^{n_k} : 0 <= n_i < L }
//   T = sum over y in Q of y.P
//   X = union over y0 in Q of y0^{-1} . T
//
// P is nearly invariant under a + ., Q under a . , and X inherits both.
// |X| <= |Q| |P|^|Q| <= L^k L^{k L^k}.

#include <optional>
#include <string>
#include <vector>

#include "affres/defects.hpp"
#include "affres/epsilon.hpp"
#include "affres/fp_subset.hpp"

namespace affres {

/// Unsigned count that saturates to "overflow" past 2^128 - 1.
class BigCount {
 public:
  constexpr BigCount() = default;
  constexpr explicit BigCount(u128 v) : value_(v) {}
  static constexpr BigCount overflow() {
    BigCount c;
    c.overflow_ = true;
    return c;
  }

  bool is_overflow() const noexcept { return overflow_; }
  /// Meaningless when is_overflow().
  u128 value() const noexcept { return value_; }

  friend BigCount operator*(BigCount x, BigCount y) noexcept;
  friend BigCount operator+(BigCount x, BigCount y) noexcept;
  BigCount pow(u64 exponent) const noexcept;

  /// Total order with overflow as +infinity.
  friend std::strong_ordering operator<=>(const BigCount& x, const BigCount& y) noexcept;
  friend bool operator==(const BigCount& x, const BigCount& y) noexcept {
    return (x <=> y) == std::strong_ordering::equal;
  }

  /// Decimal digits, or "overflow".
  std::string to_string() const;

 private:
  u128 value_ = 0;
  bool overflow_ = false;
};

std::string u128_to_string(u128 v);

struct ConstructionParams {
  Field field;
  std::vector<FpElem> a_values;  // distinct, nonzero, in input order
  Epsilon epsilon;
  u64 side_length;  // L

  /// Rejects empty A, zero entries and duplicates (after reduction mod p).
  static ConstructionParams make(const Field& field, std::span<const FpElem> a_values, const Epsilon& epsilon);
  static ConstructionParams make(const Field& field, std::span<const long long> a_values, const Epsilon& epsilon);

  std::size_t k() const noexcept { return a_values.size(); }
};

struct ConstructionOptions {
  /// build_X refuses parameters whose size_bound exceeds this.
  u128 resource_cap = u128{1} << 33;
  unsigned jobs = 1;
};

inline constexpr u128 kDefaultResourceCap = u128{1} << 33;

struct ConstructionResult {
  FpSubset P;
  FpSubset Q;
  FpSubset T;  // sum over y in Q of y.P
  FpSubset X;
  BigCount predicted_bound;   // L^k L^{k L^k}
  BigCount structural_bound;  // |Q| |P|^|Q|
  bool injective_P = false;   // |P| = L^k
  bool injective_Q = false;   // |Q| = L^k
  DefectReport defects;       // measured against A at the requested epsilon
};

FpSubset build_P(const ConstructionParams& params);
FpSubset build_Q(const ConstructionParams& params);

/// Throws ResourceLimit when size_bound(params) exceeds options.resource_cap.
ConstructionResult build_X(const ConstructionParams& params, const ConstructionOptions& options = {});

/// L^k L^{k L^k}, saturating.
BigCount size_bound(const ConstructionParams& params);
BigCount size_bound(u64 k, u64 side_length);

}  // namespace affres
