#pragma once

// Arithmetic in the prime field F_p.

#include <compare>
#include <cstdint>
#include <vector>

namespace affres {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Residue in [0, p). The modulus lives in the owning Field.
struct FpElem {
  u64 value = 0;

  friend constexpr auto operator<=>(const FpElem&, const FpElem&) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n) noexcept;

/// Smallest primitive root of the odd prime p.
u64 primitive_root(u64 p);

/// Context for F_p, p an odd prime. Immutable after construction.
class Field {
 public:
  /// Throws InvalidArgument unless p is an odd prime.
  explicit Field(u64 p);

  u64 modulus() const noexcept { return p_; }

  /// Reduces an arbitrary signed integer into [0, p).
  FpElem elem(long long x) const noexcept;
  FpElem from_u64(u64 x) const noexcept { return FpElem{x % p_}; }

  FpElem add(FpElem x, FpElem y) const noexcept {
    const u64 s = x.value + y.value;
    return FpElem{s >= p_ || s < x.value ? s - p_ : s};
  }
  FpElem sub(FpElem x, FpElem y) const noexcept {
    return FpElem{x.value >= y.value ? x.value - y.value : x.value + (p_ - y.value)};
  }
  FpElem neg(FpElem x) const noexcept { return FpElem{x.value == 0 ? 0 : p_ - x.value}; }
  FpElem mul(FpElem x, FpElem y) const noexcept {
    return FpElem{static_cast<u64>(static_cast<u128>(x.value) * y.value % p_)};
  }
  FpElem pow(FpElem base, u64 exponent) const noexcept;

  /// Multiplicative inverse; throws InvalidArgument on zero.
  FpElem inv(FpElem x) const;

  /// Canonical generator of F_p^x (the smallest primitive root).
  FpElem generator() const noexcept { return FpElem{generator_}; }

  /// Multiplicative order of a nonzero element.
  u64 order(FpElem x) const;

  friend bool operator==(const Field& l, const Field& r) noexcept { return l.p_ == r.p_; }

 private:
  u64 p_;
  u64 generator_;
  std::vector<u64> order_primes_;  // distinct primes dividing p - 1
};

/// x^{-1} mod p.
FpElem fp_inv(const Field& field, FpElem x);

/// Baby-step giant-step: the exponent e in [0, p-1) with g^e = y.
/// Requires y != 0 and g a primitive root.
u64 discrete_log(const Field& field, FpElem g, FpElem y);

}  // namespace affres
