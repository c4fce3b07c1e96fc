#include "affres/modp.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "affres/errors.hpp"

namespace affres {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exponent, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exponent != 0) {
    if (exponent & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1U;
  }
  return result;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_generator(u64 g, u64 p, const std::vector<u64>& primes) noexcept {
  for (u64 q : primes)
    if (powmod(g, (p - 1) / q, p) == 1) return false;
  return true;
}

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // The first twelve primes are a witness set valid for all n < 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 primitive_root(u64 p) { return Field(p).generator().value; }

Field::Field(u64 p) : p_(p), generator_(0) {
  if (p == 2) throw InvalidArgument("modulus 2 is not supported (Aff(F_2) is degenerate)");
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  order_primes_ = distinct_prime_factors(p - 1);
  for (u64 g = 2;; ++g) {
    if (is_generator(g, p, order_primes_)) {
      generator_ = g;
      break;
    }
  }
}

FpElem Field::elem(long long x) const noexcept {
  const auto m = static_cast<long long>(p_ <= static_cast<u64>(INT64_MAX) ? p_ : 0);
  if (m == 0) return FpElem{static_cast<u64>(x)};  // p > 2^63: every non-negative x is reduced
  long long r = x % m;
  if (r < 0) r += m;
  return FpElem{static_cast<u64>(r)};
}

FpElem Field::pow(FpElem base, u64 exponent) const noexcept {
  return FpElem{powmod(base.value, exponent, p_)};
}

FpElem Field::inv(FpElem x) const {
  if (x.value == 0) throw InvalidArgument("inverse of zero in F_" + std::to_string(p_));
  return pow(x, p_ - 2);
}

u64 Field::order(FpElem x) const {
  if (x.value == 0) throw InvalidArgument("order of zero");
  u64 ord = p_ - 1;
  for (u64 q : order_primes_) {
    while (ord % q == 0 && powmod(x.value, ord / q, p_) == 1) ord /= q;
  }
  return ord;
}

FpElem fp_inv(const Field& field, FpElem x) { return field.inv(x); }

u64 discrete_log(const Field& field, FpElem g, FpElem y) {
  if (y.value == 0) throw InvalidArgument("discrete_log of zero");
  const u64 n = field.modulus() - 1;
  const auto m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  FpElem cur{1};
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur.value, j);
    cur = field.mul(cur, g);
  }
  const FpElem giant = field.inv(field.pow(g, m));
  FpElem gamma = y;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma.value); it != baby.end()) {
      return (i * m + it->second) % n;
    }
    gamma = field.mul(gamma, giant);
  }
  throw InvalidArgument("discrete_log: base is not a primitive root");
}

}  // namespace affres
