#pragma once

// The affine group Aff(F_p) = {x -> a x + b : a != 0}, its action on F_p and
// on subsets, and its nontrivial irreducible representations: p - 2
// nontrivial characters pulled back from F_p^x, and the (p-1)-dimensional
// standard representation (the permutation action on mean-zero vectors).

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affres/fp_subset.hpp"
#include "affres/modp.hpp"

namespace affres {

struct AffineMap {
  FpElem a{1};  // scale, nonzero
  FpElem b{0};  // shift

  friend constexpr auto operator<=>(const AffineMap&, const AffineMap&) = default;
};

/// Ordered multiset g_1..g_k of group elements, k >= 1. Averages are taken
/// with multiplicity.
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<AffineMap> maps);

  std::size_t size() const noexcept { return maps_.size(); }
  std::span<const AffineMap> maps() const noexcept { return maps_; }
  const AffineMap& operator[](std::size_t i) const { return maps_[i]; }

  auto begin() const noexcept { return maps_.begin(); }
  auto end() const noexcept { return maps_.end(); }

 private:
  std::vector<AffineMap> maps_;
};

/// A nontrivial irrep: character j in [1, p-2], or the standard rep.
struct IrrepId {
  enum class Kind { Character, Standard };
  Kind kind = Kind::Standard;
  u64 index = 0;

  static IrrepId character(u64 j) { return IrrepId{Kind::Character, j}; }
  static IrrepId standard() { return IrrepId{Kind::Standard, 0}; }
};

class AffineGroup {
 public:
  explicit AffineGroup(Field field) : field_(std::move(field)) {}
  explicit AffineGroup(u64 p) : field_(p) {}

  const Field& field() const noexcept { return field_; }
  u64 modulus() const noexcept { return field_.modulus(); }
  u64 order() const noexcept { return modulus() * (modulus() - 1); }

  /// Validated constructor; throws InvalidArgument if a == 0 mod p.
  AffineMap make(long long a, long long b) const;
  AffineMap identity() const noexcept { return AffineMap{}; }

  /// (f o g)(x) = f(g(x)).
  AffineMap compose(const AffineMap& f, const AffineMap& g) const noexcept;
  AffineMap inverse(const AffineMap& f) const;
  FpElem apply(const AffineMap& f, FpElem x) const noexcept {
    return field_.add(field_.mul(f.a, x), f.b);
  }

  /// g . X = a . X + b.
  FpSubset act_on_set(const AffineMap& f, const FpSubset& set) const;

  /// All p(p-1) elements, ordered by (a, b).
  std::vector<AffineMap> elements() const;

  /// Parses "a,b" (decimal, either may be negative).
  AffineMap parse(std::string_view text) const;
  static std::string format(const AffineMap& f);

 private:
  Field field_;
};

/// chi_j(f) = exp(2 pi i j dlog(f.a) / (p - 1)); j = 0 is the trivial character.
std::complex<double> character_value(const AffineGroup& group, u64 j, const AffineMap& f);

/// |(1/k) sum_i chi_j(g_i)| for every j in [1, p-2], entry j-1. Discrete logs
/// are taken once per generator; angles are reduced exactly mod p-1.
std::vector<double> character_norms(const AffineGroup& group, const GeneratorSet& gens);

/// out[f(x)] = v[x]: the permutation representation on R^{F_p}.
void standard_rep_matvec(const AffineGroup& group, const AffineMap& f, std::span<const double> v,
                         std::span<double> out);
std::vector<double> standard_rep_matvec(const AffineGroup& group, const AffineMap& f,
                                        std::span<const double> v);

}  // namespace affres
