#pragma once

// Dense bitset subsets of F_p and the additive-combinatorics operations on
// them (dilation, translation, sumset).

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "affres/modp.hpp"

namespace affres {

class FpSubset {
 public:
  explicit FpSubset(u64 p);

  static FpSubset full(u64 p);
  static FpSubset from_elements(u64 p, std::span<const u64> elements);
  static FpSubset from_elements(u64 p, std::initializer_list<u64> elements) {
    return from_elements(p, std::span<const u64>(elements.begin(), elements.size()));
  }
  /// Takes ownership of ceil(p/64) little-endian words; bits >= p must be zero.
  static FpSubset from_words(u64 p, std::vector<u64> words);

  u64 modulus() const noexcept { return p_; }
  u64 size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(u64 x) const noexcept { return (words_[x >> 6U] >> (x & 63U)) & 1U; }
  void insert(u64 x);

  std::span<const u64> words() const noexcept { return words_; }
  std::vector<u64> elements() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (u64 bits = words_[w]; bits != 0; bits &= bits - 1) {
        fn(static_cast<u64>(w) * 64 + static_cast<u64>(std::countr_zero(bits)));
      }
    }
  }

  FpSubset& operator|=(const FpSubset& other);

  /// this |= (src + shift), shift taken mod p.
  void or_translated(const FpSubset& src, u64 shift);

  friend bool operator==(const FpSubset& l, const FpSubset& r) noexcept {
    return l.p_ == r.p_ && l.words_ == r.words_;
  }

 private:
  void recount() noexcept;

  u64 p_;
  u64 count_ = 0;
  std::vector<u64> words_;
};

/// |x \ y|.
u64 difference_count(const FpSubset& x, const FpSubset& y);

/// a . X = {a x : x in X}; a must be nonzero.
FpSubset dilate(const Field& field, const FpSubset& set, FpElem a);

/// a + X.
FpSubset translate(const FpSubset& set, FpElem a);

/// X + Y = {x + y}, computed as the union of translates of the larger set.
FpSubset sumset_with(const FpSubset& x, const FpSubset& y);

/// FPSET1 dump: magic "FPSET1", u64 p, ceil(p/64) words, all little-endian.
void write_fpset(std::ostream& out, const FpSubset& set);
FpSubset read_fpset(std::istream& in);

}  // namespace affres
