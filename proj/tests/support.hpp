#pragma once
// Conversions between library types and the plain containers the oracles use.

#include <set>
#include <vector>

#include "affres/affine_group.hpp"
#include "affres/fp_subset.hpp"
#include "affres/rng.hpp"
#include "oracles/oracles.hpp"

namespace testing_support {

inline oracle::Set to_set(const affres::FpSubset& s) {
  const auto e = s.elements();
  return {e.begin(), e.end()};
}

inline affres::FpSubset from_set(affres::u64 p, const oracle::Set& s) {
  const std::vector<affres::u64> v(s.begin(), s.end());
  return affres::FpSubset::from_elements(p, v);
}

inline oracle::Set random_set(affres::SplitMix64& rng, affres::u64 p, affres::u64 permille) {
  oracle::Set s;
  for (affres::u64 x = 0; x < p; ++x)
    if (rng.below(1000) < permille) s.insert(x);
  return s;
}

inline std::vector<affres::AffineMap> random_maps(affres::SplitMix64& rng, affres::u64 p, affres::u64 k) {
  std::vector<affres::AffineMap> out;
  for (affres::u64 i = 0; i < k; ++i) out.push_back({affres::FpElem{1 + rng.below(p - 1)}, affres::FpElem{rng.below(p)}});
  return out;
}

inline std::vector<oracle::Map> to_pairs(const std::vector<affres::AffineMap>& maps) {
  std::vector<oracle::Map> out;
  for (const auto& m : maps) out.emplace_back(m.a.value, m.b.value);
  return out;
}

}  // namespace testing_support
