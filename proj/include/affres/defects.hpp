#pragma once

// Exact invariance defects |a.X \ X| and |(a + X) \ X|.

#include <vector>

#include "affres/epsilon.hpp"
#include "affres/fp_subset.hpp"

namespace affres {

struct DefectEntry {
  FpElem a;
  u64 mult_defect = 0;  // |a.X \ X|
  u64 add_defect = 0;   // |(a + X) \ X|
};

struct DefectReport {
  std::vector<DefectEntry> entries;
  Epsilon epsilon{1, 1};
  u64 set_size = 0;
  bool pass = true;  // every defect <= epsilon |X|

  u64 max_defect() const noexcept;
};

/// Throws InvalidArgument on empty X or a zero entry in A.
DefectReport invariance_defects(const Field& field, const FpSubset& set, std::span<const FpElem> a_values,
                                const Epsilon& epsilon);

}  // namespace affres
