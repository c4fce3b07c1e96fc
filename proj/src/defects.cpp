#include "affres/defects.hpp"

#include <algorithm>

#include "affres/errors.hpp"

namespace affres {

u64 DefectReport::max_defect() const noexcept {
  u64 m = 0;
  for (const auto& e : entries) m = std::max({m, e.mult_defect, e.add_defect});
  return m;
}

DefectReport invariance_defects(const Field& field, const FpSubset& set, std::span<const FpElem> a_values,
                                const Epsilon& epsilon) {
  if (set.empty()) throw InvalidArgument("invariance_defects: X must be nonempty");
  DefectReport report;
  report.epsilon = epsilon;
  report.set_size = set.size();
  for (const FpElem a : a_values) {
    if (a.value == 0) throw InvalidArgument("invariance_defects: elements of A must be nonzero");
    DefectEntry e{a, difference_count(dilate(field, set, a), set), difference_count(translate(set, a), set)};
    report.pass = report.pass && epsilon.admits(e.mult_defect, set.size()) &&
                  epsilon.admits(e.add_defect, set.size());
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace affres
