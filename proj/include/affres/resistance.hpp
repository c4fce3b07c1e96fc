#pragma once

// Certification that the standard representation of Aff(F_p) resists a
// generator set, and the per-irrep expansion profile of a generator set.
//
// Given S = {x -> a_i x + b_i}, let A collect the nonzero a_i and b_i. An
// almost-invariant X for A at level eps/4 gives, through v = 1_X - |X|/p,
//
//   <rho(g) v, v> / <v, v> = 1 - |g.X \ X| / (|X| (1 - |X|/p))
//                         >= 1 - 2 (eps/4) / (1 - |X|/p) >= 1 - eps
//
// whenever |X| <= p/2, since |g.X \ X| <= |a.X \ X| + |(b + X) \ X|.

#include <optional>
#include <vector>

#include "affres/affine_group.hpp"
#include "affres/construction.hpp"
#include "affres/defects.hpp"
#include "affres/spectral.hpp"

namespace affres {

/// Sorted, deduplicated union of the scales a_i != 1 and the shifts b_i != 0.
std::vector<FpElem> derive_A(const GeneratorSet& gens);

/// |g.X \ X|.
u64 shift_defect(const AffineGroup& group, const FpSubset& set, const AffineMap& g);

/// Internal epsilon is epsilon_target / kRescale.
inline constexpr u64 kRescale = 4;

struct CertificateOptions {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  u128 resource_cap = kDefaultResourceCap;
  unsigned jobs = 1;
  // The Rayleigh witness is the certificate; the norm estimate only
  // corroborates it, so a single start vector with the plain stopping rule
  // is enough and far cheaper when many singular values crowd near 1.
  std::size_t block_size = 1;
  bool extrapolate = false;
};

struct ResistanceReport {
  GeneratorSet gens;
  Epsilon epsilon_target;
  Epsilon epsilon_internal;
  std::vector<FpElem> a_values;
  bool trivial = false;  // every generator is the identity
  std::optional<FpSubset> X;
  std::optional<DefectReport> defects;
  std::vector<u64> shift_defects;  // per generator
  BigCount size_bound;
  u64 admissible_k = 0;  // largest |A| with 2 * size_bound <= p at this epsilon
  bool half_condition = false;  // |X| <= p/2
  double rayleigh_bound = 0.0;
  double guaranteed_floor = 0.0;  // 1 - 2 eps' / (1 - |X|/p)
  NormEstimate op_norm;
  bool certified = false;
};

/// Largest k with 2 * size_bound(k, L) <= p, where L is the side length
/// at the internal epsilon; 0 when even k = 1 is too large.
u64 admissible_k(u64 p, const Epsilon& epsilon_target);

/// Throws NotCertifiable when the construction is too large for p or
/// |X| > p/2; InvalidArgument unless 0 < epsilon_target < 1.
ResistanceReport resist_certificate(const AffineGroup& group, const GeneratorSet& gens, const Epsilon& epsilon_target,
                                    const CertificateOptions& options = {});

struct ExpansionProfile {
  u64 p = 0;
  std::vector<double> character_norms;  // entry j-1 for chi_j, j in [1, p-2]
  NormEstimate standard_norm;
  double max_norm = 0.0;
  double expansion_epsilon = 0.0;  // 1 - max_norm
};

ExpansionProfile expansion_profile(const AffineGroup& group, const GeneratorSet& gens,
                                   double tol = kDefaultTolerance, std::uint64_t seed = 0);

/// Norm of the averaged operator in one irrep.
double irrep_norm(const ExpansionProfile& profile, const IrrepId& irrep);

/// Largest singular value of (1/k) sum_i L_{g_i} on the mean-zero part of
/// the group algebra R[G], computed densely. Requires p <= 11.
double regular_rep_crosscheck(const AffineGroup& group, const GeneratorSet& gens);

inline constexpr u64 kMaxRegularRepModulus = 11;

}  // namespace affres
