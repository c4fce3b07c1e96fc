#pragma once

// Seeded experiments around the resistance results: random generator sets in
// cyclic and affine groups, tensor powers of the 2-dimensional irrep of S_3,
// and an exhaustive search for the smallest almost-invariant set.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "affres/epsilon.hpp"
#include "affres/fp_subset.hpp"
#include "affres/spectral.hpp"

namespace affres {

struct GroupSpec {
  enum class Kind { Cyclic, Affine, S3Tensor };
  Kind kind = Kind::Cyclic;
  u64 size = 0;  // n for Z/n and S_3^n, p for Aff(F_p)

  static GroupSpec cyclic(u64 n) { return {Kind::Cyclic, n}; }
  static GroupSpec affine(u64 p) { return {Kind::Affine, p}; }
  static GroupSpec s3_tensor(u64 n) { return {Kind::S3Tensor, n}; }
  std::string name() const;
};

struct TrialConfig {
  std::uint64_t master_seed = 0;
  u64 trials = 1;
  GroupSpec group;
  u64 k = 1;
  double tol = kDefaultTolerance;
  unsigned jobs = 1;
};

struct TrialRecord {
  u64 trial = 0;
  std::uint64_t seed = 0;
  double max_norm = 0.0;  // max over nontrivial irreps (or the one studied irrep)
};

/// max over j in [1, n-1] of |(1/k) sum_i exp(2 pi i j g_i / n)|.
double cyclic_max_character_norm(u64 n, std::span<const u64> elements);

/// Uniform k-element samples with replacement; group must be cyclic or affine.
std::vector<TrialRecord> alon_roichman_trial(const TrialConfig& cfg);

// ---------------------------------------------------------------- S_3 ----

/// Permutation of {1,2,3}; index into the one-line table
/// 0:123 1:132 2:213 3:231 4:312 5:321.
struct S3Elem {
  unsigned index = 0;

  friend constexpr bool operator==(S3Elem, S3Elem) = default;
};

inline constexpr std::array<std::array<unsigned, 3>, 6> kS3OneLine{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

/// Accepts one-line words ("231") or cycle notation ("(123)", "(12)(3)", "()", "e").
S3Elem parse_s3(std::string_view text);
std::string format_s3(S3Elem g);  // one-line word
S3Elem s3_compose(S3Elem f, S3Elem g);  // f o g
S3Elem s3_from_index(unsigned index);

/// Standard 2-dimensional irrep: the permutation action on x1 + x2 + x3 = 0
/// in the orthonormal basis (1,-1,0)/sqrt2, (1,1,-2)/sqrt6.
Eigen::Matrix2d s3_rep(S3Elem g);

using S3Tuple = std::vector<S3Elem>;

/// || (1/k) sum_j rho^{(x)n}(g_j) ||, all tuples of the same length n <= 24.
NormEstimate lmr_norm(std::span<const S3Tuple> elements, double tol = kDefaultTolerance, std::uint64_t seed = 0);

inline constexpr u64 kMaxTensorPower = 24;
inline constexpr double kUnitNormThreshold = 1.0 - 1e-9;

struct LmrRow {
  u64 n = 0;
  u64 k = 0;
  u64 trials = 0;
  double frequency_unit_norm = 0.0;  // fraction with norm >= 1 - 1e-9
  double mean_norm = 0.0;
  double max_norm = 0.0;
  std::vector<TrialRecord> records;
};

/// One row per n; cfg.group is ignored.
std::vector<LmrRow> lmr_survey(const TrialConfig& cfg, std::span<const u64> ns);

// ------------------------------------------------------------- oracle ----

struct OracleResult {
  u64 min_size = 0;                 // exact if exhausted, else a lower bound
  std::optional<FpSubset> witness;  // smallest bitmask among the smallest sets
  u64 nodes_searched = 0;
  bool exhausted = false;
};

inline constexpr u64 kMaxOracleModulus = 24;

/// Smallest nonempty X subset of Z/p with every defect <= eps |X|, scanning
/// popcount classes upward and masks ascending within a class. Stops with
/// exhausted = false once `budget` masks have been examined.
OracleResult min_invariant_set(u64 p, std::span<const u64> a_values, const Epsilon& epsilon,
                               u64 budget = ~u64{0});

struct ScanRow {
  std::vector<u64> a_values;
  OracleResult result;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  u64 max_min_size = 0;
  bool complete = true;  // every row exhausted within budget
};

/// `samples` random A (k distinct nonzero residues each), oracle on each.
ScanResult conjecture_scan(u64 p, u64 k, const Epsilon& epsilon, u64 samples, std::uint64_t seed, u64 budget);

}  // namespace affres
