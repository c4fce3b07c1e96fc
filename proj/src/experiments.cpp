#include "affres/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include "affres/affine_group.hpp"
#include "affres/errors.hpp"
#include "affres/resistance.hpp"
#include "affres/rng.hpp"

namespace affres {

namespace {

// Runs fn(i) for i in [0, count) on `jobs` workers; results land in caller-owned slots.
template <class Fn>
void parallel_for(u64 count, unsigned jobs, Fn&& fn) {
  jobs = static_cast<unsigned>(std::clamp<u64>(jobs, 1, std::max<u64>(count, 1)));
  if (jobs == 1) {
    for (u64 i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (u64 i = w; i < count; i += jobs) fn(i);
    });
  }
}

}  // namespace

std::string GroupSpec::name() const {
  switch (kind) {
    case Kind::Cyclic: return "cyclic";
    case Kind::Affine: return "affine";
    case Kind::S3Tensor: return "s3_tensor";
  }
  return "unknown";
}

double cyclic_max_character_norm(u64 n, std::span<const u64> elements) {
  if (n < 2) throw InvalidArgument("cyclic group needs n >= 2");
  if (elements.empty()) throw InvalidArgument("cyclic_max_character_norm: empty sample");
  const double k = static_cast<double>(elements.size());
  double best = 0.0;
  for (u64 j = 1; j < n; ++j) {
    double re = 0.0;
    double im = 0.0;
    for (u64 g : elements) {
      const u64 r = static_cast<u64>(static_cast<u128>(j) * (g % n) % n);
      if (r == 0) {
        re += 1.0;
        continue;
      }
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
      re += std::cos(angle);
      im += std::sin(angle);
    }
    best = std::max(best, std::hypot(re, im) / k);
  }
  return best;
}

std::vector<TrialRecord> alon_roichman_trial(const TrialConfig& cfg) {
  if (cfg.trials == 0) throw InvalidArgument("trials must be >= 1");
  if (cfg.k == 0) throw InvalidArgument("k must be >= 1");
  if (cfg.group.kind == GroupSpec::Kind::S3Tensor)
    throw InvalidArgument("alon_roichman_trial: group must be cyclic or affine");

  std::optional<AffineGroup> affine;
  if (cfg.group.kind == GroupSpec::Kind::Affine) affine.emplace(cfg.group.size);
  else if (cfg.group.size < 2) throw InvalidArgument("cyclic group needs n >= 2");

  std::vector<TrialRecord> records(cfg.trials);
  parallel_for(cfg.trials, cfg.jobs, [&](u64 t) {
    const std::uint64_t seed = trial_seed(cfg.master_seed, t);
    SplitMix64 rng(seed);
    TrialRecord rec{t, seed, 0.0};
    if (affine) {
      const u64 p = affine->modulus();
      std::vector<AffineMap> maps;
      maps.reserve(cfg.k);
      for (u64 i = 0; i < cfg.k; ++i) {
        const u64 a = 1 + rng.below(p - 1);
        const u64 b = rng.below(p);
        maps.push_back(AffineMap{FpElem{a}, FpElem{b}});
      }
      rec.max_norm = expansion_profile(*affine, GeneratorSet(std::move(maps)), cfg.tol, seed).max_norm;
    } else {
      std::vector<u64> elems(cfg.k);
      for (u64& g : elems) g = rng.below(cfg.group.size);
      rec.max_norm = cyclic_max_character_norm(cfg.group.size, elems);
    }
    records[t] = rec;
  });
  return records;
}

// ---------------------------------------------------------------- S_3 ----

S3Elem s3_from_index(unsigned index) {
  if (index >= 6) throw InvalidArgument("S_3 index must be in [0, 6)");
  return S3Elem{index};
}

namespace {

S3Elem from_one_line(const std::array<unsigned, 3>& images) {
  for (unsigned i = 0; i < 6; ++i)
    if (kS3OneLine[i] == images) return S3Elem{i};
  throw InvalidArgument("not a permutation of {1,2,3}");
}

}  // namespace

S3Elem parse_s3(std::string_view text) {
  const std::string original(text);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty S_3 element");
  if (text == "e" || text == "id") return S3Elem{0};

  if (text.front() != '(') {
    if (text.size() != 3) throw InvalidArgument("S_3 one-line word must have 3 symbols: '" + original + "'");
    std::array<unsigned, 3> images{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (text[i] < '1' || text[i] > '3') throw InvalidArgument("invalid S_3 element '" + original + "'");
      images[i] = static_cast<unsigned>(text[i] - '1');
    }
    return from_one_line(images);
  }

  // product of cycles, applied right to left
  S3Elem result{0};
  std::vector<std::vector<unsigned>> cycles;
  std::vector<unsigned>* current = nullptr;
  for (char c : text) {
    if (c == '(') {
      if (current != nullptr) throw InvalidArgument("nested cycle in '" + original + "'");
      cycles.emplace_back();
      current = &cycles.back();
    } else if (c == ')') {
      if (current == nullptr) throw InvalidArgument("unbalanced cycle in '" + original + "'");
      current = nullptr;
    } else if (c >= '1' && c <= '3' && current != nullptr) {
      const auto v = static_cast<unsigned>(c - '1');
      if (std::find(current->begin(), current->end(), v) != current->end())
        throw InvalidArgument("repeated symbol in cycle '" + original + "'");
      current->push_back(v);
    } else if (c != ' ' && c != ',') {
      throw InvalidArgument("invalid S_3 element '" + original + "'");
    }
  }
  if (current != nullptr) throw InvalidArgument("unbalanced cycle in '" + original + "'");
  for (const auto& cyc : cycles) {
    std::array<unsigned, 3> images{0, 1, 2};
    for (std::size_t i = 0; i < cyc.size(); ++i) images[cyc[i]] = cyc[(i + 1) % cyc.size()];
    result = s3_compose(result, from_one_line(images));
  }
  return result;
}

std::string format_s3(S3Elem g) {
  std::string s;
  for (unsigned v : kS3OneLine.at(g.index)) s.push_back(static_cast<char>('1' + v));
  return s;
}

S3Elem s3_compose(S3Elem f, S3Elem g) {
  const auto& fi = kS3OneLine.at(f.index);
  const auto& gi = kS3OneLine.at(g.index);
  return from_one_line({fi[gi[0]], fi[gi[1]], fi[gi[2]]});
}

Eigen::Matrix2d s3_rep(S3Elem g) {
  const auto& images = kS3OneLine.at(g.index);
  Eigen::Matrix3d perm = Eigen::Matrix3d::Zero();
  for (unsigned i = 0; i < 3; ++i) perm(images[i], i) = 1.0;
  Eigen::Matrix<double, 3, 2> basis;
  basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
          -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
           0.0,                 -2.0 / std::sqrt(6.0);
  return basis.transpose() * perm * basis;
}

NormEstimate lmr_norm(std::span<const S3Tuple> elements, double tol, std::uint64_t seed) {
  if (elements.empty()) throw InvalidArgument("lmr_norm: need at least one tuple");
  const std::size_t n = elements.front().size();
  if (n == 0) throw InvalidArgument("lmr_norm: tuples must be nonempty");
  if (n > kMaxTensorPower) throw ResourceLimit("lmr_norm: n=" + std::to_string(n) + " exceeds 24");
  for (const auto& t : elements)
    if (t.size() != n) throw InvalidArgument("lmr_norm: tuples must share one length");

  std::vector<std::vector<Eigen::MatrixXd>> forward;
  std::vector<std::vector<Eigen::MatrixXd>> backward;
  for (const auto& t : elements) {
    auto& f = forward.emplace_back();
    auto& b = backward.emplace_back();
    for (S3Elem g : t) {
      const Eigen::Matrix2d m = s3_rep(g);
      f.emplace_back(m);
      b.emplace_back(m.transpose());
    }
  }
  const std::size_t dim = std::size_t{1} << n;
  const double inv_k = 1.0 / static_cast<double>(elements.size());
  auto make_apply = [dim, inv_k](std::vector<std::vector<Eigen::MatrixXd>> factors) {
    return [dim, inv_k, factors = std::move(factors)](std::span<const double> v, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
      for (const auto& term : factors) {
        const auto w = kron_matvec(term, v);
        for (std::size_t i = 0; i < dim; ++i) out[i] += w[i];
      }
      for (double& o : out) o *= inv_k;
    };
  };
  const LinOp op(dim, make_apply(std::move(forward)), make_apply(std::move(backward)));
  return op_norm(op, tol, seed);
}

std::vector<LmrRow> lmr_survey(const TrialConfig& cfg, std::span<const u64> ns) {
  if (cfg.trials == 0 || cfg.k == 0) throw InvalidArgument("lmr_survey: trials and k must be >= 1");
  std::vector<LmrRow> rows;
  for (std::size_t row = 0; row < ns.size(); ++row) {
    const u64 n = ns[row];
    if (n == 0 || n > kMaxTensorPower) throw ResourceLimit("lmr_survey: n must be in [1, 24]");
    LmrRow r{n, cfg.k, cfg.trials, 0.0, 0.0, 0.0, std::vector<TrialRecord>(cfg.trials)};
    const std::uint64_t row_seed = trial_seed(cfg.master_seed, 0x10000 + row);
    parallel_for(cfg.trials, cfg.jobs, [&](u64 t) {
      const std::uint64_t seed = trial_seed(row_seed, t);
      SplitMix64 rng(seed);
      std::vector<S3Tuple> tuples(cfg.k, S3Tuple(n));
      for (auto& tup : tuples)
        for (auto& g : tup) g = S3Elem{static_cast<unsigned>(rng.below(6))};
      r.records[t] = TrialRecord{t, seed, lmr_norm(tuples, cfg.tol, seed).value};
    });
    u64 hits = 0;
    double sum = 0.0;
    for (const auto& rec : r.records) {
      if (rec.max_norm >= kUnitNormThreshold) ++hits;
      sum += rec.max_norm;
      r.max_norm = std::max(r.max_norm, rec.max_norm);
    }
    r.frequency_unit_norm = static_cast<double>(hits) / static_cast<double>(cfg.trials);
    r.mean_norm = sum / static_cast<double>(cfg.trials);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ------------------------------------------------------------- oracle ----

namespace {

using Mask = std::uint32_t;

struct MaskMaps {
  u64 p;
  std::vector<std::vector<Mask>> dilation_bits;  // per a: image bit of each x
  std::vector<u64> shifts;                       // per a
};

Mask rotate_mask(Mask m, u64 shift, u64 p) {
  if (shift == 0) return m;
  const Mask full = p == 32 ? ~Mask{0} : ((Mask{1} << p) - 1);
  return static_cast<Mask>(((m << shift) | (m >> (p - shift))) & full);
}

bool passes(Mask m, const MaskMaps& maps, const Epsilon& eps) {
  const auto size = static_cast<u64>(std::popcount(m));
  for (std::size_t i = 0; i < maps.shifts.size(); ++i) {
    Mask dil = 0;
    for (Mask bits = m; bits != 0; bits &= bits - 1) dil |= maps.dilation_bits[i][std::countr_zero(bits)];
    if (!eps.admits(static_cast<u64>(std::popcount(static_cast<Mask>(dil & ~m))), size)) return false;
    const Mask tr = rotate_mask(m, maps.shifts[i], maps.p);
    if (!eps.admits(static_cast<u64>(std::popcount(static_cast<Mask>(tr & ~m))), size)) return false;
  }
  return true;
}

}  // namespace

OracleResult min_invariant_set(u64 p, std::span<const u64> a_values, const Epsilon& epsilon, u64 budget) {
  if (p > kMaxOracleModulus) throw ResourceLimit("min_invariant_set: p=" + std::to_string(p) + " exceeds 24");
  const Field field(p);
  MaskMaps maps{p, {}, {}};
  for (u64 a : a_values) {
    const FpElem ae = field.from_u64(a);
    if (ae.value == 0) throw InvalidArgument("min_invariant_set: A must not contain 0 mod p");
    auto& bits = maps.dilation_bits.emplace_back(p);
    for (u64 x = 0; x < p; ++x) bits[x] = Mask{1} << field.mul(FpElem{x}, ae).value;
    maps.shifts.push_back(ae.value);
  }

  OracleResult out;
  const Mask limit = static_cast<Mask>((std::uint64_t{1} << p) - 1);
  for (u64 c = 1; c <= p; ++c) {
    out.min_size = c;
    // masks with popcount c in ascending order (Gosper's hack)
    Mask m = static_cast<Mask>((std::uint64_t{1} << c) - 1);
    while (true) {
      if (out.nodes_searched >= budget) return out;
      ++out.nodes_searched;
      if (passes(m, maps, epsilon)) {
        FpSubset w(p);
        for (Mask bits = m; bits != 0; bits &= bits - 1) w.insert(static_cast<u64>(std::countr_zero(bits)));
        out.witness = std::move(w);
        out.exhausted = true;
        return out;
      }
      if (m == limit) break;
      const Mask lowest = m & (~m + 1);
      const std::uint64_t ripple = std::uint64_t{m} + lowest;
      if (ripple > limit) break;
      const auto r = static_cast<Mask>(ripple);
      m = static_cast<Mask>((((r ^ m) >> 2) / lowest) | r);
    }
  }
  // unreachable: the full set always passes
  out.exhausted = true;
  return out;
}

ScanResult conjecture_scan(u64 p, u64 k, const Epsilon& epsilon, u64 samples, std::uint64_t seed, u64 budget) {
  if (k == 0 || k > p - 1) throw InvalidArgument("conjecture_scan: k must be in [1, p-1]");
  if (p > kMaxOracleModulus) throw ResourceLimit("conjecture_scan: p exceeds 24");
  ScanResult scan;
  u64 remaining = budget;
  for (u64 s = 0; s < samples; ++s) {
    SplitMix64 rng(trial_seed(seed, s));
    std::vector<u64> pool(p - 1);
    for (u64 i = 0; i < p - 1; ++i) pool[i] = i + 1;
    for (u64 i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(p - 1 - i)]);
    std::vector<u64> a(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(a.begin(), a.end());
    OracleResult r = min_invariant_set(p, a, epsilon, remaining);
    remaining -= std::min(remaining, r.nodes_searched);
    scan.complete = scan.complete && r.exhausted;
    scan.max_min_size = std::max(scan.max_min_size, r.min_size);
    scan.rows.push_back(ScanRow{std::move(a), std::move(r)});
  }
  return scan;
}

}  // namespace affres
