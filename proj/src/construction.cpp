#include "affres/construction.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "affres/errors.hpp"

namespace affres {

BigCount operator*(BigCount x, BigCount y) noexcept {
  if (x.overflow_ || y.overflow_) {
    // 0 * overflow stays 0
    if ((!x.overflow_ && x.value_ == 0) || (!y.overflow_ && y.value_ == 0)) return BigCount(0);
    return BigCount::overflow();
  }
  if (x.value_ != 0 && y.value_ > ~u128{0} / x.value_) return BigCount::overflow();
  return BigCount(x.value_ * y.value_);
}

BigCount operator+(BigCount x, BigCount y) noexcept {
  if (x.overflow_ || y.overflow_ || y.value_ > ~u128{0} - x.value_) return BigCount::overflow();
  return BigCount(x.value_ + y.value_);
}

BigCount BigCount::pow(u64 exponent) const noexcept {
  BigCount result(1);
  BigCount base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

std::strong_ordering operator<=>(const BigCount& x, const BigCount& y) noexcept {
  if (x.overflow_ || y.overflow_) return x.overflow_ <=> y.overflow_;
  return x.value_ <=> y.value_;
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string BigCount::to_string() const { return overflow_ ? "overflow" : u128_to_string(value_); }

ConstructionParams ConstructionParams::make(const Field& field, std::span<const FpElem> a_values,
                                            const Epsilon& epsilon) {
  if (a_values.empty()) throw InvalidArgument("A must be nonempty");
  std::set<u64> seen;
  std::vector<FpElem> reduced;
  for (FpElem a : a_values) {
    const FpElem r = field.from_u64(a.value);
    if (r.value == 0) throw InvalidArgument("A must not contain 0 (mod p)");
    if (!seen.insert(r.value).second)
      throw InvalidArgument("A contains duplicate element " + std::to_string(r.value) + " (mod p)");
    reduced.push_back(r);
  }
  return ConstructionParams{field, std::move(reduced), epsilon, epsilon.side_length()};
}

ConstructionParams ConstructionParams::make(const Field& field, std::span<const long long> a_values,
                                            const Epsilon& epsilon) {
  std::vector<FpElem> elems;
  elems.reserve(a_values.size());
  for (long long a : a_values) elems.push_back(field.elem(a));
  return make(field, std::span<const FpElem>(elems), epsilon);
}

BigCount size_bound(u64 k, u64 side_length) {
  const BigCount box = BigCount(side_length).pow(k);  // L^k
  if (box.is_overflow()) return BigCount::overflow();
  const u128 exponent = static_cast<u128>(k) * box.value();
  if (exponent > ~u64{0}) return side_length <= 1 ? BigCount(side_length) : BigCount::overflow();
  return box * BigCount(side_length).pow(static_cast<u64>(exponent));
}

BigCount size_bound(const ConstructionParams& params) { return size_bound(params.k(), params.side_length); }

FpSubset build_P(const ConstructionParams& params) {
  const u64 p = params.field.modulus();
  FpSubset P = FpSubset::from_elements(p, {0});
  for (FpElem a : params.a_values) {
    // {0, a, 2a, ..., (L-1)a}; stops once the progression wraps to 0
    FpSubset progression(p);
    FpElem term{0};
    for (u64 n = 0; n < params.side_length; ++n) {
      if (n > 0 && term.value == 0) break;
      progression.insert(term.value);
      term = params.field.add(term, a);
    }
    P = sumset_with(P, progression);
  }
  return P;
}

FpSubset build_Q(const ConstructionParams& params) {
  const Field& field = params.field;
  FpSubset Q = FpSubset::from_elements(field.modulus(), {1});
  for (FpElem a : params.a_values) {
    FpSubset next(field.modulus());
    FpElem power{1};
    for (u64 n = 0; n < params.side_length; ++n) {
      if (n > 0 && power.value == 1) break;
      next |= dilate(field, Q, power);
      power = field.mul(power, a);
    }
    Q = std::move(next);
  }
  return Q;
}

ConstructionResult build_X(const ConstructionParams& params, const ConstructionOptions& options) {
  const BigCount bound = size_bound(params);
  if (bound > BigCount(options.resource_cap)) {
    std::string a_list;
    for (FpElem a : params.a_values) a_list += (a_list.empty() ? "" : ",") + std::to_string(a.value);
    throw ResourceLimit("construction too large: p=" + std::to_string(params.field.modulus()) + " A={" + a_list +
                        "} eps=" + params.epsilon.to_string() + " L=" + std::to_string(params.side_length) +
                        " size_bound=" + bound.to_string() + " exceeds cap " + u128_to_string(options.resource_cap));
  }
  const Field& field = params.field;
  const u64 p = field.modulus();

  FpSubset P = build_P(params);
  FpSubset Q = build_Q(params);

  FpSubset T = FpSubset::from_elements(p, {0});
  Q.for_each([&](u64 y) { T = sumset_with(T, dilate(field, P, FpElem{y})); });  // ascending y

  const std::vector<u64> q_elems = Q.elements();
  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(q_elems.size())));
  std::vector<FpSubset> partial(jobs, FpSubset(p));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < q_elems.size(); i += jobs)
      partial[w] |= dilate(field, T, field.inv(FpElem{q_elems[i]}));
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
  }
  FpSubset X(p);
  for (const auto& part : partial) X |= part;

  const BigCount box = BigCount(params.side_length).pow(params.k());
  ConstructionResult result{std::move(P), std::move(Q), std::move(T), std::move(X), bound, BigCount{}, false, false, {}};
  result.structural_bound = BigCount(result.Q.size()) * BigCount(result.P.size()).pow(result.Q.size());
  result.injective_P = BigCount(result.P.size()) == box;
  result.injective_Q = BigCount(result.Q.size()) == box;
  result.defects = invariance_defects(field, result.X, params.a_values, params.epsilon);
  return result;
}

}  // namespace affres
