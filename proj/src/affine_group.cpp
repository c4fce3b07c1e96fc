#include "affres/affine_group.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "affres/errors.hpp"

namespace affres {

GeneratorSet::GeneratorSet(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw InvalidArgument("generator set must contain at least one element");
  for (const auto& f : maps_)
    if (f.a.value == 0) throw InvalidArgument("affine map with zero scale is not invertible");
}

AffineMap AffineGroup::make(long long a, long long b) const {
  AffineMap f{field_.elem(a), field_.elem(b)};
  if (f.a.value == 0) throw InvalidArgument("affine map scale must be nonzero mod p");
  return f;
}

AffineMap AffineGroup::compose(const AffineMap& f, const AffineMap& g) const noexcept {
  return AffineMap{field_.mul(f.a, g.a), field_.add(field_.mul(f.a, g.b), f.b)};
}

AffineMap AffineGroup::inverse(const AffineMap& f) const {
  const FpElem ainv = field_.inv(f.a);
  return AffineMap{ainv, field_.neg(field_.mul(ainv, f.b))};
}

FpSubset AffineGroup::act_on_set(const AffineMap& f, const FpSubset& set) const {
  return translate(dilate(field_, set, f.a), f.b);
}

std::vector<AffineMap> AffineGroup::elements() const {
  std::vector<AffineMap> out;
  out.reserve(order());
  for (u64 a = 1; a < modulus(); ++a)
    for (u64 b = 0; b < modulus(); ++b) out.push_back(AffineMap{FpElem{a}, FpElem{b}});
  return out;
}

AffineMap AffineGroup::parse(std::string_view text) const {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos)
    throw InvalidArgument("affine map must be written as \"a,b\", got '" + std::string(text) + "'");
  auto read = [&](std::string_view part) {
    long long v = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw InvalidArgument("cannot parse affine map '" + std::string(text) + "'");
    return v;
  };
  return make(read(text.substr(0, comma)), read(text.substr(comma + 1)));
}

std::string AffineGroup::format(const AffineMap& f) {
  return std::to_string(f.a.value) + "," + std::to_string(f.b.value);
}

std::complex<double> character_value(const AffineGroup& group, u64 j, const AffineMap& f) {
  const u64 n = group.modulus() - 1;
  if (j > n - 1) throw InvalidArgument("character index out of range");
  const Field& field = group.field();
  const u64 d = discrete_log(field, field.generator(), f.a);
  const u64 r = static_cast<u64>(static_cast<u128>(j) * d % n);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

std::vector<double> character_norms(const AffineGroup& group, const GeneratorSet& gens) {
  const Field& field = group.field();
  const u64 n = group.modulus() - 1;
  std::vector<u64> logs;
  logs.reserve(gens.size());
  for (const auto& g : gens) logs.push_back(discrete_log(field, field.generator(), g.a));

  const double k = static_cast<double>(gens.size());
  std::vector<double> out;
  out.reserve(n > 0 ? n - 1 : 0);
  for (u64 j = 1; j + 1 <= n; ++j) {
    double re = 0.0;
    double im = 0.0;
    for (u64 d : logs) {
      const u64 r = static_cast<u64>(static_cast<u128>(j) * d % n);
      if (r == 0) {
        re += 1.0;
        continue;
      }
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
      re += std::cos(angle);
      im += std::sin(angle);
    }
    out.push_back(std::hypot(re, im) / k);
  }
  return out;
}

void standard_rep_matvec(const AffineGroup& group, const AffineMap& f, std::span<const double> v,
                         std::span<double> out) {
  const u64 p = group.modulus();
  if (v.size() != p || out.size() != p) throw InvalidArgument("standard_rep_matvec: vector length must equal p");
  // image index walks x -> a x + b incrementally: y_{x+1} = y_x + a.
  u64 y = f.b.value;
  for (u64 x = 0; x < p; ++x) {
    out[y] = v[x];
    y += f.a.value;
    if (y >= p) y -= p;
  }
}

std::vector<double> standard_rep_matvec(const AffineGroup& group, const AffineMap& f,
                                        std::span<const double> v) {
  std::vector<double> out(v.size());
  standard_rep_matvec(group, f, v, out);
  return out;
}

}  // namespace affres
