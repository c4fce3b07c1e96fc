#include "affres/epsilon.hpp"

#include <charconv>
#include <numeric>

#include "affres/errors.hpp"

namespace affres {

namespace {

std::uint64_t parse_u64(std::string_view digits, std::string_view whole) {
  std::uint64_t out = 0;
  if (digits.empty()) return 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw InvalidArgument("epsilon: cannot parse '" + std::string(whole) + "'");
  return out;
}

}  // namespace

Epsilon::Epsilon(std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0 || num > den)
    throw InvalidArgument("epsilon must lie in (0, 1], got " + std::to_string(num) + "/" +
                          std::to_string(den));
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Epsilon Epsilon::parse(std::string_view text) {
  if (text.empty()) throw InvalidArgument("epsilon: empty string");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Epsilon(parse_u64(text.substr(0, slash), text), parse_u64(text.substr(slash + 1), text));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Epsilon(parse_u64(text, text), 1);
  const std::string_view int_part = text.substr(0, dot);
  const std::string_view frac_part = text.substr(dot + 1);
  if (frac_part.size() > 18) throw InvalidArgument("epsilon: too many decimal digits");
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const std::uint64_t whole = parse_u64(int_part, text);
  if (whole > 1) throw InvalidArgument("epsilon must lie in (0, 1]");
  const std::uint64_t num = whole * den + parse_u64(frac_part, text);
  return Epsilon(num, den);
}

Epsilon Epsilon::divided_by(std::uint64_t factor) const {
  if (factor == 0) throw InvalidArgument("epsilon: division by zero");
  const std::uint64_t g = std::gcd(num_, factor);
  return Epsilon(num_ / g, den_ * (factor / g));
}

std::string Epsilon::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace affres
