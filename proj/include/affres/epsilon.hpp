#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace affres {

/// An accuracy level in (0, 1], held as an exact reduced fraction so that
/// defect tests `d <= eps * |X|` are integer comparisons.
class Epsilon {
 public:
  /// num/den, reduced; requires 0 < num <= den.
  Epsilon(std::uint64_t num, std::uint64_t den);

  /// Accepts "1/3", "0.25", "1" (decimal or fraction, no exponent).
  static Epsilon parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// L = ceil(1/eps), the side length of the progressions.
  std::uint64_t side_length() const noexcept { return (den_ + num_ - 1) / num_; }

  /// eps / factor.
  Epsilon divided_by(std::uint64_t factor) const;

  /// defect <= eps * size, exactly.
  bool admits(std::uint64_t defect, std::uint64_t size) const noexcept {
    return static_cast<unsigned __int128>(defect) * den_ <=
           static_cast<unsigned __int128>(num_) * size;
  }

  std::string to_string() const;

  friend bool operator==(const Epsilon&, const Epsilon&) = default;

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

}  // namespace affres
