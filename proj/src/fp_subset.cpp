#include "affres/fp_subset.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "affres/errors.hpp"

namespace affres {

namespace {

constexpr u64 word_count(u64 p) { return (p + 63) / 64; }

// 64 bits of `src` starting at bit `pos` (pos may be negative; missing bits are 0).
u64 fetch64(std::span<const u64> src, long long pos) noexcept {
  if (pos < 0) {
    const auto neg = static_cast<u64>(-pos);
    return neg >= 64 ? 0 : src[0] << neg;
  }
  const auto upos = static_cast<u64>(pos);
  const u64 wi = upos >> 6U;
  const u64 off = upos & 63U;
  if (wi >= src.size()) return 0;
  u64 v = src[wi] >> off;
  if (off != 0 && wi + 1 < src.size()) v |= src[wi + 1] << (64 - off);
  return v;
}

// dst[dst_lo + i] |= src[src_lo + i] for i in [0, len).
void or_bit_range(std::span<u64> dst, std::span<const u64> src, u64 src_lo, u64 len, u64 dst_lo) noexcept {
  if (len == 0) return;
  const u64 dst_hi = dst_lo + len;
  const auto delta = static_cast<long long>(src_lo) - static_cast<long long>(dst_lo);
  for (u64 w = dst_lo >> 6U; w <= (dst_hi - 1) >> 6U; ++w) {
    const u64 base = w * 64;
    u64 mask = ~0ULL;
    if (base < dst_lo) mask &= ~0ULL << (dst_lo - base);
    if (dst_hi < base + 64) mask &= (1ULL << (dst_hi - base)) - 1;
    dst[w] |= fetch64(src, static_cast<long long>(base) + delta) & mask;
  }
}

void put_u64_le(std::ostream& out, u64 v) {
  std::array<char, 8> buf{};
  for (std::size_t i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(buf.data(), buf.size());
}

u64 get_u64_le(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
    throw InvalidArgument("FPSET1: truncated input");
  u64 v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<u64>(buf[i]) << (8 * i);
  return v;
}

constexpr std::string_view kMagic = "FPSET1";

}  // namespace

FpSubset::FpSubset(u64 p) : p_(p), words_(word_count(p), 0) {
  if (p == 0) throw InvalidArgument("FpSubset: modulus must be positive");
}

FpSubset FpSubset::full(u64 p) {
  FpSubset s(p);
  std::fill(s.words_.begin(), s.words_.end(), ~0ULL);
  if (p % 64 != 0) s.words_.back() = (1ULL << (p % 64)) - 1;
  s.count_ = p;
  return s;
}

FpSubset FpSubset::from_elements(u64 p, std::span<const u64> elements) {
  FpSubset s(p);
  for (u64 x : elements) s.insert(x);
  return s;
}

FpSubset FpSubset::from_words(u64 p, std::vector<u64> words) {
  if (words.size() != word_count(p)) throw InvalidArgument("FpSubset: word count does not match modulus");
  if (p % 64 != 0 && (words.back() >> (p % 64)) != 0)
    throw InvalidArgument("FpSubset: bits set beyond the modulus");
  FpSubset s(p);
  s.words_ = std::move(words);
  s.recount();
  return s;
}

void FpSubset::insert(u64 x) {
  if (x >= p_) throw InvalidArgument("FpSubset: element " + std::to_string(x) + " out of range");
  u64& w = words_[x >> 6U];
  const u64 bit = 1ULL << (x & 63U);
  if ((w & bit) == 0) {
    w |= bit;
    ++count_;
  }
}

std::vector<u64> FpSubset::elements() const {
  std::vector<u64> out;
  out.reserve(count_);
  for_each([&](u64 x) { out.push_back(x); });
  return out;
}

FpSubset& FpSubset::operator|=(const FpSubset& other) {
  if (other.p_ != p_) throw InvalidArgument("FpSubset: modulus mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  recount();
  return *this;
}

void FpSubset::or_translated(const FpSubset& src, u64 shift) {
  if (src.p_ != p_) throw InvalidArgument("FpSubset: modulus mismatch");
  shift %= p_;
  // bits [0, p - shift) move up by shift; bits [p - shift, p) wrap to [0, shift).
  or_bit_range(words_, src.words_, 0, p_ - shift, shift);
  or_bit_range(words_, src.words_, p_ - shift, shift, 0);
  recount();
}

void FpSubset::recount() noexcept {
  u64 c = 0;
  for (u64 w : words_) c += static_cast<u64>(std::popcount(w));
  count_ = c;
}

u64 difference_count(const FpSubset& x, const FpSubset& y) {
  if (x.modulus() != y.modulus()) throw InvalidArgument("difference_count: modulus mismatch");
  const auto xw = x.words();
  const auto yw = y.words();
  u64 c = 0;
  for (std::size_t i = 0; i < xw.size(); ++i) c += static_cast<u64>(std::popcount(xw[i] & ~yw[i]));
  return c;
}

FpSubset dilate(const Field& field, const FpSubset& set, FpElem a) {
  if (a.value == 0) throw InvalidArgument("dilate: scale factor must be nonzero");
  if (field.modulus() != set.modulus()) throw InvalidArgument("dilate: modulus mismatch");
  FpSubset out(set.modulus());
  set.for_each([&](u64 x) { out.insert(field.mul(FpElem{x}, a).value); });
  return out;
}

FpSubset translate(const FpSubset& set, FpElem a) {
  FpSubset out(set.modulus());
  out.or_translated(set, a.value);
  return out;
}

FpSubset sumset_with(const FpSubset& x, const FpSubset& y) {
  if (x.modulus() != y.modulus()) throw InvalidArgument("sumset_with: modulus mismatch");
  const FpSubset& shifts = x.size() <= y.size() ? x : y;
  const FpSubset& base = x.size() <= y.size() ? y : x;
  FpSubset out(x.modulus());
  shifts.for_each([&](u64 s) { out.or_translated(base, s); });
  return out;
}

void write_fpset(std::ostream& out, const FpSubset& set) {
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  put_u64_le(out, set.modulus());
  for (u64 w : set.words()) put_u64_le(out, w);
}

FpSubset read_fpset(std::istream& in) {
  std::array<char, 6> magic{};
  if (!in.read(magic.data(), magic.size()) || std::string_view(magic.data(), magic.size()) != kMagic)
    throw InvalidArgument("FPSET1: bad magic");
  const u64 p = get_u64_le(in);
  if (p == 0) throw InvalidArgument("FPSET1: zero modulus");
  std::vector<u64> words(word_count(p));
  for (u64& w : words) w = get_u64_le(in);
  return FpSubset::from_words(p, std::move(words));
}

}  // namespace affres
