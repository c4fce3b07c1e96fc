#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "affres/errors.hpp"
#include "affres/fp_subset.hpp"
#include "support.hpp"

using namespace affres;
using testing_support::from_set;
using testing_support::random_set;
using testing_support::to_set;

TEST_CASE("construction, membership and cached size") {
  auto s = FpSubset::from_elements(101, {0, 2, 4, 100});
  CHECK(s.size() == 4);
  CHECK(s.contains(100));
  CHECK_FALSE(s.contains(99));
  s.insert(99);
  s.insert(99);
  CHECK(s.size() == 5);
  CHECK(s.elements() == std::vector<u64>{0, 2, 4, 99, 100});
  CHECK(FpSubset(7).empty());
  CHECK(FpSubset::full(130).size() == 130);
  CHECK_THROWS_AS(FpSubset::from_elements(7, {7}), InvalidArgument);
  CHECK_THROWS_AS(FpSubset(0), InvalidArgument);
  CHECK_THROWS_AS(FpSubset::from_words(7, {0x80}), InvalidArgument);   // bit 7 >= p
  CHECK_THROWS_AS(FpSubset::from_words(7, {0, 0}), InvalidArgument);  // wrong word count
  CHECK(FpSubset::from_words(7, {0x41}) == FpSubset::from_elements(7, {0, 6}));
}

TEST_CASE("dilate examples") {
  const Field f101(101), f7(7);
  CHECK(dilate(f101, FpSubset::from_elements(101, {0, 2}), FpElem{2}) == FpSubset::from_elements(101, {0, 4}));
  CHECK(dilate(f7, FpSubset::from_elements(7, {0, 3}), FpElem{3}) == FpSubset::from_elements(7, {0, 2}));
  const auto x = FpSubset::from_elements(7, {1, 5, 6});
  CHECK(dilate(f7, x, FpElem{1}) == x);
  CHECK_THROWS_AS(dilate(f7, x, FpElem{0}), InvalidArgument);
  CHECK_THROWS_AS(dilate(f101, x, FpElem{2}), InvalidArgument);
}

TEST_CASE("translate examples") {
  CHECK(translate(FpSubset::from_elements(101, {0, 2, 4, 6}), FpElem{2}) ==
        FpSubset::from_elements(101, {2, 4, 6, 8}));
  CHECK(translate(FpSubset::from_elements(7, {5, 6}), FpElem{2}) == FpSubset::from_elements(7, {0, 1}));
  const auto x = FpSubset::from_elements(7, {1, 5});
  CHECK(translate(x, FpElem{0}) == x);
}

TEST_CASE("sumset examples") {
  CHECK(sumset_with(FpSubset::from_elements(101, {0, 2}), FpSubset::from_elements(101, {0, 4})) ==
        FpSubset::from_elements(101, {0, 2, 4, 6}));
  const auto y = FpSubset::from_elements(13, {3, 7, 12});
  CHECK(sumset_with(FpSubset::from_elements(13, {0}), y) == y);
  CHECK(sumset_with(FpSubset::full(5), FpSubset::from_elements(5, {1})) == FpSubset::full(5));
  CHECK(sumset_with(FpSubset(5), FpSubset::full(5)).empty());
}

TEST_CASE("set operations agree with std::set on random inputs across word boundaries") {
  SplitMix64 rng(1);
  for (u64 p : {3, 5, 7, 61, 67, 127, 131, 191, 193, 257, 1021}) {
    const Field f(p);
    for (int trial = 0; trial < 25; ++trial) {
      const auto xs = random_set(rng, p, 1 + rng.below(500));
      const auto ys = random_set(rng, p, 1 + rng.below(300));
      const auto x = from_set(p, xs), y = from_set(p, ys);
      const u64 a = 1 + rng.below(p - 1), b = rng.below(p);
      CHECK(to_set(dilate(f, x, FpElem{a})) == oracle::dilate(xs, a, p));
      CHECK(to_set(translate(x, FpElem{b})) == oracle::translate(xs, b, p));
      CHECK(to_set(sumset_with(x, y)) == oracle::sumset(xs, ys, p));
      CHECK(difference_count(x, y) == oracle::difference(xs, ys));
      CHECK(x.size() == xs.size());

      FpSubset acc = y;
      acc.or_translated(x, b);
      auto expect = oracle::translate(xs, b, p);
      expect.insert(ys.begin(), ys.end());
      CHECK(to_set(acc) == expect);
      CHECK(acc.size() == expect.size());
    }
  }
}

TEST_CASE("bijectivity and round trips") {
  SplitMix64 rng(2);
  for (u64 p : {11, 101, 1009}) {
    const Field f(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = from_set(p, random_set(rng, p, 200));
      const FpElem a{1 + rng.below(p - 1)};
      CHECK(dilate(f, x, a).size() == x.size());
      CHECK(translate(x, a).size() == x.size());
      CHECK(dilate(f, dilate(f, x, a), fp_inv(f, a)) == x);
      CHECK(translate(translate(x, a), FpElem{p - a.value}) == x);
    }
  }
}

TEST_CASE("sumset is commutative and associative") {
  SplitMix64 rng(3);
  for (u64 p : {13, 67, 131}) {
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = from_set(p, random_set(rng, p, 60));
      const auto y = from_set(p, random_set(rng, p, 90));
      const auto z = from_set(p, random_set(rng, p, 30));
      CHECK(sumset_with(x, y) == sumset_with(y, x));
      CHECK(sumset_with(sumset_with(x, y), z) == sumset_with(x, sumset_with(y, z)));
    }
  }
}

TEST_CASE("FPSET1 round trip and layout") {
  const auto x = FpSubset::from_elements(131, {0, 1, 64, 130});
  std::stringstream buf;
  write_fpset(buf, x);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 6 + 8 + 3 * 8);
  CHECK(bytes.substr(0, 6) == "FPSET1");
  CHECK(static_cast<unsigned char>(bytes[6]) == 131);
  CHECK(static_cast<unsigned char>(bytes[14]) == 0x03);                // bits 0 and 1 of word 0
  CHECK(static_cast<unsigned char>(bytes[22]) == 0x01);                // bit 64
  CHECK(static_cast<unsigned char>(bytes[30]) == 0x04);                // bit 130 = word 2, bit 2
  std::stringstream in(bytes);
  CHECK(read_fpset(in) == x);

  std::stringstream bad_magic("FPSET2" + bytes.substr(6));
  CHECK_THROWS_AS(read_fpset(bad_magic), InvalidArgument);
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_fpset(truncated), InvalidArgument);
}

TEST_CASE("modulus mismatch is rejected") {
  const auto x = FpSubset::from_elements(7, {1});
  const auto y = FpSubset::from_elements(11, {1});
  CHECK_THROWS_AS(difference_count(x, y), InvalidArgument);
  CHECK_THROWS_AS(sumset_with(x, y), InvalidArgument);
  FpSubset z = x;
  CHECK_THROWS_AS(z |= y, InvalidArgument);
}
