#include <doctest.h>

#include "rdlab/scales.hpp"

using namespace rdlab;

namespace {
const Scale kDyadic({1, 2, 4, 8});
const Scale kMixed({1, 2, 6, 12, 24});
}  // namespace

TEST_CASE("scale validation") {
  CHECK_THROWS(Scale({2, 4}));      // s_0 != 1
  CHECK_THROWS(Scale({1, 3, 6, 8}));  // 6 does not divide 8
  CHECK_THROWS(Scale({1, 2, 2}));   // not strictly increasing
  CHECK(kDyadic.depth() == 3);
  CHECK(kMixed.at(2) == 6);
}

TEST_CASE("canonicalize reduces to lowest level") {
  CHECK(canonicalize(2, 2, kDyadic) == Character{1, 1});  // 2/4 = 1/2
  CHECK(canonicalize(0, 3, kDyadic) == Character{0, 0});
  CHECK(canonicalize(3, 2, kDyadic) == Character{2, 3});  // 3/4 stays primitive
  CHECK_THROWS(canonicalize(4, 2, kDyadic));
  CHECK_THROWS(canonicalize(1, 9, kDyadic));
}

TEST_CASE("canonicalize 3/4 by brute force") {
  // 3/4 is not among the level<=1 roots of unity.
  const Character z = canonicalize(3, 2, kDyadic);
  CHECK(z.level == 2);
  for (std::int64_t j = 0; j < kDyadic.at(1); ++j) {
    const auto w = canonicalize(j, 1, kDyadic);
    CHECK(!(w == z));
  }
}

TEST_CASE("character multiplication and inverse") {
  const Scale s({1, 2, 4});
  // quarter turn squared is the half turn
  const Character q = canonicalize(1, 2, s);
  CHECK(char_mul(q, q, s) == Character{1, 1});
  CHECK(char_inv(Character{2, 1}, s) == Character{2, 3});

  // group laws over all of G_3 on the dyadic scale
  for (std::int64_t i = 0; i < kDyadic.at(3); ++i) {
    const auto z = canonicalize(i, 3, kDyadic);
    CHECK(char_mul(z, char_inv(z, kDyadic), kDyadic) == Character{0, 0});
    for (std::int64_t j = 0; j < kDyadic.at(3); ++j) {
      const auto w = canonicalize(j, 3, kDyadic);
      CHECK(char_mul(z, w, kDyadic) == char_mul(w, z, kDyadic));
      CHECK(char_mul(z, w, kDyadic) == canonicalize((i + j) % kDyadic.at(3), 3, kDyadic));
    }
  }
}

TEST_CASE("char_value matches the root of unity") {
  const Character z = canonicalize(3, 2, kDyadic);
  const auto v = char_value(z, 1, kDyadic);
  CHECK(std::abs(v - std::polar(1.0, 2.0 * 3.14159265358979323846 * 3.0 / 4.0)) < 1e-12);
  CHECK(std::abs(char_value(z, 4, kDyadic) - 1.0) < 1e-12);  // z^4 = 1
  CHECK(std::abs(char_value(z, -1, kDyadic) - std::conj(v)) < 1e-12);
}

TEST_CASE("shells partition the groups") {
  CHECK(shell(0, kDyadic) == std::vector<Character>{Character{0, 0}});
  const auto s2 = shell(2, Scale({1, 2, 4}));
  CHECK(s2.size() == 2);  // 4 - 2
  CHECK(s2[0] == Character{2, 1});
  CHECK(s2[1] == Character{2, 3});

  CHECK(shell(2, Scale({1, 2, 6})).size() == 4);  // 6 - 2
  for (int n = 1; n <= kMixed.depth(); ++n) {
    CHECK(shell(n, kMixed).size() ==
          static_cast<std::size_t>(kMixed.at(n) - kMixed.at(n - 1)));
  }
}

TEST_CASE("length sequence flags are recomputed") {
  const auto L = LengthSequence::geometric(2.0, 1.0, 1.0, 1.0, kDyadic);
  CHECK(L.rd_admissible);
  CHECK(L.fast_growth);
  CHECK(L.at(0) == 2.0);
  CHECK(L.at(3) == 16.0);

  // lambda_n = n + 1 violates the admissibility inequality
  const auto weak = LengthSequence::make({1, 2, 3, 4}, 1.0, 1.0, 1.0, kDyadic);
  CHECK(!weak.rd_admissible);

  // growth certificate failure: s_m = 2^m but lambda flat-ish
  const auto slow = LengthSequence::make({2.0, 2.2, 2.4, 2.6}, 1.0, 1.0, 1.0, kDyadic);
  CHECK(!slow.fast_growth);

  CHECK_THROWS(LengthSequence::make({2, 2, 3, 4}, 1.0, 1.0, 1.0, kDyadic));  // not increasing
  CHECK_THROWS(LengthSequence::make({2, 4}, 1.0, 1.0, 1.0, kDyadic));        // wrong size
}

TEST_CASE("length function is non-Archimedean") {
  const auto L = LengthSequence::make({2, 4, 8, 16}, 1.0, 1.0, 1.0, kDyadic);
  CHECK(length_of(Character{0, 0}, L) == 2.0);
  CHECK(length_of(canonicalize(1, 2, kDyadic), L) == 8.0);

  // exhaustive over G_2 x G_2
  for (std::int64_t i = 0; i < 4; ++i) {
    for (std::int64_t j = 0; j < 4; ++j) {
      const auto z = canonicalize(i, 2, kDyadic);
      const auto w = canonicalize(j, 2, kDyadic);
      CHECK(length_of(char_mul(z, w, kDyadic), L) <=
            std::max(length_of(z, L), length_of(w, L)) + 1e-15);
    }
  }
}

TEST_CASE("closure of G_m under multiplication, mixed scale") {
  for (int m = 0; m <= kMixed.depth(); ++m) {
    for (std::int64_t i = 0; i < kMixed.at(m); ++i) {
      for (std::int64_t j = 0; j < kMixed.at(m); ++j) {
        const auto z = char_mul(canonicalize(i, m, kMixed), canonicalize(j, m, kMixed), kMixed);
        CHECK(z.level <= m);
      }
    }
  }
}
