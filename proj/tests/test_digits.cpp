#include <doctest.h>

#include <optional>
#include <random>

#include "ctseq/digits.hpp"

using namespace ctseq;

TEST_CASE("to_digits produces the base-p expansion") {
  CHECK(to_digits(std::uint64_t{192}, 5).str() == "1232");
  CHECK(to_digits(std::uint64_t{0}, 7).str() == "0");
  // the worked index; the recomputed string, not the misprinted one
  CHECK(to_digits(std::uint64_t{75156245}, 5).str() == "123214444440");
  CHECK(to_digits(std::uint64_t{75156248}, 5).str() == "123214444443");
  CHECK(to_digits(BigInt("75156245"), 5).str() == "123214444440");
}

TEST_CASE("to_digits rejects composite moduli") {
  CHECK_THROWS_AS(to_digits(std::uint64_t{10}, 4), InvalidInputError);
  CHECK_THROWS_AS(to_digits(std::uint64_t{10}, 1), InvalidInputError);
  CHECK_THROWS_AS(to_digits(std::uint64_t{10}, 9), InvalidInputError);
  CHECK(is_prime(2));
  CHECK(is_prime(199));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(187));  // 11*17
}

TEST_CASE("from_digits inverts to_digits") {
  CHECK(from_digits(BasePDigits::parse(5, "1232")) == 192);
  CHECK(from_digits(BasePDigits::parse(3, "0000")) == 0);
  // z 0^k: 2 * 3^3
  CHECK(from_digits(BasePDigits::parse(3, "2000")) == 54);
  CHECK_THROWS_AS(BasePDigits(5, {1, 5}), InvalidInputError);
  CHECK_THROWS_AS(BasePDigits::parse(5, "19"), InvalidInputError);
}

TEST_CASE("round trip over random values and primes") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
    for (int it = 0; it < 200; ++it) {
      std::uint64_t n = rng() >> (rng() % 40);
      CHECK(from_digits(to_digits(n, p)) == n);
    }
  }
}

TEST_CASE("leading zeros do not change the value") {
  BasePDigits w = BasePDigits::parse(5, "1232");
  BasePDigits padded = w.left_padded(10);
  CHECK(padded.size() == 10);
  CHECK(from_digits(padded) == from_digits(w));
  CHECK(padded == w);
  CHECK(w.stripped().str() == "1232");
  CHECK(BasePDigits::parse(3, "000").stripped().str() == "0");
}

TEST_CASE("textual form for large bases uses dot separators") {
  BasePDigits w(13, {12, 0, 7});
  CHECK(w.str() == "12.0.7");
  CHECK(BasePDigits::parse(13, "12.0.7") == w);
  CHECK(from_digits(w) == 12 * 169 + 0 * 13 + 7);
  CHECK_THROWS_AS(BasePDigits::parse(13, "12.13.7"), InvalidInputError);
}

TEST_CASE("add carries digit strings") {
  auto add_str = [](std::uint32_t p, const char* a, const char* b) {
    return add(BasePDigits::parse(p, a), BasePDigits::parse(p, b)).str();
  };
  CHECK(add_str(5, "444", "1") == "1000");
  CHECK(add_str(5, "1232", "0") == "1232");
  // the prefix-shift example: n + 7 * 5^8
  BasePDigits n = BasePDigits::parse(5, "123214444440");
  BasePDigits delta = to_digits(std::uint64_t{7} * 390625 * 5 * 5 * 5, 5);
  CHECK(from_digits(add(n, delta)) == BigInt(75156245) + 2734375);
  CHECK(add(n, delta) == to_digits(BigInt(75156245) + 2734375, 5));
}

TEST_CASE("add agrees with integer addition on random pairs") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 13u}) {
    for (int it = 0; it < 300; ++it) {
      std::uint64_t a = rng() >> (rng() % 50);
      std::uint64_t b = rng() >> (rng() % 50);
      CHECK(from_digits(add(to_digits(a, p), to_digits(b, p))) ==
            BigInt(a) + b);
    }
  }
  CHECK_THROWS_AS(add(to_digits(std::uint64_t{1}, 3),
                      to_digits(std::uint64_t{1}, 5)),
                  InvalidInputError);
}

TEST_CASE("decompose_tail splits the maximal run above the suffix") {
  SUBCASE("run present") {
    auto d = decompose_tail(BasePDigits::parse(5, "120444443"), 1);
    CHECK(d.head.str() == "12");
    CHECK(d.run_bound == 0);
    CHECK(d.run_length == 5);
    CHECK(d.tail.str() == "3");
  }
  SUBCASE("no run above the suffix") {
    auto d = decompose_tail(BasePDigits::parse(3, "2000"), 0);
    CHECK(d.head.str() == "200");
    CHECK(d.run_bound == 0);
    CHECK(d.run_length == 0);
    CHECK(d.tail.size() == 0);
  }
  SUBCASE("exact pattern") {
    auto d = decompose_tail(BasePDigits::parse(5, "3444"), 0);
    CHECK(d.head.size() == 0);
    CHECK(d.run_bound == 3);
    CHECK(d.run_length == 3);
    CHECK(d.tail.size() == 0);
  }
  SUBCASE("all p-1 above the suffix wants padding") {
    CHECK_THROWS_AS(decompose_tail(BasePDigits::parse(3, "2"), 0),
                    InapplicableError);
    CHECK_THROWS_AS(decompose_tail(BasePDigits::parse(5, "44443"), 1),
                    InapplicableError);
    // padding on the left resolves it
    auto d = decompose_tail(BasePDigits::parse(5, "044443"), 1);
    CHECK(d.run_bound == 0);
    CHECK(d.run_length == 4);
  }
}

TEST_CASE("decompose_tail reconstructs its input") {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int it = 0; it < 300; ++it) {
      std::size_t len = 1 + rng() % 24;
      std::vector<std::uint32_t> digits(len);
      for (auto& d : digits) d = rng() % p;
      BasePDigits w(p, digits);
      std::size_t suffix = rng() % (len + 1);
      std::optional<TailDecomposition> dec;
      try {
        dec = decompose_tail(w, suffix);
      } catch (const InapplicableError&) {
        // every digit above the suffix is p-1
        for (std::size_t i = 0; i + suffix < len; ++i) {
          CHECK(digits[i] == p - 1);
        }
        continue;
      }
      CHECK(dec->run_bound != p - 1);
      std::vector<std::uint32_t> rebuilt = dec->head.digits();
      rebuilt.push_back(dec->run_bound);
      for (std::uint64_t i = 0; i < dec->run_length; ++i) {
        rebuilt.push_back(p - 1);
      }
      for (std::uint32_t d : dec->tail.digits()) rebuilt.push_back(d);
      CHECK(rebuilt == digits);
    }
  }
}

TEST_CASE("compare_value orders by value across representations") {
  CHECK(compare_value(BasePDigits::parse(5, "0123"),
                      BasePDigits::parse(5, "123")) == 0);
  CHECK(compare_value(BasePDigits::parse(5, "124"),
                      BasePDigits::parse(5, "123")) > 0);
  CHECK(compare_value(BasePDigits::parse(5, "123"),
                      BasePDigits::parse(5, "1000")) < 0);
}
