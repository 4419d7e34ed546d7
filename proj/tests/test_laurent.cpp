#include <doctest.h>

#include <random>

#include "ctseq/laurent.hpp"

using namespace ctseq;

namespace {

LaurentPoly P111() { return Trinomial(1, 1, 1).to_poly(); }

Trinomial random_trinomial(std::mt19937_64& rng) {
  auto pick = [&rng]() {
    return static_cast<std::int64_t>(rng() % 7) - 3;
  };
  for (;;) {
    std::int64_t a = pick(), b = pick(), c = pick();
    if (a || b || c) return Trinomial(a, b, c);
  }
}

}  // namespace

TEST_CASE("mul convolves sparse maps") {
  LaurentPoly sq = mul(P111(), P111());
  CHECK(sq == LaurentPoly::parse("-2:1,-1:2,0:3,1:2,2:1"));
  CHECK(mul(sq, LaurentPoly::one()) == sq);
  CHECK(mul(sq, LaurentPoly::zero()).is_zero());
}

TEST_CASE("pow by binary exponentiation") {
  CHECK(ct(pow(P111(), 6)) == 141);
  CHECK(pow(P111(), 1) == P111());
  CHECK(pow(P111(), 0) == LaurentPoly::one());
  CHECK(ct(pow(Trinomial(1, 2, 1).to_poly(), 3)) == 20);
}

TEST_CASE("ct and coeff read coefficients") {
  CHECK(ct(P111()) == 1);
  CHECK(ct(pow(P111(), 2)) == 3);
  CHECK(ct(LaurentPoly::zero()) == 0);
  LaurentPoly sq = pow(P111(), 2);
  CHECK(coeff(sq, 1) == 2);
  CHECK(coeff(sq, -1) == 2);
  CHECK(coeff(sq, 3) == 0);
}

TEST_CASE("reduce_mod reduces coefficientwise") {
  LaurentPoly cubed = pow(P111(), 3);
  CHECK(cubed == LaurentPoly::parse("-3:1,-2:3,-1:6,0:7,1:6,2:3,3:1"));
  LaurentPoly reduced = reduce_mod(cubed, 3);
  CHECK(reduced == LaurentPoly::parse("-3:1,0:1,3:1"));
  CHECK(reduce_mod(reduced, 3) == reduced);
  CHECK(reduce_mod(LaurentPoly::zero(), 3).is_zero());
}

TEST_CASE("Frobenius identity mod p for random trinomials") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (int it = 0; it < 12; ++it) {
      LaurentPoly P = random_trinomial(rng).to_poly();
      CHECK(reduce_mod(pow(P, p), p) ==
            reduce_mod(substitute_power(P, p), p));
    }
  }
}

TEST_CASE("constant term is invariant under x -> x^k") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 20; ++it) {
    LaurentPoly P = random_trinomial(rng).to_poly();
    std::uint64_t n = rng() % 14;
    std::uint64_t k = 1 + rng() % 4;
    CHECK(ct(pow(substitute_power(P, k), n)) == ct(pow(P, n)));
  }
}

TEST_CASE("mul is commutative and associative") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 20; ++it) {
    LaurentPoly f = pow(random_trinomial(rng).to_poly(), rng() % 5);
    LaurentPoly g = pow(random_trinomial(rng).to_poly(), rng() % 5);
    LaurentPoly h = pow(random_trinomial(rng).to_poly(), rng() % 5);
    CHECK(mul(f, g) == mul(g, f));
    CHECK(mul(mul(f, g), h) == mul(f, mul(g, h)));
  }
}

TEST_CASE("modular pow matches exact pow reduced") {
  std::mt19937_64 rng(29);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int it = 0; it < 10; ++it) {
      LaurentPoly P = random_trinomial(rng).to_poly();
      std::uint64_t n = rng() % 40;
      CHECK(pow(P, n, p) == reduce_mod(pow(P, n), p));
    }
  }
}

TEST_CASE("polynomial text form round trips") {
  const char* text = "-2:-1,0:1,3:17";
  CHECK(LaurentPoly::parse(text).str() == text);
  CHECK(LaurentPoly::parse("0:1,2:-1").str() == "0:1,2:-1");
  CHECK(LaurentPoly::parse("2:1,2:-1").is_zero());
  CHECK_THROWS_AS(LaurentPoly::parse("2"), InvalidInputError);
  CHECK_THROWS_AS(LaurentPoly::parse("a:1"), InvalidInputError);
}

TEST_CASE("trinomial shorthand") {
  Trinomial t = Trinomial::parse("1,1,1");
  CHECK(t == Trinomial(1, 1, 1));
  CHECK(t.symmetric());
  CHECK(Trinomial::parse("2,-1,3").str() == "2,-1,3");
  CHECK_FALSE(Trinomial::parse("2,-1,3").symmetric());
  CHECK_THROWS_AS(Trinomial::parse("0,0,0"), InvalidInputError);
  CHECK_THROWS_AS(Trinomial::parse("1,2"), InvalidInputError);
  CHECK(t.to_poly() == LaurentPoly::parse("-1:1,0:1,1:1"));
}
