#include <doctest.h>

#include <random>

#include "ctseq/reduce.hpp"
#include "ctseq/trinomial.hpp"

using namespace ctseq;

namespace {

const Trinomial kT{1, 1, 1};
const LaurentPoly kMotzkinQ = LaurentPoly::parse("0:1,2:-1");

std::vector<BigInt> coeff_vec(std::initializer_list<long> values) {
  std::vector<BigInt> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("side combos express a_{n,i} through shifted constant terms") {
  // i = 0 is the identity
  CHECK(side_coeff_combo(kT, 0, 7) == std::vector<std::uint32_t>{1});

  // i = 1: a_{n,1} = (a_{n+1} - a_n) / 2, checked against the exact rows
  for (std::uint32_t p : {5u, 7u, 11u}) {
    auto v = side_coeff_combo(kT, 1, p);
    REQUIRE(v.size() == 2);
    auto a = a_prefix(kT, 64);
    for (std::uint64_t n = 0; n < 60; ++n) {
      BigInt row = coeff(pow(kT.to_poly(), n), 1);
      std::uint64_t combo =
          (std::uint64_t{v[0]} * mod_u32(a[n], p) +
           std::uint64_t{v[1]} * mod_u32(a[n + 1], p)) %
          p;
      CHECK(combo == mod_u32(row, p));
    }
  }

  // frozen spot value: a_{2,2} = 1 = (T_4 - 2 T_3 - T_2)/2 = (19-14-3)/2
  auto a = a_prefix(kT, 5);
  CHECK((a[4] - 2 * a[3] - a[2]) / 2 == coeff(pow(kT.to_poly(), 2), 2));

  CHECK_THROWS_AS(side_coeff_combo(Trinomial(2, 1, 3), 1, 5),
                  InvalidInputError);
  CHECK_THROWS_AS(side_coeff_combo(kT, 1, 2), InapplicableError);
  CHECK_THROWS_AS(side_coeff_combo(Trinomial(5, 1, 5), 1, 5),
                  InapplicableError);
}

TEST_CASE("general side combos verified against exact rows") {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {5u, 7u, 13u}) {
    for (int it = 0; it < 6; ++it) {
      std::int64_t out = 1 + static_cast<std::int64_t>(rng() % 3);
      std::int64_t mid = static_cast<std::int64_t>(rng() % 5) - 2;
      if (out % p == 0) continue;
      Trinomial P(out, mid, out);
      std::uint32_t i = 1 + rng() % 5;
      auto v = side_coeff_combo(P, i, p);
      REQUIRE(v.size() == i + 1);
      auto a = a_prefix(P, 40 + i);
      for (std::uint64_t n = 0; n < 36; ++n) {
        BigInt row = coeff(pow(P.to_poly(), n), i);
        std::uint64_t combo = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
          combo += std::uint64_t{v[j]} * mod_u32(a[n + j], p) % p;
        }
        CHECK(combo % p == mod_u32(row, p));
      }
    }
  }
}

TEST_CASE("motzkin reduction is the classical identity at every odd prime") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    ReductionResult res = reduce_Q(kT, kMotzkinQ, p);
    REQUIRE(res.is_combo());
    const ComboSpec& spec = res.combo();
    CHECK(spec.coeffs == coeff_vec({3, 2, -1}));
    CHECK(spec.divisor == 2);
    CHECK_FALSE(spec.valid_mod.has_value());
    CHECK(spec.span() == 2);
  }
}

TEST_CASE("trivial Q reduces to the sequence itself") {
  ReductionResult res = reduce_Q(kT, LaurentPoly::one(), 7);
  REQUIRE(res.is_combo());
  ComboSpec norm = res.combo().normalized();
  CHECK(norm.coeffs == coeff_vec({1}));
  CHECK(norm.divisor == 1);
}

TEST_CASE("riordan reduction") {
  ReductionResult res = reduce_Q(kT, LaurentPoly::parse("0:1,1:-1"), 5);
  REQUIRE(res.is_combo());
  const ComboSpec& spec = res.combo();
  CHECK(spec.coeffs == coeff_vec({3, -1}));
  CHECK(spec.divisor == 2);
  // R_4 = 3: (3 T_4 - T_5)/2 = (57 - 51)/2
  auto r = combo_prefix_exact(spec, 12);
  const long expected[] = {1, 0, 1, 1, 3, 6, 15, 36, 91, 232, 603, 1585};
  for (int i = 0; i < 12; ++i) CHECK(r[i] == expected[i]);
}

TEST_CASE("catalan from the symmetric trinomial") {
  ReductionResult res =
      reduce_Q(Trinomial(1, 2, 1), LaurentPoly::parse("0:1,1:-1"), 7);
  REQUIRE(res.is_combo());
  auto c = combo_prefix_exact(res.combo(), 10);
  const long expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (int i = 0; i < 10; ++i) CHECK(c[i] == expected[i]);
}

TEST_CASE("reduction soundness against the constant-term oracle") {
  std::mt19937_64 rng(43);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    for (int it = 0; it < 4; ++it) {
      std::int64_t out = 1 + static_cast<std::int64_t>(rng() % 4);
      std::int64_t mid = static_cast<std::int64_t>(rng() % 7) - 3;
      Trinomial P(out, mid, out);
      std::map<std::int64_t, BigInt> qt;
      int terms = 1 + rng() % 4;
      for (int j = 0; j < terms; ++j) {
        qt[static_cast<std::int64_t>(rng() % 9) - 4] +=
            static_cast<long>(rng() % 9) - 4;
      }
      LaurentPoly Q(qt);
      ReductionResult res = reduce_Q(P, Q, p);
      auto direct = b_prefix_mod(P, Q, p, 300);
      if (res.is_combo()) {
        for (std::uint64_t n = 0; n < 300; ++n) {
          CHECK(combo_eval_mod(res.combo(), p, to_digits(n, p)) == direct[n]);
        }
      } else {
        const PeriodicForm& form = res.periodic();
        std::uint64_t power = 1 % p;
        for (std::uint64_t n = 0; n < 300; ++n) {
          CHECK(power * form.ct_q % p == direct[n]);
          power = power * form.alpha0 % p;
        }
      }
    }
  }
}

TEST_CASE("degenerate branch when p divides the outer coefficient") {
  ReductionResult res = reduce_Q(Trinomial(5, 1, 5), kMotzkinQ, 5);
  REQUIRE_FALSE(res.is_combo());
  CHECK(res.periodic().alpha0 == 1);
  // b_n == alpha0^n ct[Q] mod p out to 500
  auto direct = b_prefix_mod(Trinomial(5, 1, 5), kMotzkinQ, 5, 500);
  std::uint32_t ctq = res.periodic().ct_q;
  std::uint64_t power = 1;
  for (std::uint64_t n = 0; n < 500; ++n) {
    CHECK(direct[n] == power * ctq % 5);
    power = power * res.periodic().alpha0 % 5;
  }
}

TEST_CASE("reduce rejects shapes outside the proposition") {
  CHECK_THROWS_AS(reduce_Q(Trinomial(2, 1, 3), kMotzkinQ, 5),
                  InvalidInputError);
  CHECK_THROWS_AS(reduce_Q(kT, kMotzkinQ, 2), InapplicableError);
}

TEST_CASE("the integral route does not depend on p") {
  ReductionResult r5 = reduce_Q(kT, kMotzkinQ, 5);
  ReductionResult r31 = reduce_Q(kT, kMotzkinQ, 31);
  CHECK(r5.combo().coeffs == r31.combo().coeffs);
  CHECK(r5.combo().divisor == r31.combo().divisor);

  // non-unit outer coefficient: residue combo pinned to its prime
  ReductionResult res = reduce_Q(Trinomial(2, 1, 2), kMotzkinQ, 7);
  REQUIRE(res.is_combo());
  CHECK(res.combo().valid_mod == 7);
  CHECK(res.combo().divisor == 1);
}

TEST_CASE("the sign-cancelling family member vanishes") {
  auto [P, Q] = family_spec(2, 1, 1);
  CHECK(Q == LaurentPoly::parse("-1:-1,1:1"));
  auto b = b_prefix(P, Q, 40);
  for (const BigInt& v : b) CHECK(v == 0);
  ReductionResult res = reduce_Q(P, Q, 5);
  REQUIRE(res.is_combo());
  for (const BigInt& c : res.combo().coeffs) CHECK(c == 0);
}

TEST_CASE("family constructions") {
  auto [mp, mq] = family_spec(1, 1, 1);
  CHECK(mp == kT);
  CHECK(mq == LaurentPoly::parse("-2:-1,0:1"));

  auto [cp, cq] = family_spec(1, 2, 1);
  CHECK(cp == Trinomial(1, 2, 1));
  auto catalan = b_prefix(cp, cq, 5);
  const long expected[] = {1, 1, 2, 5, 14};
  for (int i = 0; i < 5; ++i) CHECK(catalan[i] == expected[i]);

  CHECK_THROWS_AS(family_spec(0, 1, 1), InvalidInputError);
}

TEST_CASE("figure-one identity over the integers") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 6; ++it) {
    std::int64_t out = 1 + static_cast<std::int64_t>(rng() % 3);
    std::int64_t mid = static_cast<std::int64_t>(rng() % 5) - 2;
    Trinomial P(out, mid, out);
    auto a = a_prefix(P, 70);
    for (std::uint32_t i = 0; i <= 6; ++i) {
      LaurentPoly rows_i = pow(P.to_poly(), i);
      for (std::uint64_t n = 0; n <= 60; n += 7) {
        LaurentPoly rows_n = pow(P.to_poly(), n);
        BigInt rhs = coeff(rows_i, 0) * coeff(rows_n, 0);
        for (std::uint32_t j = 1; j <= i; ++j) {
          rhs += 2 * coeff(rows_i, j) * coeff(rows_n, j);
        }
        CHECK(a[n + i] == rhs);
      }
    }
  }
}

TEST_CASE("combo text form round trips") {
  ComboSpec spec{kT, coeff_vec({3, 2, -1}), 2, std::nullopt};
  CHECK(spec.str() == "P=1,1,1; c=3,2,-1; d=2");
  ComboSpec parsed = ComboSpec::parse("P=1,1,1; c=3,2,-1; d=2");
  CHECK(parsed.coeffs == spec.coeffs);
  CHECK(parsed.divisor == spec.divisor);
  CHECK(parsed.P == spec.P);

  ComboSpec pinned{Trinomial(2, 1, 2), coeff_vec({1, 4}), 1, 7};
  ComboSpec reparsed = ComboSpec::parse(pinned.str());
  CHECK(reparsed.valid_mod == 7);

  CHECK_THROWS_AS(ComboSpec::parse("c=1; d=1"), InvalidInputError);
  CHECK_THROWS_AS(ComboSpec::parse("P=1,1,1; c=x; d=1"), InvalidInputError);
}

TEST_CASE("normalization divides out the common factor for display only") {
  ComboSpec spec{kT, coeff_vec({2, 4}), 2, std::nullopt};
  ComboSpec norm = spec.normalized();
  CHECK(norm.coeffs == coeff_vec({1, 2}));
  CHECK(norm.divisor == 1);
  CHECK(spec.coeffs == coeff_vec({2, 4}));  // untouched
}

TEST_CASE("combo_eval_mod honors the divisor") {
  ComboSpec motzkin{kT, coeff_vec({3, 2, -1}), 2, std::nullopt};
  auto exact = combo_prefix_exact(motzkin, 64);
  const long expected[] = {1, 1, 2, 4, 9, 21, 51};
  for (int i = 0; i < 7; ++i) CHECK(exact[i] == expected[i]);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint64_t n = 0; n < 64; ++n) {
      CHECK(combo_eval_mod(motzkin, p, to_digits(n, p)) ==
            mod_u32(exact[n], p));
    }
  }
  CHECK_THROWS_AS(combo_eval_mod(motzkin, 2, to_digits(std::uint64_t{3}, 2)),
                  InapplicableError);
}
