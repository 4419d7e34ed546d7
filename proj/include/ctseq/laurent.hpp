#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ctseq/bigint.hpp"
#include "ctseq/errors.hpp"

namespace ctseq {

/// Sparse Laurent polynomial over the integers: exponent -> coefficient,
/// negative exponents allowed, no zero coefficients stored. Coefficients are
/// arbitrary precision everywhere on the exact path; constant-term values
/// grow exponentially and must not overflow silently.
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<std::int64_t, BigInt> terms);

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(0, 1); }
  static LaurentPoly monomial(std::int64_t exponent, BigInt coefficient);

  /// Parses the textual form "exp:coeff,exp:coeff,...", e.g. "0:1,2:-1".
  static LaurentPoly parse(std::string_view text);

  const std::map<std::int64_t, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of x^exponent (zero if absent).
  const BigInt& at(std::int64_t exponent) const;

  /// Largest |exponent| in the support; 0 for the zero polynomial.
  std::int64_t radius() const;

  std::string str() const;

  bool operator==(const LaurentPoly& other) const {
    return terms_ == other.terms_;
  }

private:
  std::map<std::int64_t, BigInt> terms_;
};

/// Exact convolution product.
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);
/// Convolution with coefficients reduced into [0, p).
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g, std::uint32_t p);

/// Binary exponentiation; pow(f, 0) = 1.
LaurentPoly pow(const LaurentPoly& f, std::uint64_t n);
/// Binary exponentiation with intermediate reduction mod p.
LaurentPoly pow(const LaurentPoly& f, std::uint64_t n, std::uint32_t p);

/// Constant term (coefficient of x^0).
BigInt ct(const LaurentPoly& f);

/// Coefficient of x^(-i) in f, which equals ct[f * x^i].
BigInt coeff(const LaurentPoly& f, std::int64_t i);

/// Every coefficient reduced into [0, p); zero coefficients dropped.
LaurentPoly reduce_mod(const LaurentPoly& f, std::uint32_t p);

/// x -> x^k by exponent scaling (the only substitution used here).
LaurentPoly substitute_power(const LaurentPoly& f, std::uint64_t k);

/// A Laurent trinomial a_m1 * x^-1 + a_0 + a_1 * x. Not all three
/// coefficients may be zero. Symmetric means am1 == a1; the linear-
/// combination reduction is only available for symmetric trinomials.
struct Trinomial {
  std::int64_t am1 = 0;
  std::int64_t a0 = 0;
  std::int64_t a1 = 0;

  Trinomial(std::int64_t am1_, std::int64_t a0_, std::int64_t a1_);

  /// Parses the shorthand "a-1,a0,a1", e.g. "1,1,1".
  static Trinomial parse(std::string_view text);

  bool symmetric() const { return am1 == a1; }
  LaurentPoly to_poly() const;
  std::string str() const;

  bool operator==(const Trinomial& other) const = default;
};

}  // namespace ctseq
