#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctseq/bigint.hpp"
#include "ctseq/errors.hpp"

namespace ctseq {

/// Deterministic trial-division primality check. Moduli are small in this
/// library; the indices are the big objects.
bool is_prime(std::uint32_t p);

/// An arbitrary-length base-p numeral, stored most-significant digit first.
///
/// Every digit-level algorithm in the library works on these strings, never
/// on machine integers, so indices with thousands of digits are first-class.
/// An empty digit vector is a valid representation of zero (it arises as the
/// head of a decomposition); `to_digits` itself never produces it.
///
/// Values are immutable after construction and all operations on them are
/// pure functions, so unrestricted concurrent use is safe.
class BasePDigits {
public:
  /// Validates that p is prime and every digit is < p.
  BasePDigits(std::uint32_t p, std::vector<std::uint32_t> digits);

  static BasePDigits zero(std::uint32_t p) { return BasePDigits(p, {0}); }

  /// Parses the textual form: juxtaposed digits when p <= 10 ("1232"),
  /// '.'-separated decimal digits when p > 10 ("12.0.7").
  static BasePDigits parse(std::uint32_t p, std::string_view text);

  std::uint32_t base() const { return p_; }
  const std::vector<std::uint32_t>& digits() const { return digits_; }
  std::size_t size() const { return digits_.size(); }
  bool is_zero() const;

  /// Digit at the given power of p; zero beyond the stored length.
  std::uint32_t digit_at(std::size_t position) const;

  /// Copy left-padded with zeros to at least `length` digits.
  BasePDigits left_padded(std::size_t length) const;

  /// Copy without leading zeros ("0" when the value is zero).
  BasePDigits stripped() const;

  /// Copy with the lowest `count` digits replaced by zeros.
  BasePDigits truncated_low(std::size_t count) const;

  /// Copy without the lowest `count` digits (may be empty).
  BasePDigits dropped_low(std::size_t count) const;

  /// Textual form; the empty numeral prints as "".
  std::string str() const;

  /// Value equality: equal base and equal digits after stripping leading
  /// zeros. Representation (leading zeros) is intentionally not destroyed
  /// anywhere else; witness constructions rely on it.
  bool operator==(const BasePDigits& other) const;
  bool operator!=(const BasePDigits& other) const { return !(*this == other); }

private:
  std::uint32_t p_;
  std::vector<std::uint32_t> digits_;
};

/// -1, 0, +1 as value(a) compares to value(b). Bases must match.
int compare_value(const BasePDigits& a, const BasePDigits& b);

BasePDigits to_digits(std::uint64_t n, std::uint32_t p);
BasePDigits to_digits(const BigInt& n, std::uint32_t p);

BigInt from_digits(const BasePDigits& w);

/// Digit-string addition with carries. Bases must match.
BasePDigits add(const BasePDigits& w, const BasePDigits& v);

/// w = head . (run_bound) . (p-1)^run_length . tail with |tail| fixed by the
/// caller, run_length maximal, and run_bound != p-1. When there is no
/// (p-1)-run directly above the tail, run_length = 0 and run_bound is simply
/// the lowest digit above the tail.
struct TailDecomposition {
  BasePDigits head;
  std::uint32_t run_bound;  // the digit immediately above the (p-1)-run
  std::uint64_t run_length;
  BasePDigits tail;
};

/// Splits off the maximal low-end run of (p-1) digits above a fixed-length
/// suffix. Throws InapplicableError when every digit above the suffix is
/// p-1 (the caller must left-pad with a zero first).
TailDecomposition decompose_tail(const BasePDigits& w, std::size_t suffix_len);

}  // namespace ctseq
