#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctseq/digits.hpp"
#include "ctseq/laurent.hpp"

namespace ctseq {

/// The residues a_0 .. a_{p-1} mod p of a trinomial's constant-term sequence,
/// plus the least digit whose residue is zero (if any). Everything the
/// digit-product congruence needs, and the whole classification input.
struct DigitTable {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> values;
  std::optional<std::uint32_t> zero_digit;
};

/// Exact a_n = ct[P(x)^n] by row-by-row trinomial convolution. Quadratic in
/// n with exact coefficients; meant for desk-scale n (<= ~10^4). Serves as
/// an independent check on the generic polynomial power path.
BigInt a_oracle(const Trinomial& P, std::uint64_t n);

/// Exact a_0 .. a_{count-1} in one streaming pass.
std::vector<BigInt> a_prefix(const Trinomial& P, std::size_t count);

/// Exact b_n = ct[P(x)^n Q(x)] for n = 0 .. count-1 in one streaming pass.
std::vector<BigInt> b_prefix(const Trinomial& P, const LaurentPoly& Q,
                             std::size_t count);

/// b_n mod p for n = 0 .. count-1 by residue row convolution. Exact values
/// reduced as they are formed; an independent route from the digit-product
/// fast path.
std::vector<std::uint32_t> b_prefix_mod(const Trinomial& P,
                                        const LaurentPoly& Q, std::uint32_t p,
                                        std::size_t count);

/// Digit table for (P, p), computed once per pair via the exact oracle and
/// cached by value. The cache is insert-only and mutex-guarded, so
/// concurrent lookups are safe; returned references stay valid for the
/// process lifetime.
const DigitTable& digit_table(const Trinomial& P, std::uint32_t p);

/// Digit-product evaluation of a_n mod p: the product over the numeral's
/// digits of the table residues. Accepts numerals of any length; cost is
/// linear in the digit count, not in n.
std::uint32_t a_mod(const DigitTable& table, const BasePDigits& n);
std::uint32_t a_mod(const Trinomial& P, const BasePDigits& n);

/// For P with zero middle coefficient, the trinomial whose sequence gives
/// the even-index subsequence: ct[P^(2n)] = ct[fold(P)^n]. Throws
/// InapplicableError when the middle coefficient is nonzero.
Trinomial even_fold(const Trinomial& P);

}  // namespace ctseq
