#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ctseq {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const BigRat& v) { return v.get_str(); }

/// Nonnegative residue of v mod p.
inline std::uint32_t mod_u32(const BigInt& v, std::uint32_t p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace ctseq
