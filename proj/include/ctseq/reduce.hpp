#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ctseq/digits.hpp"
#include "ctseq/laurent.hpp"

namespace ctseq {

/// Normal form of an analyzed sequence: b_n = (1/divisor) * sum of
/// coeffs[i] * a_{n+i} over the fixed trinomial P.
///
/// When the trinomial's outer coefficient is 1 the reduction produces
/// integer coefficients with divisor 2, valid for every odd prime; otherwise
/// the coefficients are residues valid only for the prime recorded in
/// `valid_mod`.
struct ComboSpec {
  Trinomial P;
  std::vector<BigInt> coeffs;  // c_0 .. c_h; c_h != 0 unless h == 0
  BigInt divisor = 1;
  std::optional<std::uint32_t> valid_mod;

  std::size_t span() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  /// Display form: common factor of coefficients and divisor removed.
  /// Never applied before soundness checks.
  ComboSpec normalized() const;

  /// "P=a-1,a0,a1; c=c0,...,ch; d=divisor" (plus "; mod=p" when the
  /// coefficients are residues for one prime only).
  std::string str() const;
  static ComboSpec parse(std::string_view text);
};

/// Degenerate branch of the reduction: when p divides the outer coefficient,
/// b_n is congruent to alpha0^n * ct[Q], a periodic (hence uniformly
/// recurrent) sequence.
struct PeriodicForm {
  std::uint32_t p = 0;
  std::uint32_t alpha0 = 0;  // alpha_0 mod p
  std::uint32_t ct_q = 0;    // ct[Q] mod p
};

struct ReductionResult {
  std::variant<ComboSpec, PeriodicForm> value;

  bool is_combo() const { return std::holds_alternative<ComboSpec>(value); }
  const ComboSpec& combo() const { return std::get<ComboSpec>(value); }
  const PeriodicForm& periodic() const { return std::get<PeriodicForm>(value); }
};

/// Residue vector (v_0, ..., v_i) with a_{n,i} == sum v_k * a_{n+k} mod p
/// for all n, where a_{n,i} is the coefficient of x^i in P^n. Requires P
/// symmetric and p odd with p not dividing the outer coefficient.
std::vector<std::uint32_t> side_coeff_combo(const Trinomial& P,
                                            std::uint32_t i, std::uint32_t p);

/// Rewrites b_n = ct[P^n Q] as a ComboSpec (or the periodic branch when p
/// divides the outer coefficient). P must be symmetric; p must be odd.
ReductionResult reduce_Q(const Trinomial& P, const LaurentPoly& Q,
                         std::uint32_t p);

/// The (d, m1, m2) family: P = m2 x^-1 + m1 + m2 x, Q = x^(d-1) - x^(d-3).
/// (1,1,1) gives the Motzkin numbers, (1,2,1) the Catalan numbers.
std::pair<Trinomial, LaurentPoly> family_spec(std::uint64_t d,
                                              std::uint64_t m1,
                                              std::uint64_t m2);

/// (1/d) * sum c_i * a_mod(n+i), reduced mod p. Requires gcd(divisor, p) = 1
/// and, for residue combos, p == valid_mod.
std::uint32_t combo_eval_mod(const ComboSpec& spec, std::uint32_t p,
                             const BasePDigits& n);

/// Exact b_0 .. b_{count-1} from the combo over the integers (the divisor
/// must divide exactly; a remainder is an internal error).
std::vector<BigInt> combo_prefix_exact(const ComboSpec& spec,
                                       std::size_t count);

/// Modular inverse for small residues; throws InapplicableError when the
/// value shares a factor with p.
std::uint32_t inv_mod(std::uint32_t value, std::uint32_t p);

}  // namespace ctseq
