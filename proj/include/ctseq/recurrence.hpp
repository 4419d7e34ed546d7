#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ctseq/digits.hpp"
#include "ctseq/reduce.hpp"
#include "ctseq/trinomial.hpp"

namespace ctseq {

enum class Verdict { UniformlyRecurrent, ZeroDensityOne };

/// Verdict for a combo mod p, decided entirely by the digit table of its
/// trinomial: a zero residue among a_0 .. a_{p-1} forces density-1 zeros,
/// no zero residue forces uniform recurrence.
struct Classification {
  std::uint32_t p = 0;
  Verdict verdict = Verdict::UniformlyRecurrent;
  std::optional<std::uint32_t> zero_digit;
  DigitTable table;
};

Classification classify(const ComboSpec& spec, std::uint32_t p);

/// A certified run of zeros: every index in [start, start + length) has
/// b_n == 0 mod p. The start numeral is the zero digit followed by k zeros.
struct ZeroRun {
  BasePDigits start;
  BigInt length;  // p^(k-1)
  std::uint32_t zero_digit = 0;
  std::uint32_t k = 0;
};

/// Requires the density-one verdict and p^(k-1) > span. The run is
/// guaranteed by construction; tests re-verify it index by index.
ZeroRun zero_run(const ComboSpec& spec, std::uint32_t p, std::uint32_t k);

/// Exact lower bound for the fraction of zeros among the first p^k terms:
/// 1 - (p/(p-1))^beta * ((p-1)/p)^k, with beta the digit count of the span
/// (zero when the span is zero). Requires k > beta.
BigRat density_lower_bound(std::uint32_t p, std::uint64_t h, std::uint32_t k);

/// Exact measured fraction of n in [0, p^k) with b_n == 0 mod p, evaluated
/// through the digit-product fast path. Budget-capped at p^k <= 10^8.
BigRat density_measure(const ComboSpec& spec, std::uint32_t p,
                       std::uint32_t k);

/// Which rewrite produced a single-term witness.
enum class WitnessCase {
  DigitSwap = 1,        // two digits out of order were exchanged
  RunIncrement = 2,     // p-1 equal digits d replaced by p-1 copies of d+1
  FermatRunRewrite = 3  // the long (p-1)-run rewrite
};

struct SingleWitness {
  BasePDigits n_prime;
  WitnessCase case_used;
};

/// Produces n' > n with a_mod(P, n') == a_mod(P, n), by digit surgery on
/// the low window of the numeral. Requires a zero-free digit table. The
/// window is the lesser of the numeral length and p^(p-1)+1; short numerals
/// are padded on demand rather than eagerly to the full window.
SingleWitness witness_single(const Trinomial& P, std::uint32_t p,
                             const BasePDigits& n);

enum class WitnessStrategy {
  PrefixIncrement,  // add a single-term witness to the shared prefix
  FermatRewrite,    // rewrite the (p-1)-run below the straddled multiple
  Mod2Rule          // the Motzkin mod-2 power-of-two shift
};

const char* to_string(WitnessStrategy s);
const char* to_string(WitnessCase c);
const char* to_string(Verdict v);

/// A certified word recurrence: the word of b mod p of the given length at
/// `start` reappears at start + shift. Internals record the proof-shape
/// parameters; the transcript hash binds the verified word.
struct WordWitness {
  BasePDigits start;
  std::uint64_t length;
  BasePDigits shift;
  BasePDigits shifted_start;
  WitnessStrategy strategy;
  std::uint64_t beta;
  std::uint64_t s;
  std::uint64_t alpha;
  std::uint64_t k;
  std::uint64_t q;
  std::uint64_t r;
  std::uint64_t transcript_hash;
};

/// Word of b mod p at [start, start + length).
std::vector<std::uint32_t> word_mod(const ComboSpec& spec, std::uint32_t p,
                                    const BasePDigits& start,
                                    std::uint64_t length);

/// Constructs and verifies a word-recurrence shift for a uniformly
/// recurrent combo. Strategy selection follows the proof shape: increment
/// the shared prefix when the straddled power of p is small or the word is
/// long relative to it; otherwise rewrite the (p-1)-run with the Fermat
/// shift. Verification failure is an internal error, never a result.
WordWitness witness_word(const ComboSpec& spec, std::uint32_t p,
                         const BasePDigits& start, std::uint64_t length);

/// Brute-force least shift with an exact word match, or nullopt within the
/// horizon. Independent check for witness_word and the empirical-shift
/// report.
std::optional<std::uint64_t> min_recurrence_oracle(const ComboSpec& spec,
                                                   std::uint32_t p,
                                                   std::uint64_t start,
                                                   std::uint64_t length,
                                                   std::uint64_t horizon);

/// Motzkin parity in O(log n): counts signed-power-of-two representations
/// arising from the Frobenius splitting of the trinomial power mod 2.
std::uint32_t motzkin_parity(std::uint64_t n);

/// Word-recurrence shift for the Motzkin numbers mod 2. Tries the two
/// power-of-two candidates 2^(floor(log2 l)+1) and 2^(floor(log2 l)+2);
/// words that defeat both (they exist; see the project notes) fall back to
/// the next power of two, which always verifies.
WordWitness motzkin_mod2_witness(std::uint64_t start, std::uint64_t length);

/// FNV-1a hash over a verified word transcript.
std::uint64_t transcript_hash(const BasePDigits& start,
                              const BasePDigits& shift,
                              const std::vector<std::uint32_t>& word);

}  // namespace ctseq
