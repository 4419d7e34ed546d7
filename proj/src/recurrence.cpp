#include "ctseq/recurrence.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace ctseq {

namespace {

// Lemma window p^(p-1)+1, saturated well above any realistic numeral length.
std::uint64_t lemma_window(std::uint32_t p) {
  std::uint64_t w = 1;
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (w > (std::uint64_t{1} << 40)) return std::uint64_t{1} << 40;
    w *= p;
  }
  return w + 1;
}

// positions are least-significant-first throughout this file
using Digits = std::vector<std::uint32_t>;

Digits to_lsf(const BasePDigits& n) {
  Digits d(n.digits().rbegin(), n.digits().rend());
  return d;
}

BasePDigits from_lsf(std::uint32_t p, const Digits& d) {
  return BasePDigits(p, std::vector<std::uint32_t>(d.rbegin(), d.rend()));
}

// case 1: the most significant in-window digit strictly below some lower
// digit; swap with the closest such lower digit
bool try_digit_swap(Digits& d, std::size_t scan_len) {
  if (scan_len < 2) return false;
  std::vector<std::uint32_t> prefix_max(scan_len);
  prefix_max[0] = d[0];
  for (std::size_t i = 1; i < scan_len; ++i) {
    prefix_max[i] = std::max(prefix_max[i - 1], d[i]);
  }
  for (std::size_t i = scan_len; i-- > 1;) {
    if (d[i] < prefix_max[i - 1]) {
      for (std::size_t j = i; j-- > 0;) {
        if (d[j] > d[i]) {
          std::swap(d[i], d[j]);
          return true;
        }
      }
    }
  }
  return false;
}

// case 2: most significant in-window run of >= p-1 equal digits d != p-1;
// bump p-1 of them to d+1
bool try_run_increment(Digits& d, std::size_t scan_len, std::uint32_t p) {
  std::size_t pos = scan_len;
  while (pos > 0) {
    std::size_t hi = pos - 1;
    std::uint32_t v = d[hi];
    std::size_t lo = hi;
    while (lo > 0 && d[lo - 1] == v) --lo;
    std::size_t run = hi - lo + 1;
    if (v != p - 1 && run >= static_cast<std::size_t>(p - 1)) {
      for (std::size_t t = 0; t < static_cast<std::size_t>(p - 1); ++t) {
        d[hi - t] = v + 1;
      }
      return true;
    }
    pos = lo;
  }
  return false;
}

// case 3: rewrite the maximal (p-1)-run above the (p-1)-free suffix
bool try_fermat_rewrite(Digits& d, std::uint32_t p) {
  std::size_t gamma = 0;
  while (gamma < d.size() && d[gamma] != p - 1) ++gamma;
  if (gamma == d.size()) return false;  // no p-1 digit at all
  std::size_t run_end = gamma;
  while (run_end < d.size() && d[run_end] == p - 1) ++run_end;
  std::uint64_t k = run_end - gamma;
  if (k < p - 1) return false;
  if (run_end == d.size()) d.push_back(0);  // virtual pad supplies the bound
  std::uint32_t m = d[run_end];
  std::uint64_t q = k / (p - 1);
  std::uint64_t r = k % (p - 1);

  // replace [gamma, run_end] (k+1 digits), low to high:
  // (p-1)^r (m+1)^(p-2) (m) 0^((q-1)(p-1)) (m+1)
  std::size_t pos = gamma;
  for (std::uint64_t t = 0; t < r; ++t) d[pos++] = p - 1;
  for (std::uint32_t t = 0; t + 2 < p; ++t) d[pos++] = m + 1;
  d[pos++] = m;
  for (std::uint64_t t = 0; t < (q - 1) * (p - 1); ++t) d[pos++] = 0;
  d[pos++] = m + 1;
  return pos == run_end + 1;
}

std::uint32_t find_alpha(std::uint32_t p, std::uint64_t length,
                         std::uint64_t beta) {
  BigInt pbeta = big_pow(p, beta);
  for (std::uint32_t alpha = 1;; ++alpha) {
    BigInt bound = big_pow(p, alpha * (p - 1) + beta) - pbeta;
    if (BigInt(length) < bound) return alpha;
  }
}

}  // namespace

const char* to_string(WitnessStrategy s) {
  switch (s) {
    case WitnessStrategy::PrefixIncrement: return "PrefixIncrement";
    case WitnessStrategy::FermatRewrite: return "FermatRewrite";
    case WitnessStrategy::Mod2Rule: return "Mod2Rule";
  }
  return "?";
}

const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::DigitSwap: return "DigitSwap";
    case WitnessCase::RunIncrement: return "RunIncrement";
    case WitnessCase::FermatRunRewrite: return "FermatRunRewrite";
  }
  return "?";
}

const char* to_string(Verdict v) {
  return v == Verdict::UniformlyRecurrent ? "UniformlyRecurrent"
                                          : "ZeroDensityOne";
}

Classification classify(const ComboSpec& spec, std::uint32_t p) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  if (spec.valid_mod && *spec.valid_mod != p) {
    throw InvalidInputError(
        "combo coefficients are residues for a different prime");
  }
  if (mod_u32(spec.divisor, p) == 0) {
    throw InapplicableError("invalid combo: divisor not invertible mod " +
                            std::to_string(p));
  }
  Classification cls;
  cls.p = p;
  cls.table = digit_table(spec.P, p);
  cls.zero_digit = cls.table.zero_digit;
  cls.verdict = cls.zero_digit ? Verdict::ZeroDensityOne
                               : Verdict::UniformlyRecurrent;
  return cls;
}

ZeroRun zero_run(const ComboSpec& spec, std::uint32_t p, std::uint32_t k) {
  if (k < 1) throw InvalidInputError("zero-run k must be positive");
  Classification cls = classify(spec, p);
  if (cls.verdict != Verdict::ZeroDensityOne) {
    throw InapplicableError(
        "zero runs need the density-one verdict; this combo is uniformly "
        "recurrent");
  }
  BigInt run_len = big_pow(p, k - 1);
  if (run_len <= static_cast<unsigned long>(spec.span())) {
    throw InapplicableError("k too small: p^(k-1) must exceed the span " +
                            std::to_string(spec.span()));
  }
  std::vector<std::uint32_t> digits(k + 1, 0);
  digits[0] = *cls.zero_digit;
  return ZeroRun{BasePDigits(p, std::move(digits)), std::move(run_len),
                 *cls.zero_digit, k};
}

BigRat density_lower_bound(std::uint32_t p, std::uint64_t h,
                           std::uint32_t k) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  std::uint64_t beta = h == 0 ? 0 : to_digits(h, p).size();
  if (k <= beta) {
    throw InapplicableError("density bound needs k > beta = " +
                            std::to_string(beta));
  }
  BigRat frac(big_pow(p, beta) * big_pow(p - 1, k - beta), big_pow(p, k));
  frac.canonicalize();
  return BigRat(1) - frac;
}

BigRat density_measure(const ComboSpec& spec, std::uint32_t p,
                       std::uint32_t k) {
  BigInt total = big_pow(p, k);
  if (total > 100000000) {
    throw BudgetError("density scan capped at p^k <= 10^8");
  }
  std::uint64_t n_max = total.get_ui();
  std::uint64_t zeros = 0;
  for (std::uint64_t n = 0; n < n_max; ++n) {
    if (combo_eval_mod(spec, p, to_digits(n, p)) == 0) ++zeros;
  }
  BigRat out(BigInt(zeros), total);
  out.canonicalize();
  return out;
}

SingleWitness witness_single(const Trinomial& P, std::uint32_t p,
                             const BasePDigits& n) {
  const DigitTable& table = digit_table(P, p);
  if (table.zero_digit) {
    throw InapplicableError(
        "hypothesis violated: p divides a_" +
        std::to_string(*table.zero_digit) +
        "; single-term witnesses need a zero-free digit table");
  }
  std::uint64_t window = lemma_window(p);
  Digits work = to_lsf(n);
  std::size_t actual = work.size();
  if (work.size() < static_cast<std::size_t>(p) + 2) {
    work.resize(p + 2, 0);
  }

  std::size_t scan_len = static_cast<std::size_t>(
      std::min<std::uint64_t>(window, actual));
  for (int stage = 0; stage < 4; ++stage) {
    std::optional<WitnessCase> used;
    if (try_digit_swap(work, scan_len)) {
      used = WitnessCase::DigitSwap;
    } else if (try_run_increment(work, scan_len, p)) {
      used = WitnessCase::RunIncrement;
    } else if (try_fermat_rewrite(work, p)) {
      used = WitnessCase::FermatRunRewrite;
    }
    if (used) {
      BasePDigits n_prime = from_lsf(p, work);
      if (compare_value(n_prime, n) <= 0 ||
          a_mod(table, n_prime) != a_mod(table, n)) {
        throw InternalError("single-term witness failed self-verification");
      }
      return SingleWitness{std::move(n_prime), *used};
    }
    // widen: double the padded length (pad zeros become available to the
    // in-window scans) and retry
    std::size_t next = std::max<std::size_t>(2 * work.size(), p + 2);
    work.resize(next, 0);
    scan_len = static_cast<std::size_t>(
        std::min<std::uint64_t>(window, work.size()));
  }
  throw InternalError("single-term witness construction did not terminate");
}

std::vector<std::uint32_t> word_mod(const ComboSpec& spec, std::uint32_t p,
                                    const BasePDigits& start,
                                    std::uint64_t length) {
  std::vector<std::uint32_t> word;
  word.reserve(length);
  for (std::uint64_t t = 0; t < length; ++t) {
    word.push_back(combo_eval_mod(spec, p, add(start, to_digits(t, p))));
  }
  return word;
}

std::uint64_t transcript_hash(const BasePDigits& start,
                              const BasePDigits& shift,
                              const std::vector<std::uint32_t>& word) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view bytes) {
    for (char c : bytes) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  };
  mix(start.str());
  mix("|");
  mix(shift.str());
  mix("|");
  for (std::uint32_t v : word) {
    mix(std::to_string(v));
    mix(",");
  }
  return h;
}

WordWitness witness_word(const ComboSpec& spec, std::uint32_t p,
                         const BasePDigits& start, std::uint64_t length) {
  if (length == 0) throw InvalidInputError("word length must be positive");
  Classification cls = classify(spec, p);
  if (cls.verdict != Verdict::UniformlyRecurrent) {
    throw InapplicableError(
        "not uniformly recurrent mod " + std::to_string(p) +
        "; use the zero-run construction instead");
  }

  WitnessStrategy strategy = WitnessStrategy::PrefixIncrement;
  std::uint64_t beta = 0, s = 0, alpha = 0, k = 0, q = 0, r = 0;
  std::optional<BasePDigits> shift;
  std::optional<BasePDigits> shifted_start;

  bool degenerate = std::all_of(
      spec.coeffs.begin(), spec.coeffs.end(),
      [p](const BigInt& c) { return mod_u32(c, p) == 0; });
  std::uint64_t h = spec.span();
  if (degenerate) {
    // identically zero sequence: every shift recurs
    shift = to_digits(std::uint64_t{1}, p);
    shifted_start = add(start, *shift);
  } else {
    BasePDigits b_end = add(start, to_digits(h + length - 1, p));
    for (std::size_t sigma = 1; sigma <= b_end.size(); ++sigma) {
      if (compare_value(b_end.truncated_low(sigma), start) > 0) {
        s = sigma;
      } else {
        break;
      }
    }
    beta = h == 0 ? 0 : to_digits(h, p).size();
    if (s >= beta + p) {
      k = s - beta;
      q = k / (p - 1);
      r = k % (p - 1);
    }
    alpha = find_alpha(p, length, beta);

    if (s < beta + p || alpha >= q) {
      // increment the prefix shared (at cutoff s+1) by every index involved
      strategy = WitnessStrategy::PrefixIncrement;
      std::size_t cutoff = static_cast<std::size_t>(s) + 1;
      BasePDigits u = start.size() > cutoff ? start.dropped_low(cutoff)
                                            : BasePDigits::zero(p);
      SingleWitness sw = witness_single(spec.P, p, u);
      std::vector<std::uint32_t> shifted = sw.n_prime.digits();
      for (std::size_t pos = cutoff; pos-- > 0;) {
        shifted.push_back(start.digit_at(pos));
      }
      shifted_start = BasePDigits(p, std::move(shifted));
      BigInt delta =
          (from_digits(sw.n_prime) - from_digits(u)) * big_pow(p, cutoff);
      shift = to_digits(delta, p);
    } else {
      // rewrite below the unique straddled multiple of p^s
      strategy = WitnessStrategy::FermatRewrite;
      BasePDigits multiple = b_end.truncated_low(static_cast<std::size_t>(s));
      std::uint32_t bound_digit = multiple.digit_at(s);
      std::uint64_t t0 = alpha * (p - 1) + r + beta;
      std::vector<std::uint32_t> shift_digits(p - 1 + t0, 0);
      for (std::uint32_t t = 0; t + 1 < p; ++t) shift_digits[t] = bound_digit;
      shift = BasePDigits(p, std::move(shift_digits));
      shifted_start = add(start, *shift);
    }
  }

  std::vector<std::uint32_t> expected = word_mod(spec, p, start, length);
  std::vector<std::uint32_t> shifted_word =
      word_mod(spec, p, *shifted_start, length);
  if (expected != shifted_word) {
    throw InternalError("word witness failed self-verification");
  }
  std::uint64_t hash = transcript_hash(start, *shift, expected);
  return WordWitness{start,    length, *shift, *shifted_start, strategy,
                     beta,     s,      alpha,  k,              q,
                     r,        hash};
}

std::optional<std::uint64_t> min_recurrence_oracle(const ComboSpec& spec,
                                                   std::uint32_t p,
                                                   std::uint64_t start,
                                                   std::uint64_t length,
                                                   std::uint64_t horizon) {
  if (length == 0) throw InvalidInputError("word length must be positive");
  if (horizon + length > 10000000) {
    throw BudgetError("min-recurrence scan capped at 10^7 values");
  }
  std::vector<std::uint32_t> vals;
  vals.reserve(horizon + length);
  for (std::uint64_t j = 0; j < horizon + length; ++j) {
    vals.push_back(combo_eval_mod(spec, p, to_digits(start + j, p)));
  }
  for (std::uint64_t delta = 1; delta <= horizon; ++delta) {
    if (delta + length > vals.size()) break;
    if (std::equal(vals.begin(), vals.begin() + length,
                   vals.begin() + delta)) {
      return delta;
    }
  }
  return std::nullopt;
}

std::uint32_t motzkin_parity(std::uint64_t n) {
  // Mod 2 the trinomial power splits over the bits of n, so the coefficient
  // of x^T is the number of ways to write T as a sum of +-2^j over set bits
  // j, counted mod 2. The Motzkin parity combines targets 0 and 2.
  std::uint32_t parity = 0;
  int levels = std::bit_width(n) + 3;
  for (std::uint64_t target : {std::uint64_t{0}, std::uint64_t{2}}) {
    // f[c+1] = count (mod 2) of partial choices with carry c in {-1, 0, 1}
    std::uint8_t f[3] = {0, 1, 0};
    for (int j = 0; j < levels; ++j) {
      std::uint8_t g[3] = {0, 0, 0};
      int tbit = j < 3 ? static_cast<int>((target >> j) & 1) : 0;
      bool free_bit = ((n >> j) & 1) != 0;
      for (int c = -1; c <= 1; ++c) {
        if (!f[c + 1]) continue;
        for (int eps = free_bit ? -1 : 0; eps <= (free_bit ? 1 : 0); ++eps) {
          int v = c + eps - tbit;
          if (v % 2 != 0) continue;
          g[v / 2 + 1] ^= f[c + 1];
        }
      }
      f[0] = g[0];
      f[1] = g[1];
      f[2] = g[2];
    }
    parity ^= f[1];
  }
  return parity;
}

WordWitness motzkin_mod2_witness(std::uint64_t start, std::uint64_t length) {
  if (length == 0) throw InvalidInputError("word length must be positive");
  std::uint64_t lead = std::bit_width(length);  // floor(log2 length) + 1
  std::vector<std::uint32_t> word;
  word.reserve(length);
  for (std::uint64_t t = 0; t < length; ++t) {
    word.push_back(motzkin_parity(start + t));
  }
  for (std::uint64_t e = lead; e <= lead + 2; ++e) {
    std::uint64_t delta = std::uint64_t{1} << e;
    bool ok = true;
    for (std::uint64_t t = 0; t < length && ok; ++t) {
      ok = motzkin_parity(start + delta + t) == word[t];
    }
    if (!ok) continue;
    BasePDigits start_digits = to_digits(start, 2);
    BasePDigits shift_digits = to_digits(delta, 2);
    std::uint64_t hash = transcript_hash(start_digits, shift_digits, word);
    return WordWitness{std::move(start_digits),
                       length,
                       std::move(shift_digits),
                       to_digits(start + delta, 2),
                       WitnessStrategy::Mod2Rule,
                       0,
                       0,
                       0,
                       0,
                       0,
                       0,
                       hash};
  }
  throw InternalError("mod-2 witness: no power-of-two shift verified");
}

}  // namespace ctseq
