#include "ctseq/laurent.hpp"

#include <array>
#include <charconv>
#include <cstdlib>

#include "ctseq/digits.hpp"

namespace ctseq {

namespace {

const BigInt kZero = 0;

std::int64_t parse_i64(std::string_view token, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidInputError(std::string("malformed ") + what + ": \"" +
                            std::string(token) + "\"");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

LaurentPoly::LaurentPoly(std::map<std::int64_t, BigInt> terms)
    : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (sgn(it->second) == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

LaurentPoly LaurentPoly::monomial(std::int64_t exponent, BigInt coefficient) {
  std::map<std::int64_t, BigInt> t;
  if (sgn(coefficient) != 0) t.emplace(exponent, std::move(coefficient));
  return LaurentPoly(std::move(t));
}

LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::map<std::int64_t, BigInt> terms;
  std::size_t pos = 0;
  text = trim(text);
  if (text.empty()) return LaurentPoly();
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view pair = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    pair = trim(pair);
    std::size_t colon = pair.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidInputError("malformed polynomial term \"" +
                              std::string(pair) + "\" (want exp:coeff)");
    }
    std::int64_t e = parse_i64(trim(pair.substr(0, colon)), "exponent");
    std::string coeff_text(trim(pair.substr(colon + 1)));
    if (coeff_text.empty()) {
      throw InvalidInputError("malformed polynomial coefficient");
    }
    BigInt c;
    if (mpz_set_str(c.get_mpz_t(), coeff_text.c_str(), 10) != 0) {
      throw InvalidInputError("malformed polynomial coefficient \"" +
                              coeff_text + "\"");
    }
    terms[e] += c;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return LaurentPoly(std::move(terms));
}

const BigInt& LaurentPoly::at(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? kZero : it->second;
}

std::int64_t LaurentPoly::radius() const {
  if (terms_.empty()) return 0;
  std::int64_t lo = terms_.begin()->first;
  std::int64_t hi = terms_.rbegin()->first;
  return std::max(std::llabs(lo), std::llabs(hi));
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0:0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(e);
    out.push_back(':');
    out += c.get_str();
  }
  return out;
}

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) {
  std::map<std::int64_t, BigInt> out;
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      out[ef + eg] += cf * cg;
    }
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g, std::uint32_t p) {
  return reduce_mod(mul(f, g), p);
}

LaurentPoly pow(const LaurentPoly& f, std::uint64_t n) {
  LaurentPoly result = LaurentPoly::one();
  LaurentPoly base = f;
  while (n) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

LaurentPoly pow(const LaurentPoly& f, std::uint64_t n, std::uint32_t p) {
  LaurentPoly result = LaurentPoly::one();
  LaurentPoly base = reduce_mod(f, p);
  while (n) {
    if (n & 1) result = mul(result, base, p);
    n >>= 1;
    if (n) base = mul(base, base, p);
  }
  return result;
}

BigInt ct(const LaurentPoly& f) { return f.at(0); }

BigInt coeff(const LaurentPoly& f, std::int64_t i) { return f.at(-i); }

LaurentPoly reduce_mod(const LaurentPoly& f, std::uint32_t p) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  std::map<std::int64_t, BigInt> out;
  for (const auto& [e, c] : f.terms()) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    if (sgn(r) != 0) out.emplace(e, std::move(r));
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly substitute_power(const LaurentPoly& f, std::uint64_t k) {
  std::map<std::int64_t, BigInt> out;
  for (const auto& [e, c] : f.terms()) {
    out[e * static_cast<std::int64_t>(k)] = c;
  }
  return LaurentPoly(std::move(out));
}

Trinomial::Trinomial(std::int64_t am1_, std::int64_t a0_, std::int64_t a1_)
    : am1(am1_), a0(a0_), a1(a1_) {
  if (am1 == 0 && a0 == 0 && a1 == 0) {
    throw InvalidInputError("trinomial must have a nonzero coefficient");
  }
}

Trinomial Trinomial::parse(std::string_view text) {
  std::array<std::int64_t, 3> vals{};
  std::size_t pos = 0;
  for (int idx = 0; idx < 3; ++idx) {
    std::size_t comma = text.find(',', pos);
    bool last = idx == 2;
    if (last != (comma == std::string_view::npos)) {
      throw InvalidInputError("trinomial shorthand wants exactly three "
                              "comma-separated integers");
    }
    std::string_view token = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    vals[idx] = parse_i64(trim(token), "trinomial coefficient");
    pos = comma + 1;
  }
  return Trinomial(vals[0], vals[1], vals[2]);
}

LaurentPoly Trinomial::to_poly() const {
  std::map<std::int64_t, BigInt> t;
  if (am1) t.emplace(-1, am1);
  if (a0) t.emplace(0, a0);
  if (a1) t.emplace(1, a1);
  return LaurentPoly(std::move(t));
}

std::string Trinomial::str() const {
  return std::to_string(am1) + "," + std::to_string(a0) + "," +
         std::to_string(a1);
}

}  // namespace ctseq
