#include "ctseq/reduce.hpp"

#include <algorithm>
#include <numeric>

#include "ctseq/trinomial.hpp"

namespace ctseq {

namespace {

std::uint32_t mod_u(const BigInt& v, std::uint32_t p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Exact coefficients a_{i,j} (j = 0..i) of x^j in P^i, for the triangular
// recursion. Small i only.
std::vector<std::vector<BigInt>> side_rows(const Trinomial& P,
                                           std::uint32_t imax) {
  std::vector<std::vector<BigInt>> rows(imax + 1);
  LaurentPoly power = LaurentPoly::one();
  for (std::uint32_t i = 0; i <= imax; ++i) {
    rows[i].reserve(i + 1);
    for (std::uint32_t j = 0; j <= i; ++j) rows[i].push_back(power.at(j));
    if (i < imax) power = mul(power, P.to_poly());
  }
  return rows;
}

void require_reducible(const Trinomial& P, std::uint32_t p) {
  if (!P.symmetric()) {
    throw InvalidInputError(
        "unsupported shape: the reduction requires a symmetric trinomial");
  }
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  if (p == 2) {
    throw InapplicableError(
        "the linear-combination reduction is defined for odd primes only");
  }
}

}  // namespace

std::uint32_t inv_mod(std::uint32_t value, std::uint32_t p) {
  value %= p;
  if (value == 0) {
    throw InapplicableError("value not invertible mod " + std::to_string(p));
  }
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = value;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) {
    throw InapplicableError("value not invertible mod " + std::to_string(p));
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

ComboSpec ComboSpec::normalized() const {
  BigInt g = abs(divisor);
  for (const BigInt& c : coeffs) {
    BigInt a = abs(c);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  if (sgn(g) == 0 || g == 1) return *this;
  ComboSpec out = *this;
  for (BigInt& c : out.coeffs) c /= g;
  out.divisor /= g;
  return out;
}

std::string ComboSpec::str() const {
  std::string out = "P=" + P.str() + "; c=";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out.push_back(',');
    out += coeffs[i].get_str();
  }
  out += "; d=" + divisor.get_str();
  if (valid_mod) out += "; mod=" + std::to_string(*valid_mod);
  return out;
}

ComboSpec ComboSpec::parse(std::string_view text) {
  std::optional<Trinomial> P;
  std::vector<BigInt> coeffs;
  BigInt divisor = 1;
  std::optional<std::uint32_t> valid_mod;
  bool saw_c = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    std::string_view field = text.substr(
        pos, semi == std::string_view::npos ? std::string_view::npos
                                            : semi - pos);
    field = trim(field);
    if (!field.empty()) {
      std::size_t eq = field.find('=');
      if (eq == std::string_view::npos) {
        throw InvalidInputError("malformed combo field \"" +
                                std::string(field) + "\"");
      }
      std::string_view key = trim(field.substr(0, eq));
      std::string value(trim(field.substr(eq + 1)));
      if (key == "P") {
        P = Trinomial::parse(value);
      } else if (key == "c") {
        saw_c = true;
        std::size_t vpos = 0;
        while (vpos <= value.size()) {
          std::size_t comma = value.find(',', vpos);
          std::string tok(trim(std::string_view(value).substr(
              vpos, comma == std::string::npos ? std::string::npos
                                               : comma - vpos)));
          BigInt c;
          if (tok.empty() ||
              mpz_set_str(c.get_mpz_t(), tok.c_str(), 10) != 0) {
            throw InvalidInputError("malformed combo coefficient \"" + tok +
                                    "\"");
          }
          coeffs.push_back(std::move(c));
          if (comma == std::string::npos) break;
          vpos = comma + 1;
        }
      } else if (key == "d") {
        if (mpz_set_str(divisor.get_mpz_t(), value.c_str(), 10) != 0 ||
            sgn(divisor) <= 0) {
          throw InvalidInputError("malformed combo divisor \"" + value + "\"");
        }
      } else if (key == "mod") {
        std::uint32_t m = static_cast<std::uint32_t>(std::stoul(value));
        if (!is_prime(m)) {
          throw InvalidInputError("combo mod field must be prime");
        }
        valid_mod = m;
      } else {
        throw InvalidInputError("unknown combo field \"" + std::string(key) +
                                "\"");
      }
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  if (!P || !saw_c || coeffs.empty()) {
    throw InvalidInputError("combo needs P=..., c=..., and d=... fields");
  }
  while (coeffs.size() > 1 && sgn(coeffs.back()) == 0) coeffs.pop_back();
  return ComboSpec{*P, std::move(coeffs), std::move(divisor), valid_mod};
}

std::vector<std::uint32_t> side_coeff_combo(const Trinomial& P,
                                            std::uint32_t i, std::uint32_t p) {
  require_reducible(P, p);
  std::uint32_t alpha1 = mod_u(BigInt(P.a1), p);
  if (alpha1 == 0) {
    throw InapplicableError(
        "p divides the outer coefficient; use the periodic branch");
  }
  auto rows = side_rows(P, i);
  std::uint32_t inv2 = inv_mod(2, p);
  std::uint32_t inv_alpha1 = inv_mod(alpha1, p);

  // V[j]: residue vector with a_{n,j} == sum_k V[j][k] a_{n+k} mod p.
  std::vector<std::vector<std::uint32_t>> V(i + 1);
  V[0] = {1};
  std::uint32_t inv_alpha_pow = 1;
  for (std::uint32_t m = 1; m <= i; ++m) {
    inv_alpha_pow =
        static_cast<std::uint32_t>(std::uint64_t{inv_alpha_pow} * inv_alpha1 %
                                   p);
    std::vector<std::uint64_t> acc(m + 1, 0);
    acc[m] += 1;  // a_{n+m}
    std::uint32_t ai0 = mod_u(rows[m][0], p);
    acc[0] += static_cast<std::uint64_t>(p - ai0) % p;  // - a_{m,0} a_n
    for (std::uint32_t j = 1; j < m; ++j) {
      std::uint32_t aij = mod_u(rows[m][j], p);
      std::uint32_t w = static_cast<std::uint32_t>(
          std::uint64_t{2} * aij % p);  // subtract 2 a_{m,j} a_{n,j}
      if (w == 0) continue;
      std::uint32_t wneg = p - w;
      for (std::size_t k = 0; k < V[j].size(); ++k) {
        acc[k] += std::uint64_t{wneg} * V[j][k] % p;
      }
    }
    std::uint32_t scale = static_cast<std::uint32_t>(
        std::uint64_t{inv2} * inv_alpha_pow % p);
    V[m].resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      V[m][k] = static_cast<std::uint32_t>(acc[k] % p * scale % p);
    }
  }
  return V[i];
}

namespace {

// Integral vectors U[i] with 2 * a_{n,i} == sum_k U[i][k] * a_{n+k} over the
// integers; available exactly when the outer coefficient is 1.
std::vector<std::vector<BigInt>> integral_double_side(const Trinomial& P,
                                                      std::uint32_t imax) {
  auto rows = side_rows(P, imax);
  std::vector<std::vector<BigInt>> U(imax + 1);
  U[0] = {BigInt(2)};
  for (std::uint32_t m = 1; m <= imax; ++m) {
    std::vector<BigInt> acc(m + 1);
    acc[m] += 1;
    acc[0] -= rows[m][0];
    for (std::uint32_t j = 1; j < m; ++j) {
      const BigInt& aij = rows[m][j];
      if (sgn(aij) == 0) continue;
      for (std::size_t k = 0; k < U[j].size(); ++k) acc[k] -= aij * U[j][k];
    }
    U[m] = std::move(acc);
  }
  return U;
}

}  // namespace

ReductionResult reduce_Q(const Trinomial& P, const LaurentPoly& Q,
                         std::uint32_t p) {
  require_reducible(P, p);
  std::uint32_t alpha1 = mod_u(BigInt(P.a1), p);
  if (alpha1 == 0) {
    PeriodicForm form;
    form.p = p;
    form.alpha0 = mod_u(BigInt(P.a0), p);
    form.ct_q = mod_u(ct(Q), p);
    return ReductionResult{form};
  }

  // Symmetrize: a_{n,j} = a_{n,-j}, so weights on x^j and x^-j pool on |j|.
  std::int64_t h = Q.radius();
  std::vector<BigInt> weights(static_cast<std::size_t>(h) + 1);
  for (const auto& [e, c] : Q.terms()) {
    weights[static_cast<std::size_t>(std::llabs(e))] += c;
  }
  while (weights.size() > 1 && sgn(weights.back()) == 0) weights.pop_back();
  std::uint32_t span = static_cast<std::uint32_t>(weights.size() - 1);

  ComboSpec spec{P, {}, 1, std::nullopt};
  if (P.a1 == 1) {
    // Integral route: b_n = (1/2) sum_i w_i * (2 a_{n,i}).
    auto U = integral_double_side(P, span);
    std::vector<BigInt> coeffs(span + 1);
    for (std::uint32_t i = 0; i <= span; ++i) {
      if (sgn(weights[i]) == 0) continue;
      for (std::size_t k = 0; k < U[i].size(); ++k) {
        coeffs[k] += weights[i] * U[i][k];
      }
    }
    spec.coeffs = std::move(coeffs);
    spec.divisor = 2;
  } else {
    std::vector<BigInt> coeffs(span + 1);
    for (std::uint32_t i = 0; i <= span; ++i) {
      std::uint32_t w = mod_u(weights[i], p);
      if (w == 0) continue;
      auto v = side_coeff_combo(P, i, p);
      for (std::size_t k = 0; k < v.size(); ++k) {
        coeffs[k] += std::uint64_t{w} * v[k] % p;
      }
    }
    for (BigInt& c : coeffs) c = mod_u(c, p);
    spec.coeffs = std::move(coeffs);
    spec.divisor = 1;
    spec.valid_mod = p;
  }
  while (spec.coeffs.size() > 1 && sgn(spec.coeffs.back()) == 0) {
    spec.coeffs.pop_back();
  }
  return ReductionResult{std::move(spec)};
}

std::pair<Trinomial, LaurentPoly> family_spec(std::uint64_t d,
                                              std::uint64_t m1,
                                              std::uint64_t m2) {
  if (d < 1) {
    throw InvalidInputError("family dimension d must be at least 1");
  }
  Trinomial P(static_cast<std::int64_t>(m2), static_cast<std::int64_t>(m1),
              static_cast<std::int64_t>(m2));
  std::map<std::int64_t, BigInt> q;
  std::int64_t sd = static_cast<std::int64_t>(d);
  q[sd - 1] += 1;
  q[sd - 3] -= 1;
  return {P, LaurentPoly(std::move(q))};
}

std::uint32_t combo_eval_mod(const ComboSpec& spec, std::uint32_t p,
                             const BasePDigits& n) {
  if (spec.valid_mod && *spec.valid_mod != p) {
    throw InvalidInputError(
        "combo coefficients are residues for a different prime");
  }
  std::uint32_t inv_d = inv_mod(mod_u(spec.divisor, p), p);
  const DigitTable& table = digit_table(spec.P, p);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    std::uint32_t c = mod_u(spec.coeffs[i], p);
    if (c == 0) continue;
    BasePDigits ni = i == 0 ? n : ctseq::add(n, to_digits(std::uint64_t{i}, p));
    sum += std::uint64_t{c} * a_mod(table, ni) % p;
  }
  return static_cast<std::uint32_t>(sum % p * inv_d % p);
}

std::vector<BigInt> combo_prefix_exact(const ComboSpec& spec,
                                       std::size_t count) {
  if (spec.valid_mod) {
    throw InvalidInputError(
        "residue combos have no exact integer evaluation");
  }
  std::vector<BigInt> a = a_prefix(spec.P, count + spec.span());
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
      sum += spec.coeffs[i] * a[n + i];
    }
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), sum.get_mpz_t(),
                spec.divisor.get_mpz_t());
    if (sgn(r) != 0) {
      throw InternalError("combo divisor does not divide exactly at n=" +
                          std::to_string(n));
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace ctseq
