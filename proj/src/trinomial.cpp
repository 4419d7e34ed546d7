#include "ctseq/trinomial.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace ctseq {

namespace {

// One row of the convolution triangle: coefficients of P^n on exponents
// [-n, n], stored densely.
class RowStream {
public:
  explicit RowStream(const Trinomial& P) : P_(P), row_{BigInt(1)} {}

  // coefficient of x^e in P^n for the current row
  const BigInt& at(std::int64_t e) const {
    std::int64_t n = static_cast<std::int64_t>(n_);
    if (e < -n || e > n) return zero_;
    return row_[static_cast<std::size_t>(e + n)];
  }

  std::uint64_t n() const { return n_; }

  void step() {
    std::size_t old = row_.size();
    std::vector<BigInt> next(old + 2);
    for (std::size_t j = 0; j < old; ++j) {
      if (sgn(row_[j]) == 0) continue;
      if (P_.am1) next[j] += row_[j] * P_.am1;
      if (P_.a0) next[j + 1] += row_[j] * P_.a0;
      if (P_.a1) next[j + 2] += row_[j] * P_.a1;
    }
    row_ = std::move(next);
    ++n_;
  }

private:
  Trinomial P_;
  std::vector<BigInt> row_;
  std::uint64_t n_ = 0;
  BigInt zero_ = 0;
};

std::uint32_t mod_u(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

BigInt a_oracle(const Trinomial& P, std::uint64_t n) {
  RowStream rows(P);
  for (std::uint64_t i = 0; i < n; ++i) rows.step();
  return rows.at(0);
}

std::vector<BigInt> a_prefix(const Trinomial& P, std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  RowStream rows(P);
  while (out.size() < count) {
    out.push_back(rows.at(0));
    rows.step();
  }
  return out;
}

std::vector<BigInt> b_prefix(const Trinomial& P, const LaurentPoly& Q,
                             std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  RowStream rows(P);
  while (out.size() < count) {
    BigInt b = 0;
    for (const auto& [e, c] : Q.terms()) b += c * rows.at(-e);
    out.push_back(std::move(b));
    rows.step();
  }
  return out;
}

std::vector<std::uint32_t> b_prefix_mod(const Trinomial& P,
                                        const LaurentPoly& Q, std::uint32_t p,
                                        std::size_t count) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  std::uint32_t am1 = mod_u(P.am1, p);
  std::uint32_t a0 = mod_u(P.a0, p);
  std::uint32_t a1 = mod_u(P.a1, p);
  std::vector<std::pair<std::int64_t, std::uint32_t>> q;
  for (const auto& [e, c] : Q.terms()) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    q.emplace_back(e, static_cast<std::uint32_t>(r.get_ui()));
  }

  std::vector<std::uint32_t> out;
  out.reserve(count);
  std::vector<std::uint32_t> row{1};  // exponents [-n, n]
  for (std::size_t n = 0; n < count; ++n) {
    std::uint64_t b = 0;
    std::int64_t sn = static_cast<std::int64_t>(n);
    for (const auto& [e, c] : q) {
      std::int64_t idx = -e + sn;
      if (idx < 0 || idx > 2 * sn) continue;
      b += static_cast<std::uint64_t>(c) * row[static_cast<std::size_t>(idx)];
    }
    out.push_back(static_cast<std::uint32_t>(b % p));
    std::vector<std::uint32_t> next(row.size() + 2, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j]) continue;
      std::uint64_t v = row[j];
      next[j] = static_cast<std::uint32_t>((next[j] + v * am1) % p);
      next[j + 1] = static_cast<std::uint32_t>((next[j + 1] + v * a0) % p);
      next[j + 2] = static_cast<std::uint32_t>((next[j + 2] + v * a1) % p);
    }
    row = std::move(next);
  }
  return out;
}

const DigitTable& digit_table(const Trinomial& P, std::uint32_t p) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t,
                         std::uint32_t>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<DigitTable>> cache;

  Key key{P.am1, P.a0, P.a1, p};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }

  auto table = std::make_unique<DigitTable>();
  table->p = p;
  table->values.reserve(p);
  for (const BigInt& a : a_prefix(P, p)) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    std::uint32_t v = static_cast<std::uint32_t>(r.get_ui());
    if (v == 0 && !table->zero_digit) {
      table->zero_digit = static_cast<std::uint32_t>(table->values.size());
    }
    table->values.push_back(v);
  }

  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(table));
  return *it->second;
}

std::uint32_t a_mod(const DigitTable& table, const BasePDigits& n) {
  if (table.p != n.base()) {
    throw InvalidInputError("digit table base does not match numeral base");
  }
  std::uint64_t product = 1;
  for (std::uint32_t d : n.digits()) {
    product = product * table.values[d] % table.p;
    if (product == 0) return 0;
  }
  return static_cast<std::uint32_t>(product);
}

std::uint32_t a_mod(const Trinomial& P, const BasePDigits& n) {
  return a_mod(digit_table(P, n.base()), n);
}

Trinomial even_fold(const Trinomial& P) {
  if (P.a0 != 0) {
    throw InapplicableError(
        "even-power fold requires a zero middle coefficient");
  }
  auto square = [](std::int64_t v) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(v, v, &out)) {
      throw InvalidInputError("even_fold coefficient overflow");
    }
    return out;
  };
  std::int64_t cross = 0;
  if (__builtin_mul_overflow(P.am1, P.a1, &cross) ||
      __builtin_mul_overflow(cross, std::int64_t{2}, &cross)) {
    throw InvalidInputError("even_fold coefficient overflow");
  }
  return Trinomial(square(P.am1), cross, square(P.a1));
}

}  // namespace ctseq
