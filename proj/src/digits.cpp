#include "ctseq/digits.hpp"

#include <algorithm>
#include <charconv>

namespace ctseq {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

namespace {

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(p) +
                            " is not prime");
  }
}

}  // namespace

BasePDigits::BasePDigits(std::uint32_t p, std::vector<std::uint32_t> digits)
    : p_(p), digits_(std::move(digits)) {
  require_prime(p_);
  for (std::uint32_t d : digits_) {
    if (d >= p_) {
      throw InvalidInputError("malformed numeral: digit " + std::to_string(d) +
                              " not below base " + std::to_string(p_));
    }
  }
}

BasePDigits BasePDigits::parse(std::uint32_t p, std::string_view text) {
  require_prime(p);
  std::vector<std::uint32_t> digits;
  if (p <= 10) {
    digits.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw InvalidInputError(std::string("malformed numeral: bad char '") +
                                c + "'");
      }
      digits.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  } else if (!text.empty()) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      std::string_view token = text.substr(
          pos, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - pos);
      std::uint32_t value = 0;
      auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw InvalidInputError("malformed numeral: bad digit token \"" +
                                std::string(token) + "\"");
      }
      digits.push_back(value);
      if (dot == std::string_view::npos) break;
      pos = dot + 1;
    }
  }
  return BasePDigits(p, std::move(digits));
}

bool BasePDigits::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(),
                     [](std::uint32_t d) { return d == 0; });
}

std::uint32_t BasePDigits::digit_at(std::size_t position) const {
  if (position >= digits_.size()) return 0;
  return digits_[digits_.size() - 1 - position];
}

BasePDigits BasePDigits::left_padded(std::size_t length) const {
  if (digits_.size() >= length) return *this;
  std::vector<std::uint32_t> out(length - digits_.size(), 0);
  out.insert(out.end(), digits_.begin(), digits_.end());
  return BasePDigits(p_, std::move(out));
}

BasePDigits BasePDigits::stripped() const {
  std::size_t first = 0;
  while (first + 1 < digits_.size() && digits_[first] == 0) ++first;
  if (digits_.empty()) return BasePDigits(p_, {0});
  return BasePDigits(
      p_, std::vector<std::uint32_t>(digits_.begin() + first, digits_.end()));
}

BasePDigits BasePDigits::truncated_low(std::size_t count) const {
  std::vector<std::uint32_t> out = digits_;
  std::size_t n = std::min(count, out.size());
  std::fill(out.end() - n, out.end(), 0u);
  return BasePDigits(p_, std::move(out));
}

BasePDigits BasePDigits::dropped_low(std::size_t count) const {
  if (count >= digits_.size()) return BasePDigits(p_, {});
  return BasePDigits(p_, std::vector<std::uint32_t>(
                             digits_.begin(), digits_.end() - count));
}

std::string BasePDigits::str() const {
  std::string out;
  if (p_ <= 10) {
    out.reserve(digits_.size());
    for (std::uint32_t d : digits_) out.push_back(static_cast<char>('0' + d));
  } else {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i) out.push_back('.');
      out += std::to_string(digits_[i]);
    }
  }
  return out;
}

bool BasePDigits::operator==(const BasePDigits& other) const {
  if (p_ != other.p_) return false;
  return compare_value(*this, other) == 0;
}

int compare_value(const BasePDigits& a, const BasePDigits& b) {
  if (a.base() != b.base()) {
    throw InvalidInputError("mismatched numeral bases");
  }
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t pos = n; pos-- > 0;) {
    std::uint32_t da = a.digit_at(pos);
    std::uint32_t db = b.digit_at(pos);
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

BasePDigits to_digits(std::uint64_t n, std::uint32_t p) {
  require_prime(p);
  std::vector<std::uint32_t> digits;
  do {
    digits.push_back(static_cast<std::uint32_t>(n % p));
    n /= p;
  } while (n != 0);
  std::reverse(digits.begin(), digits.end());
  return BasePDigits(p, std::move(digits));
}

BasePDigits to_digits(const BigInt& n, std::uint32_t p) {
  require_prime(p);
  if (sgn(n) < 0) {
    throw InvalidInputError("numeral value must be nonnegative");
  }
  std::vector<std::uint32_t> digits;
  BigInt rest = n;
  do {
    digits.push_back(static_cast<std::uint32_t>(
        mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p)));
  } while (sgn(rest) != 0);
  std::reverse(digits.begin(), digits.end());
  return BasePDigits(p, std::move(digits));
}

BigInt from_digits(const BasePDigits& w) {
  BigInt value = 0;
  for (std::uint32_t d : w.digits()) {
    value *= w.base();
    value += d;
  }
  return value;
}

BasePDigits add(const BasePDigits& w, const BasePDigits& v) {
  if (w.base() != v.base()) {
    throw InvalidInputError("mismatched numeral bases in add");
  }
  std::uint32_t p = w.base();
  std::size_t n = std::max(w.size(), v.size());
  std::vector<std::uint32_t> out;
  out.reserve(n + 1);
  std::uint32_t carry = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::uint32_t s = w.digit_at(pos) + v.digit_at(pos) + carry;
    carry = s >= p ? 1 : 0;
    out.push_back(s >= p ? s - p : s);
  }
  if (carry) out.push_back(1);
  std::reverse(out.begin(), out.end());
  return BasePDigits(p, std::move(out));
}

TailDecomposition decompose_tail(const BasePDigits& w,
                                 std::size_t suffix_len) {
  if (w.size() == 0) {
    throw InvalidInputError("decompose_tail of empty numeral");
  }
  if (suffix_len > w.size()) {
    throw InvalidInputError("decompose_tail suffix longer than numeral");
  }
  std::uint32_t p = w.base();
  const auto& d = w.digits();
  std::size_t tail_start = d.size() - suffix_len;  // index into msf storage
  BasePDigits tail(p, std::vector<std::uint32_t>(d.begin() + tail_start,
                                                 d.end()));
  // scan upward from just above the suffix
  std::size_t i = tail_start;
  std::uint64_t run = 0;
  while (i > 0 && d[i - 1] == p - 1) {
    --i;
    ++run;
  }
  if (i == 0) {
    throw InapplicableError(
        "decompose_tail: every digit above the suffix is p-1; left-pad with "
        "a zero first");
  }
  std::uint32_t bound = d[i - 1];
  BasePDigits head(p, std::vector<std::uint32_t>(d.begin(), d.begin() + i - 1));
  return TailDecomposition{std::move(head), bound, run, std::move(tail)};
}

}  // namespace ctseq
