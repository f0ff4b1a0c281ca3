#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Mixed-radix number systems: digit expansions, the order function ord, and
// the carry-free digitwise operations (+) and (-) modulo each radix.

namespace satnim {

using Int = std::int64_t;

/// A natural number extended with +infinity (the ord of zero).
/// Finite values compare below infinity.
class ExtNat {
 public:
  static constexpr ExtNat finite(std::size_t v) { return ExtNat(v); }
  static constexpr ExtNat infinity() { return ExtNat(kInf); }

  constexpr bool is_infinite() const { return v_ == kInf; }

  /// The finite value; throws if infinite.
  constexpr std::size_t value() const {
    if (is_infinite()) throw std::domain_error("ExtNat: infinite value");
    return v_;
  }

  friend constexpr bool operator==(ExtNat, ExtNat) = default;
  friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(v_);
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  constexpr explicit ExtNat(std::size_t v) : v_(v) {}
  std::size_t v_;
};

/// A mixed-radix base: finitely many leading radices followed by a constant
/// tail, every radix >= 2. The text form "6,2" means (6,2,2,2,...), "2" is
/// the ordinary binary system. Head entries equal to the tail are dropped so
/// that equal bases have equal representations.
class Base {
 public:
  explicit Base(int constant_radix) : tail_(constant_radix) { validate(); }

  Base(std::vector<int> head, int tail) : head_(std::move(head)), tail_(tail) {
    validate();
  }

  /// Parses the comma-separated syntax; the last entry repeats forever.
  static Base parse(std::string_view text) {
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      entries.push_back(parse_radix(tok));
      pos = comma + 1;
    }
    int tail = entries.back();
    entries.pop_back();
    return Base(std::move(entries), tail);
  }

  /// The radix at digit position `level`.
  int radix(std::size_t level) const {
    return level < head_.size() ? head_[level] : tail_;
  }

  /// The place value of digit `level`: the product of the radices below it.
  /// radix_product(0) = 1. Throws std::overflow_error instead of wrapping.
  Int radix_product(std::size_t level) const {
    Int product = 1;
    for (std::size_t l = 0; l < level; ++l) {
      if (__builtin_mul_overflow(product, Int{radix(l)}, &product))
        throw std::overflow_error("Base: radix product exceeds 64 bits");
    }
    return product;
  }

  std::size_t head_size() const { return head_.size(); }
  int tail() const { return tail_; }

  std::string to_string() const {
    std::string s;
    for (int r : head_) s += std::to_string(r) + ",";
    return s + std::to_string(tail_);
  }

  friend bool operator==(const Base&, const Base&) = default;

 private:
  static int parse_radix(std::string_view tok) {
    if (tok.empty()) throw std::invalid_argument("Base: empty radix entry");
    int value = 0;
    for (char c : tok) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("Base: bad radix entry '" +
                                    std::string(tok) + "'");
      if (value > (std::numeric_limits<int>::max() - 9) / 10)
        throw std::invalid_argument("Base: radix entry too large");
      value = value * 10 + (c - '0');
    }
    if (value < 2)
      throw std::invalid_argument("Base: every radix must be at least 2");
    return value;
  }

  void validate() {
    if (tail_ < 2)
      throw std::invalid_argument("Base: every radix must be at least 2");
    for (int r : head_)
      if (r < 2)
        throw std::invalid_argument("Base: every radix must be at least 2");
    while (!head_.empty() && head_.back() == tail_) head_.pop_back();
  }

  std::vector<int> head_;
  int tail_ = 2;
};

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("mixed_radix: 64-bit overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("mixed_radix: 64-bit overflow");
  return r;
}

/// Number of digits needed for n >= 0 (0 needs none).
inline std::size_t digit_len(Int n, const Base& base) {
  std::size_t len = 0;
  while (n != 0) {
    n /= base.radix(len);
    ++len;
  }
  return len;
}

/// Digit of n >= 0 at position `level`, without materializing the expansion.
inline int digit_at(Int n, std::size_t level, const Base& base) {
  for (std::size_t l = 0; l < level && n != 0; ++l) n /= base.radix(l);
  return static_cast<int>(n % base.radix(level));
}

/// The first `window` digits of n >= 0, little-endian, zero padded.
inline std::vector<int> digits_window(Int n, const Base& base,
                                      std::size_t window) {
  std::vector<int> out(window, 0);
  for (std::size_t l = 0; l < window && n != 0; ++l) {
    out[l] = static_cast<int>(n % base.radix(l));
    n /= base.radix(l);
  }
  return out;
}

/// Value of a little-endian digit window (digits assumed in range).
inline Int window_value(std::span<const int> digits, const Base& base) {
  Int value = 0;
  for (std::size_t l = digits.size(); l-- > 0;)
    value = checked_add(checked_mul(value, base.radix(l)), digits[l]);
  return value;
}

inline int mod_radix(long long v, int radix) {
  long long m = v % radix;
  return static_cast<int>(m < 0 ? m + radix : m);
}

}  // namespace detail

/// Little-endian mixed-radix expansion of a nonnegative integer. Trailing
/// zeros are stripped, so equal values have equal digit vectors.
class Digits {
 public:
  Digits(std::vector<int> digits, Base base)
      : digits_(std::move(digits)), base_(std::move(base)) {
    for (std::size_t l = 0; l < digits_.size(); ++l)
      if (digits_[l] < 0 || digits_[l] >= base_.radix(l))
        throw std::invalid_argument("Digits: digit out of range");
    strip();
  }

  const std::vector<int>& digits() const { return digits_; }
  const Base& base() const { return base_; }
  std::size_t size() const { return digits_.size(); }

  /// Digit at `level`; implicit zeros beyond the stored range.
  int at(std::size_t level) const {
    return level < digits_.size() ? digits_[level] : 0;
  }

  /// "[d0,d1,...]" in the little-endian bracket notation.
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t l = 0; l < digits_.size(); ++l) {
      if (l > 0) s += ",";
      s += std::to_string(digits_[l]);
    }
    return s + "]";
  }

  friend bool operator==(const Digits&, const Digits&) = default;

 private:
  void strip() {
    while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
  }

  std::vector<int> digits_;
  Base base_;
};

/// Expansion of n >= 0 in the given base.
inline Digits to_digits(Int n, const Base& base) {
  if (n < 0) throw std::domain_error("to_digits: negative input");
  return Digits(detail::digits_window(n, base, detail::digit_len(n, base)),
                base);
}

/// Value of an expansion. The span overload validates digit ranges.
inline Int from_digits(const Digits& d) {
  return detail::window_value(d.digits(), d.base());
}

inline Int from_digits(std::span<const int> digits, const Base& base) {
  for (std::size_t l = 0; l < digits.size(); ++l)
    if (digits[l] < 0 || digits[l] >= base.radix(l))
      throw std::invalid_argument("from_digits: digit out of range");
  return detail::window_value(digits, base);
}

namespace detail {

template <typename Op>
Digits digitwise(const Digits& a, const Digits& b, Op op) {
  if (a.base() != b.base())
    throw std::invalid_argument("digitwise op: mismatched bases");
  std::size_t window = std::max(a.size(), b.size());
  std::vector<int> out(window);
  for (std::size_t l = 0; l < window; ++l)
    out[l] = mod_radix(op(a.at(l), b.at(l)), a.base().radix(l));
  return Digits(std::move(out), a.base());
}

}  // namespace detail

/// Digitwise sum modulo each radix; no carries.
inline Digits oplus(const Digits& a, const Digits& b) {
  return detail::digitwise(a, b, [](long long x, long long y) { return x + y; });
}

/// Digitwise difference modulo each radix; no borrows.
inline Digits ominus(const Digits& a, const Digits& b) {
  return detail::digitwise(a, b, [](long long x, long long y) { return x - y; });
}

inline Int oplus(Int a, Int b, const Base& base) {
  return from_digits(oplus(to_digits(a, base), to_digits(b, base)));
}

inline Int ominus(Int a, Int b, const Base& base) {
  return from_digits(ominus(to_digits(a, base), to_digits(b, base)));
}

/// Index of the lowest nonzero digit of n (equivalently the largest L such
/// that the place value at L divides n); infinity for n = 0. Sign-invariant.
inline ExtNat ord(Int n, const Base& base) {
  if (n == 0) return ExtNat::infinity();
  if (n < 0) n = -n;
  std::size_t level = 0;
  while (n % base.radix(level) == 0) {
    n /= base.radix(level);
    ++level;
  }
  return ExtNat::finite(level);
}

/// Digits of radix_product(m + 1) - 1: every digit up to m maxed out.
inline Digits all_ones(std::size_t m, const Base& base) {
  std::vector<int> out(m + 1);
  for (std::size_t l = 0; l <= m; ++l) out[l] = base.radix(l) - 1;
  return Digits(std::move(out), base);
}

/// Digit of an arbitrary integer at `level`. Negative integers have the
/// infinite expansion determined by digit(n) + digit(-n-1) = radix - 1.
inline int neg_digit(Int n, std::size_t level, const Base& base) {
  if (n >= 0) return detail::digit_at(n, level, base);
  return base.radix(level) - 1 - detail::digit_at(-n - 1, level, base);
}

}  // namespace satnim
