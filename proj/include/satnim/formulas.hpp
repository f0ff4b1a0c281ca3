#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "satnim/games.hpp"
#include "satnim/mixed_radix.hpp"

// Closed-form Sprague-Grundy evaluators: the digitwise sum sigma for
// saturations of Nim, the pair-correction formula for saturations of
// Welter's game, phi for saturations of misere Nim, Conway's misere Grundy
// function of Nim, and the minimal move weight realizing phi.

namespace satnim {

namespace detail {

inline void validate_position(const Position& x) {
  if (x.empty()) throw std::invalid_argument("position: empty");
  for (Int c : x)
    if (c < 0) throw std::invalid_argument("position: negative coordinate");
}

/// Digitwise sum of the coordinates over a window of the given size.
inline std::vector<int> sigma_window(const Position& x, const Base& base,
                                     std::size_t window) {
  std::vector<int> acc(window, 0);
  for (Int coord : x) {
    Int n = coord;
    for (std::size_t l = 0; l < window && n != 0; ++l) {
      int radix = base.radix(l);
      acc[l] = static_cast<int>((acc[l] + n % radix) % radix);
      n /= radix;
    }
  }
  return acc;
}

inline std::size_t max_digit_len(const Position& x, const Base& base) {
  std::size_t len = 0;
  for (Int coord : x) len = std::max(len, digit_len(coord, base));
  return len;
}

}  // namespace detail

/// sigma: digitwise sum of the coordinates — the Grundy value of a position
/// in any beta-saturation of Nim.
inline Digits sigma_digits(const Position& x, const Base& base) {
  detail::validate_position(x);
  return Digits(detail::sigma_window(x, base, detail::max_digit_len(x, base)),
                base);
}

inline Int sigma(const Position& x, const Base& base) {
  return from_digits(sigma_digits(x, base));
}

/// phi: sigma(X) (+) (radix_product(mord(X) + 1) - 1) — the Grundy value of a
/// position in any beta-saturation of misere Nim. Undefined at the origin.
inline Digits phi_digits(const Position& x, const Base& base) {
  detail::validate_position(x);
  ExtNat m = mord(x, base);
  if (m.is_infinite())
    throw std::domain_error("phi: undefined at the origin");
  std::size_t window = std::max(detail::max_digit_len(x, base), m.value() + 1);
  std::vector<int> acc = detail::sigma_window(x, base, window);
  // Adding the all-ones block is a digitwise decrement up to level mord(X).
  for (std::size_t l = 0; l <= m.value(); ++l)
    acc[l] = detail::mod_radix(acc[l] - 1, base.radix(l));
  return Digits(std::move(acc), base);
}

inline Int phi(const Position& x, const Base& base) {
  return from_digits(phi_digits(x, base));
}

/// Grundy value of a position in a b-saturation of Welter's game:
/// sigma_b(X) (+) the all-ones block of ord_b(x_i - x_j) for every pair.
/// Coordinates must be pairwise distinct.
inline Int welter_sg(const Position& x, int b) {
  detail::validate_position(x);
  Base base(b);
  if (!position_in_set(x, PositionSet::welter))
    throw std::domain_error("welter_sg: repeated coordinates");
  Int acc = sigma(x, base);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      std::size_t m = ord(x[i] - x[j], base).value();
      acc = oplus(acc, base.radix_product(m + 1) - 1, base);
    }
  return acc;
}

/// Conway's misere Sprague-Grundy function of Nim, defined on all of N^k:
/// the Nim sum, except that positions with every coordinate below 2 have
/// their value flipped between 0 and 1.
inline Int misere_grundy_conway(const Position& x) {
  detail::validate_position(x);
  Int nim_sum = 0;
  Int max_coord = 0;
  for (Int c : x) {
    nim_sum ^= c;
    max_coord = std::max(max_coord, c);
  }
  return max_coord >= 2 ? nim_sum : 1 - nim_sum;
}

/// The minimal move-set weight realizing phi for a given base and arity.
struct WeightReport {
  /// Three-case closed form of the weight.
  enum class Case {
    arity,            // w = k          (tail sup >= k, or radix(0) >= 2k)
    arity_minus_one,  // w = k - 1      (tail sup < k <= radix(0) < 2k)
    radix_bound,      // w = max(radix(0) - 1, tail sup)   (otherwise)
  };

  int w = 0;
  std::size_t achieving_level = 0;  // smallest level attaining the max form
  Case case_tag = Case::arity;
};

inline const char* weight_case_name(WeightReport::Case c) {
  switch (c) {
    case WeightReport::Case::arity: return "arity";
    case WeightReport::Case::arity_minus_one: return "arity-minus-one";
    case WeightReport::Case::radix_bound: return "radix-bound";
  }
  return "?";
}

/// Evaluates w = max_L min{radix(L) - d(L), k - d(L)*[radix(0) < 2k]} with
/// d(L) = [L = 0]. The level term depends on L only through radix(L) and
/// d(L), so levels 0..max(1, head size) cover the whole sequence. The result
/// is cross-checked against the equivalent three-case form.
inline WeightReport weight_formula(const Base& base, int k) {
  if (k < 1) throw std::invalid_argument("weight_formula: arity must be >= 1");
  int b0 = base.radix(0);
  int iverson = b0 < 2 * k ? 1 : 0;
  auto term = [&](std::size_t level) {
    if (level == 0) return std::min(b0 - 1, k - iverson);
    return std::min(base.radix(level), k);
  };

  WeightReport report;
  report.w = term(0);
  report.achieving_level = 0;
  std::size_t top = std::max<std::size_t>(1, base.head_size());
  for (std::size_t level = 1; level <= top; ++level) {
    if (term(level) > report.w) {
      report.w = term(level);
      report.achieving_level = level;
    }
  }

  // Three-case form with the sup of the radices above level 0.
  int sup_above = base.tail();
  for (std::size_t level = 1; level < base.head_size(); ++level)
    sup_above = std::max(sup_above, base.radix(level));
  int cross;
  if (sup_above >= k || b0 >= 2 * k) {
    cross = k;
    report.case_tag = WeightReport::Case::arity;
  } else if (k <= b0) {
    cross = k - 1;
    report.case_tag = WeightReport::Case::arity_minus_one;
  } else {
    cross = std::max(b0 - 1, sup_above);
    report.case_tag = WeightReport::Case::radix_bound;
  }
  if (cross != report.w)
    throw std::logic_error("weight_formula: the two forms disagree");
  return report;
}

}  // namespace satnim
