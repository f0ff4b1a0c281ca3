#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satnim/formulas.hpp"
#include "satnim/games.hpp"
#include "satnim/mixed_radix.hpp"

// Constructive move generation for saturations of misere Nim: given a
// position X and any target value below phi(X), build a legal ord move of
// weight at most w whose option has phi equal to the target. The
// construction is intricate, so every produced move is validated against
// its postconditions before being returned.

namespace satnim {

/// Requested target is not below phi(X), so no option can reach it.
class no_such_move_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MoveConstruction {
  enum class Case {
    high_mord,  // mord(X) above the top disagreeing digit: one coordinate moves
    low_mord,   // otherwise: fix digit D via the claim vector u
  };

  Move move;
  Position resulting;
  Case case_tag = Case::high_mord;
  std::string subcase;
};

inline const char* construction_case_name(MoveConstruction::Case c) {
  return c == MoveConstruction::Case::high_mord ? "high_mord" : "low_mord";
}

namespace detail {

/// ord of (target (-) (-1)), whose digits are target's digits incremented
/// digitwise: the first level where target's digit is not radix - 1. Finite
/// for every finite target.
inline std::size_t ord_succ(Int target, const Base& base) {
  std::size_t level = 0;
  while (digit_at(target, level, base) == base.radix(level) - 1) ++level;
  return level;
}

/// mord of the tuple (target (-) (-1), others...).
inline std::size_t mixed_mord(Int target, std::span<const Int> others,
                              const Base& base) {
  ExtNat m = ExtNat::finite(ord_succ(target, base));
  for (Int v : others) m = std::min(m, ord(v, base));
  return m.value();
}

/// target (-) all_ones(m) (-) others[0] (-) others[1] (-) ... as a value.
inline Int solve_coordinate(Int target, std::size_t m,
                            std::span<const Int> others, const Base& base) {
  std::size_t window = std::max(digit_len(target, base), m + 1);
  for (Int v : others) window = std::max(window, digit_len(v, base));
  std::vector<int> acc = digits_window(target, base, window);
  // Subtracting the all-ones block is a digitwise increment up to level m.
  for (std::size_t l = 0; l <= m; ++l)
    acc[l] = mod_radix(acc[l] + 1, base.radix(l));
  for (Int v : others) {
    Int n = v;
    for (std::size_t l = 0; l < window && n != 0; ++l) {
      int radix = base.radix(l);
      acc[l] = mod_radix(acc[l] - static_cast<int>(n % radix), radix);
      n /= radix;
    }
  }
  return window_value(acc, base);
}

inline void require_misere(const Position& x, const char* who) {
  if (!position_in_set(x, PositionSet::misere))
    throw std::domain_error(std::string(who) + ": position must be nonzero");
}

}  // namespace detail

/// Solves for coordinate i: replaces x_i with the unique value making
/// phi of the result equal to the target, leaving the others untouched.
/// Returns (m, Y) with m = mord(Y). The new coordinate may exceed x_i;
/// Y is not necessarily an option of X.
inline std::pair<std::size_t, Position> solution_formula(const Position& x,
                                                         Int target,
                                                         std::size_t i,
                                                         const Base& base) {
  detail::require_misere(x, "solution_formula");
  if (target < 0) throw std::domain_error("solution_formula: negative target");
  if (i >= x.size()) throw std::invalid_argument("solution_formula: bad index");

  std::vector<Int> others;
  others.reserve(x.size() - 1);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != i) others.push_back(x[j]);

  std::size_t m = detail::mixed_mord(target, others, base);
  Position y = x;
  y[i] = detail::solve_coordinate(target, m, others, base);

  if (mord(y, base) != ExtNat::finite(m) || phi(y, base) != target)
    throw std::logic_error("solution_formula: postcondition failed");
  return {m, std::move(y)};
}

/// Digit-level deduction lemma. Given the level-R digits x_r with x_r[j]
/// maximal and a target digit not exceeding their plain sum, produces u with
///   (1) the digitwise sum of u equal to target_digit,
///   (2) 0 <= x_r[i] - u[i] <= x_r[j] - u[j] for every i,
///   (3) sum of (x_r[i] - u[i]) at most radix - 1.
/// Construction: deduct the defect greedily, largest coordinate first.
inline std::vector<int> lemma_u(std::span<const int> x_r, int target_digit,
                                const Base& base, std::size_t r,
                                std::size_t j) {
  int radix = base.radix(r);
  if (x_r.empty() || j >= x_r.size())
    throw std::invalid_argument("lemma_u: bad index");
  long long sum = 0;
  for (int v : x_r) {
    if (v < 0 || v >= radix) throw std::domain_error("lemma_u: digit out of range");
    if (v > x_r[j]) throw std::domain_error("lemma_u: x_r[j] is not maximal");
    sum += v;
  }
  if (target_digit < 0 || target_digit >= radix)
    throw std::domain_error("lemma_u: target digit out of range");
  if (target_digit > sum)
    throw std::domain_error("lemma_u: target digit exceeds the digit sum");

  int digit_sum = 0;
  for (int v : x_r) digit_sum = detail::mod_radix(digit_sum + v, radix);
  int defect = detail::mod_radix(digit_sum - target_digit, radix);

  std::vector<int> u(x_r.begin(), x_r.end());
  int remaining = defect;
  auto deduct = [&](std::size_t idx) {
    int t = std::min(u[idx], remaining);
    u[idx] -= t;
    remaining -= t;
  };
  deduct(j);
  for (std::size_t idx = 0; idx < u.size(); ++idx)
    if (idx != j) deduct(idx);
  if (remaining != 0)
    throw std::logic_error("lemma_u: defect not exhausted");
  return u;
}

namespace detail {

/// Claim vector for the low-mord case. Coordinates are pre-sorted descending
/// by their digit at level d; m_x <= d. The returned u satisfies
///   (C1) digitwise sum of u = target digit at d, plus one when d <= m_y,
///   (C2) 0 <= x_d[i] - u[i] <= x_d[0] - u[0],
///   (C3) u[0] < x_d[0] unless m_x < d = m_y,
///   (C4) wt(x_d - u) <= w.
inline std::vector<int> build_u_claim_impl(const Position& x_sorted, Int target,
                                           std::size_t d, std::size_t m_x,
                                           std::size_t m_y, const Base& base,
                                           std::string* subcase_out) {
  std::size_t k = x_sorted.size();
  int radix = base.radix(d);
  std::vector<int> x_d(k);
  for (std::size_t i = 0; i < k; ++i) {
    x_d[i] = digit_at(x_sorted[i], d, base);
    if (i > 0 && x_d[i] > x_d[i - 1])
      throw std::invalid_argument("claim: coordinates not sorted at level d");
  }
  if (m_x > d) throw std::invalid_argument("claim: requires mord(X) <= d");

  int t_digit =
      mod_radix(digit_at(target, d, base) + (d <= m_y ? 1 : 0), radix);
  std::string subcase = "u";
  std::vector<int> u = lemma_u(x_d, t_digit, base, d, 0);

  if (d > 0) {
    if (u == x_d && !(m_x < d && d == m_y)) {
      // The plain lemma kept every digit; deduct one full radix instead so
      // the digitwise sum is preserved but the top coordinate drops.
      int remaining = radix;
      for (std::size_t i = 0; i < k && remaining > 0; ++i) {
        int t = std::min(x_d[i], remaining);
        u[i] = x_d[i] - t;
        remaining -= t;
      }
      if (remaining != 0)
        throw std::logic_error("claim: digit sum below the radix");
      subcase = "u-wraparound";
    } else if (u == x_d) {
      subcase = "u-full-digit";
    }
  } else {
    int b0 = radix;
    int ik = static_cast<int>(k);
    if (ik < b0 && b0 < 2 * ik) {
      // Narrow radix: weight k - 1 is required at level 0. Pin the smallest
      // digit and solve the lemma over the rest.
      if (x_d[k - 1] != 0) {
        int pinned = x_d[k - 1];
        int t_rest = mod_radix(t_digit - pinned, b0);
        std::vector<int> head =
            lemma_u(std::span<const int>(x_d).first(k - 1), t_rest, base, d, 0);
        head.push_back(pinned);
        u = std::move(head);
        subcase = "u-last-pinned";
      } else {
        subcase = "u-last-zero";
      }
    }
  }

  // C1..C4; any failure is an internal error, not bad user input.
  int w = weight_formula(base, static_cast<int>(k)).w;
  int u_sum = 0;
  int moved = 0;
  for (std::size_t i = 0; i < k; ++i) {
    u_sum = mod_radix(u_sum + u[i], radix);
    int drop = x_d[i] - u[i];
    if (drop < 0 || drop > x_d[0] - u[0])
      throw std::logic_error("claim: condition C2 failed");
    moved += (drop != 0);
  }
  if (u_sum != t_digit) throw std::logic_error("claim: condition C1 failed");
  if (u[0] >= x_d[0] && !(m_x < d && d == m_y))
    throw std::logic_error("claim: condition C3 failed");
  if (moved > w) throw std::logic_error("claim: condition C4 failed");

  if (subcase_out) *subcase_out = std::move(subcase);
  return u;
}

}  // namespace detail

inline std::vector<int> build_u_claim(const Position& x_sorted, Int target,
                                      std::size_t d, std::size_t m_x,
                                      std::size_t m_y, const Base& base) {
  return detail::build_u_claim_impl(x_sorted, target, d, m_x, m_y, base,
                                    nullptr);
}

/// Builds a move C with X - C a position, C an ord move of weight at most
/// the minimal weight w, and phi(X - C) equal to the target. Throws
/// no_such_move_error when target >= phi(X): by SG1 no such option exists
/// at phi(X), and the construction only covers smaller values.
inline MoveConstruction construct_move(const Position& x, Int target,
                                       const Base& base) {
  detail::require_misere(x, "construct_move");
  if (target < 0) throw std::domain_error("construct_move: negative target");
  Int phi_x = phi(x, base);
  if (target >= phi_x)
    throw no_such_move_error("construct_move: no such option (SG1)");

  std::size_t k = x.size();
  std::size_t m_x = mord(x, base).value();

  // Top level where target and phi(X) disagree.
  std::size_t window = std::max(detail::digit_len(target, base),
                                detail::digit_len(phi_x, base));
  std::size_t d = 0;
  for (std::size_t l = 0; l < window; ++l)
    if (detail::digit_at(target, l, base) != detail::digit_at(phi_x, l, base))
      d = l;

  MoveConstruction out;
  if (m_x > d) {
    // Only the coordinate owning the low digit moves; the solution formula
    // lowers it.
    std::size_t moving = 0;
    while (detail::digit_at(x[moving], m_x, base) == 0) ++moving;
    auto [m_value, y] = solution_formula(x, target, moving, base);
    (void)m_value;
    out.resulting = std::move(y);
    out.case_tag = MoveConstruction::Case::high_mord;
    out.subcase = "solution-formula";
  } else {
    // Sort (stably) by the digit at level d, descending; the claim vector u
    // rewrites that digit for every coordinate but the first, and the
    // solution formula fixes the first.
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      return detail::digit_at(x[a], d, base) > detail::digit_at(x[b], d, base);
    });
    Position xs(k);
    for (std::size_t i = 0; i < k; ++i) xs[i] = x[perm[i]];

    std::size_t m_y = detail::mixed_mord(
        target, std::span<const Int>(xs).subspan(1), base);
    std::vector<int> u =
        detail::build_u_claim_impl(xs, target, d, m_x, m_y, base, &out.subcase);

    Position ys = xs;
    Int place = base.radix_product(d);
    for (std::size_t i = 1; i < k; ++i)
      ys[i] -= Int{detail::digit_at(xs[i], d, base) - u[i]} * place;
    auto [m_value, solved] = solution_formula(ys, target, 0, base);
    if (m_value != m_y)
      throw std::logic_error("construct_move: mord shifted under the claim");
    out.resulting.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) out.resulting[perm[i]] = solved[i];
    out.case_tag = MoveConstruction::Case::low_mord;
  }

  out.move.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) out.move[i] = x[i] - out.resulting[i];

  // Full postcondition check; the construction is delicate enough that a
  // wrong move must never escape.
  int w = weight_formula(base, static_cast<int>(k)).w;
  bool ok = position_in_set(out.resulting, PositionSet::misere) &&
            move_member(out.move, MoveSetSpec::ord_moves(base)) &&
            weight(out.move) <= w && phi(out.resulting, base) == target;
  for (Int c : out.move) ok = ok && c >= 0;
  if (!ok) throw std::logic_error("construct_move: postcondition failed");
  return out;
}

/// A move recommendation: the winning move when the position's value is
/// nonzero, otherwise the lexicographically smallest legal single-coordinate
/// move with the position flagged as losing.
struct BestMove {
  Move move;
  Position resulting;
  bool losing = false;
};

/// Strategy for the misere family: the game on nonzero positions with the
/// given legal move set (unit moves, or ord moves of the base with any cap
/// at least the minimal weight). Returns nullopt at terminal positions.
inline std::optional<BestMove> best_move(const Position& x, const Base& base,
                                         const MoveSetSpec& legal) {
  detail::require_misere(x, "best_move");
  std::size_t k = x.size();

  Int total = 0;
  for (Int c : x) total += c;
  if (total < 2) return std::nullopt;  // only the origin below: terminal

  if (legal.kind == MoveSetSpec::Kind::ord) {
    if (legal.base && !(*legal.base == base))
      throw std::invalid_argument("best_move: move-set base mismatch");
    int w = weight_formula(base, static_cast<int>(k)).w;
    if (legal.max_weight && *legal.max_weight < w)
      throw std::invalid_argument(
          "best_move: weight cap below the saturation weight");
    if (phi(x, base) != 0) {
      MoveConstruction mc = construct_move(x, 0, base);
      return BestMove{std::move(mc.move), std::move(mc.resulting), false};
    }
  } else {
    std::vector<Int> bounds(k);
    for (std::size_t i = 0; i < k; ++i) bounds[i] = x[i] + 1;
    GrundyTable table = grundy_table(std::move(bounds), PositionSet::misere,
                                     MoveSetSpec::unit());
    if (*table.at(x) != 0) {
      std::optional<BestMove> found;
      detail::for_each_descendant(x, [&](const Position& y) {
        if (found || y == x) return;
        if (!position_in_set(y, PositionSet::misere)) return;
        Move c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = x[i] - y[i];
        if (!move_member(c, legal) || *table.at(y) != 0) return;
        found = BestMove{std::move(c), y, false};
      });
      return found;
    }
  }

  // Losing position: hand over the lexicographically smallest legal
  // single-coordinate move.
  for (std::size_t i = k; i-- > 0;) {
    for (Int amount = 1; amount <= x[i]; ++amount) {
      Move c(k, 0);
      c[i] = amount;
      Position y = x;
      y[i] -= amount;
      if (position_in_set(y, PositionSet::misere) && move_member(c, legal))
        return BestMove{std::move(c), std::move(y), true};
    }
  }
  return std::nullopt;
}

}  // namespace satnim
