#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "satnim/formulas.hpp"
#include "satnim/games.hpp"

// Verification machinery for the two conditions characterizing phi as a
// Sprague-Grundy function, saturation testing, and the minimal-weight
// witness positions.

namespace satnim {

/// Outcome of an SG1/SG2 sweep over a box. The verdict covers the whole box
/// even when the violation lists are truncated.
struct SaturationReport {
  struct Sg1Violation {
    Position x;
    Move move;  // a move preserving phi
  };
  struct Sg2Violation {
    Position x;
    Int target;  // a value below phi(x) reached by no option
  };

  std::vector<Sg1Violation> sg1_violations;
  std::vector<Sg2Violation> sg2_violations;
  std::vector<Int> checked_box;
  bool verdict = true;
  bool truncated = false;
};

/// SG1: no position has an option with the same phi value. Lists every
/// in-box violation (X, C) for moves C in the given set.
inline SaturationReport check_sg1(const std::vector<Int>& bounds,
                                  const Base& base, const MoveSetSpec& mset,
                                  std::size_t violation_cap = 100) {
  SaturationReport report;
  report.checked_box = bounds;
  detail::for_each_in_box(bounds, [&](const Position& x) {
    if (!position_in_set(x, PositionSet::misere)) return;
    Int phi_x = phi(x, base);
    detail::for_each_descendant(x, [&](const Position& y) {
      if (y == x || !position_in_set(y, PositionSet::misere)) return;
      Move c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
      if (!move_member(c, mset)) return;
      if (phi(y, base) != phi_x) return;
      report.verdict = false;
      if (report.sg1_violations.size() < violation_cap)
        report.sg1_violations.push_back({x, std::move(c)});
      else
        report.truncated = true;
    });
  });
  return report;
}

/// SG2: every value below phi(X) is the phi value of some option. All
/// options stay inside the box (moves only decrease coordinates), so the
/// in-box check is exact per position.
inline SaturationReport check_sg2(const std::vector<Int>& bounds,
                                  const Base& base, const MoveSetSpec& mset,
                                  std::size_t violation_cap = 100) {
  SaturationReport report;
  report.checked_box = bounds;
  std::vector<bool> reached;
  detail::for_each_in_box(bounds, [&](const Position& x) {
    if (!position_in_set(x, PositionSet::misere)) return;
    Int phi_x = phi(x, base);
    if (phi_x == 0) return;
    reached.assign(static_cast<std::size_t>(phi_x), false);
    detail::for_each_descendant(x, [&](const Position& y) {
      if (y == x || !position_in_set(y, PositionSet::misere)) return;
      Move c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
      if (!move_member(c, mset)) return;
      Int v = phi(y, base);
      if (v < phi_x) reached[static_cast<std::size_t>(v)] = true;
    });
    for (Int target = 0; target < phi_x; ++target) {
      if (reached[static_cast<std::size_t>(target)]) continue;
      report.verdict = false;
      if (report.sg2_violations.size() < violation_cap)
        report.sg2_violations.push_back({x, target});
      else
        report.truncated = true;
    }
  });
  return report;
}

/// Whether the game has the same Grundy table on the box as the ord-move
/// game over the same positions.
inline bool is_saturation(const std::vector<Int>& bounds, PositionSet pset,
                          const MoveSetSpec& mset, const Base& base) {
  return grundy_table(bounds, pset, mset) ==
         grundy_table(bounds, pset, MoveSetSpec::ord_moves(base));
}

/// A position X with phi(X) > 0 such that every descendant Y with
/// phi(Y) = 0 satisfies wt(X - Y) >= w: the move weight w cannot be lowered.
/// Returns (X, 0), the unreachable-below-weight target being 0.
///
/// With M the level attaining the weight maximum: if M > 0 or radix(0) < 2k,
/// X has w + [M = 0] coordinates equal to radix_product(M) and the rest 0;
/// otherwise X = (2,...,2).
inline std::pair<Position, Int> weight_witness(const Base& base, int k) {
  if (k < 2)
    throw std::domain_error("weight_witness: needs arity >= 2");
  WeightReport report = weight_formula(base, k);
  std::size_t m = report.achieving_level;
  Position x(static_cast<std::size_t>(k), 0);
  if (m > 0 || base.radix(0) < 2 * k) {
    int copies = report.w + (m == 0 ? 1 : 0);
    Int value = base.radix_product(m);
    for (int i = 0; i < copies; ++i) x[static_cast<std::size_t>(i)] = value;
  } else {
    std::fill(x.begin(), x.end(), Int{2});
  }
  return {std::move(x), Int{0}};
}

}  // namespace satnim
