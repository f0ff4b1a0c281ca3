#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satnim/mixed_radix.hpp"

// Subtraction games on k-vectors of nonnegative integers: position sets,
// move sets, option enumeration, and the exact brute-force Sprague-Grundy
// oracle via the mex recursion.

namespace satnim {

/// A game position: k >= 1 nonnegative coordinates.
using Position = std::vector<Int>;
/// A move: the componentwise difference between a position and an option.
using Move = std::vector<Int>;

enum class PositionSet {
  all,     // every k-vector
  misere,  // every k-vector except the origin
  welter,  // pairwise-distinct coordinates
};

inline const char* position_set_name(PositionSet set) {
  switch (set) {
    case PositionSet::all: return "all";
    case PositionSet::misere: return "misere";
    case PositionSet::welter: return "welter";
  }
  return "?";
}

inline bool position_in_set(const Position& x, PositionSet set) {
  if (x.empty()) throw std::invalid_argument("position: empty");
  for (Int c : x)
    if (c < 0) throw std::invalid_argument("position: negative coordinate");
  switch (set) {
    case PositionSet::all:
      return true;
    case PositionSet::misere:
      return std::any_of(x.begin(), x.end(), [](Int c) { return c != 0; });
    case PositionSet::welter:
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
          if (x[i] == x[j]) return false;
      return true;
  }
  return false;
}

/// Declarative move set: the unit moves (change exactly one coordinate), or
/// the ord moves of a base (sum of components has the same ord as the
/// smallest component), optionally capped by Hamming weight.
struct MoveSetSpec {
  enum class Kind { unit, ord };

  Kind kind = Kind::unit;
  std::optional<Base> base;  // required for Kind::ord
  std::optional<int> max_weight;

  static MoveSetSpec unit() { return {}; }
  static MoveSetSpec ord_moves(Base base,
                               std::optional<int> max_weight = std::nullopt) {
    return {Kind::ord, std::move(base), max_weight};
  }
};

/// Hamming weight: number of nonzero components.
inline int weight(std::span<const Int> c) {
  int w = 0;
  for (Int v : c) w += (v != 0);
  return w;
}

/// Minimum ord over the components; infinity iff all are zero.
inline ExtNat mord(std::span<const Int> c, const Base& base) {
  ExtNat m = ExtNat::infinity();
  for (Int v : c) m = std::min(m, ord(v, base));
  return m;
}

inline bool move_member(std::span<const Int> c, const MoveSetSpec& spec) {
  bool nonzero = false;
  for (Int v : c) {
    if (v < 0) throw std::invalid_argument("move: negative component");
    nonzero = nonzero || v != 0;
  }
  if (!nonzero) return false;
  if (spec.max_weight && weight(c) > *spec.max_weight) return false;
  if (spec.kind == MoveSetSpec::Kind::unit) return weight(c) == 1;
  if (!spec.base)
    throw std::invalid_argument("move_member: ord move set needs a base");
  Int sum = 0;
  for (Int v : c) sum = detail::checked_add(sum, v);
  return ord(sum, *spec.base) == mord(c, *spec.base);
}

namespace detail {

/// Visits every y with 0 <= y <= x componentwise (x included), in
/// lexicographic order.
template <typename Fn>
void for_each_descendant(const Position& x, Fn&& fn) {
  Position y(x.size(), 0);
  while (true) {
    fn(static_cast<const Position&>(y));
    std::size_t i = y.size();
    while (i-- > 0) {
      if (y[i] < x[i]) {
        ++y[i];
        std::fill(y.begin() + static_cast<std::ptrdiff_t>(i) + 1, y.end(), 0);
        break;
      }
      if (i == 0) return;
    }
  }
}

/// Visits every position inside the box of exclusive bounds, in
/// lexicographic order.
template <typename Fn>
void for_each_in_box(std::span<const Int> bounds, Fn&& fn) {
  Position corner(bounds.size());
  for (std::size_t i = 0; i < bounds.size(); ++i) corner[i] = bounds[i] - 1;
  for_each_descendant(corner, std::forward<Fn>(fn));
}

}  // namespace detail

/// Minimum excluded nonnegative integer.
inline int mex(std::span<const int> values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (int v : values)
    if (v >= 0 && static_cast<std::size_t>(v) < seen.size()) seen[v] = true;
  int m = 0;
  while (seen[m]) ++m;
  return m;
}

/// The options of x: positions y in the set with x - y in the move set.
/// Enumeration is descendant-based, so infinite move sets are fine.
inline std::vector<Position> options(const Position& x, PositionSet pset,
                                     const MoveSetSpec& mset) {
  if (!position_in_set(x, pset))
    throw std::domain_error("options: position outside the position set");
  std::vector<Position> out;
  detail::for_each_descendant(x, [&](const Position& y) {
    if (y == x || !position_in_set(y, pset)) return;
    Move c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
    if (move_member(c, mset)) out.push_back(y);
  });
  return out;
}

/// Dense Sprague-Grundy values over a box of positions; cells outside the
/// position set are absent. Row-major with the first coordinate slowest.
class GrundyTable {
 public:
  static constexpr int kAbsent = -1;

  explicit GrundyTable(std::vector<Int> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.empty())
      throw std::invalid_argument("GrundyTable: empty bounds");
    std::size_t n = 1;
    for (Int b : bounds_) {
      if (b <= 0) throw std::invalid_argument("GrundyTable: bounds must be positive");
      n *= static_cast<std::size_t>(b);
    }
    values_.assign(n, kAbsent);
  }

  const std::vector<Int>& bounds() const { return bounds_; }
  std::size_t cell_count() const { return values_.size(); }

  bool in_box(std::span<const Int> x) const {
    if (x.size() != bounds_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < 0 || x[i] >= bounds_[i]) return false;
    return true;
  }

  /// Grundy value at x, or nullopt for absent cells.
  std::optional<int> at(std::span<const Int> x) const {
    int v = values_[index(x)];
    if (v == kAbsent) return std::nullopt;
    return v;
  }

  void set(std::span<const Int> x, int value) { values_[index(x)] = value; }

  /// Flat row-major values with kAbsent markers.
  const std::vector<int>& raw_values() const { return values_; }

  friend bool operator==(const GrundyTable&, const GrundyTable&) = default;

 private:
  std::size_t index(std::span<const Int> x) const {
    if (!in_box(x)) throw std::out_of_range("GrundyTable: position outside box");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      idx = idx * static_cast<std::size_t>(bounds_[i]) +
            static_cast<std::size_t>(x[i]);
    return idx;
  }

  std::vector<Int> bounds_;
  std::vector<int> values_;
};

/// Builds the Grundy table by the mex recursion. Options only decrease
/// coordinates, so evaluating the box in lexicographic order guarantees all
/// option values are already present.
inline GrundyTable grundy_table(std::vector<Int> bounds, PositionSet pset,
                                const MoveSetSpec& mset) {
  GrundyTable table(std::move(bounds));
  std::vector<int> option_values;
  detail::for_each_in_box(table.bounds(), [&](const Position& x) {
    if (!position_in_set(x, pset)) return;
    option_values.clear();
    detail::for_each_descendant(x, [&](const Position& y) {
      if (y == x || !position_in_set(y, pset)) return;
      Move c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
      if (!move_member(c, mset)) return;
      option_values.push_back(*table.at(y));
    });
    table.set(x, mex(option_values));
  });
  return table;
}

/// Exact Sprague-Grundy value of a single position.
inline int grundy_bruteforce(const Position& x, PositionSet pset,
                             const MoveSetSpec& mset) {
  if (!position_in_set(x, pset))
    throw std::domain_error("grundy: position outside the position set");
  std::vector<Int> bounds(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) bounds[i] = x[i] + 1;
  return *grundy_table(std::move(bounds), pset, mset).at(x);
}

/// Tab-separated grid, first coordinate as row index, "-" for absent cells.
/// Supports k = 1 (single row) and k = 2.
inline std::string table_to_tsv(const GrundyTable& table) {
  const auto& bounds = table.bounds();
  if (bounds.size() > 2)
    throw std::invalid_argument("table_to_tsv: only k <= 2 grids");
  std::string out;
  auto cell = [&](std::span<const Int> x) {
    auto v = table.at(x);
    out += v ? std::to_string(*v) : "-";
  };
  if (bounds.size() == 1) {
    for (Int i = 0; i < bounds[0]; ++i) {
      if (i > 0) out += "\t";
      cell(std::vector<Int>{i});
    }
    out += "\n";
    return out;
  }
  for (Int row = 0; row < bounds[0]; ++row) {
    for (Int col = 0; col < bounds[1]; ++col) {
      if (col > 0) out += "\t";
      cell(std::vector<Int>{row, col});
    }
    out += "\n";
  }
  return out;
}

}  // namespace satnim
