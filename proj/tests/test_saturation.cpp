#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <limits>

#include "satnim/saturation.hpp"

using namespace satnim;

namespace {

/// Minimal move weight over all descendants of x with phi zero, by direct
/// enumeration.
int min_weight_to_phi_zero(const Position& x, const Base& base) {
  int best = std::numeric_limits<int>::max();
  detail::for_each_descendant(x, [&](const Position& y) {
    if (!position_in_set(y, PositionSet::misere)) return;
    if (phi(y, base) != 0) return;
    Move c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
    best = std::min(best, weight(c));
  });
  return best;
}

}  // namespace

TEST_CASE("sg1 holds for ord moves") {
  SaturationReport rep = check_sg1({9, 9}, Base(2), MoveSetSpec::ord_moves(Base(2)));
  CHECK(rep.verdict);
  CHECK(rep.sg1_violations.empty());

  // unit moves are a subset of the ord moves
  CHECK(check_sg1({9, 9}, Base(2), MoveSetSpec::unit()).verdict);

  // a weight cap of zero empties the move set: vacuously fine
  CHECK(check_sg1({9, 9}, Base(2), MoveSetSpec::ord_moves(Base(2), 0)).verdict);
}

TEST_CASE("sg1 and capped sg2 hold across arities and bases") {
  for (const Base& base : {Base(2), Base(3), Base({3, 2, 5}, 4), Base({6}, 2)})
    for (const std::vector<Int>& bounds :
         {std::vector<Int>{9}, std::vector<Int>{9, 9},
          std::vector<Int>{9, 9, 9}}) {
      int k = static_cast<int>(bounds.size());
      REQUIRE(check_sg1(bounds, base, MoveSetSpec::ord_moves(base)).verdict);
      int w = weight_formula(base, k).w;
      REQUIRE(check_sg2(bounds, base, MoveSetSpec::ord_moves(base, w)).verdict);
    }
}

TEST_CASE("sg1 detects violations for foreign move sets") {
  // ord moves of base 3 against phi of base 2: (5,5) - (2,2) = (3,3) keeps
  // phi at 1, and (2,2) is an ord move of base 3.
  SaturationReport rep = check_sg1({6, 6}, Base(2), MoveSetSpec::ord_moves(Base(3)));
  CHECK_FALSE(rep.verdict);
  bool found = false;
  for (const auto& v : rep.sg1_violations)
    found = found || (v.x == Position{5, 5} && v.move == Move{2, 2});
  CHECK(found);
}

TEST_CASE("sg2 holds for weight-capped ord moves") {
  SaturationReport rep =
      check_sg2({9, 9}, Base(2), MoveSetSpec::ord_moves(Base(2), 2));
  CHECK(rep.verdict);
  CHECK(rep.sg2_violations.empty());

  // single heap: weight 1 suffices
  CHECK(check_sg2({9}, Base(2), MoveSetSpec::unit()).verdict);

  // monotone: passing for the capped set implies passing for the full set
  CHECK(check_sg2({9, 9}, Base(2), MoveSetSpec::ord_moves(Base(2))).verdict);
}

TEST_CASE("sg2 fails for unit moves") {
  SaturationReport rep = check_sg2({9, 9}, Base(2), MoveSetSpec::unit());
  CHECK_FALSE(rep.verdict);
  bool found = false;
  for (const auto& v : rep.sg2_violations)
    found = found || (v.x == Position{2, 2} && v.target == 0);
  CHECK(found);
}

TEST_CASE("violation lists are capped but the verdict is not") {
  SaturationReport rep = check_sg2({9, 9}, Base(2), MoveSetSpec::unit(), 3);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.truncated);
  CHECK(rep.sg2_violations.size() == 3);
}

TEST_CASE("saturation testing") {
  CHECK(is_saturation({7, 7}, PositionSet::all, MoveSetSpec::unit(), Base(2)));
  CHECK(is_saturation({6, 6}, PositionSet::welter, MoveSetSpec::unit(), Base(2)));
  CHECK_FALSE(
      is_saturation({7, 7}, PositionSet::misere, MoveSetSpec::unit(), Base(2)));
  CHECK(is_saturation({5, 5}, PositionSet::misere,
                      MoveSetSpec::ord_moves(Base(2)), Base(2)));
}

TEST_CASE("weight witness positions") {
  SECTION("paper example, base (6,2,2,...), three coordinates") {
    auto [x, target] = weight_witness(Base({6}, 2), 3);
    CHECK(x == Position{2, 2, 2});
    CHECK(target == 0);
    CHECK(phi(x, Base({6}, 2)) == 5);

    std::vector<Position> zero_descendants;
    detail::for_each_descendant(x, [&](const Position& y) {
      if (position_in_set(y, PositionSet::misere) && phi(y, Base({6}, 2)) == 0)
        zero_descendants.push_back(y);
    });
    std::vector<Position> expected{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    CHECK(zero_descendants == expected);
    CHECK(min_weight_to_phi_zero(x, Base({6}, 2)) == 3);
  }

  SECTION("base 2, two coordinates") {
    auto [x, target] = weight_witness(Base(2), 2);
    CHECK(target == 0);
    // achieving level 1: two copies of the place value 2
    CHECK(x == Position{2, 2});
    CHECK(phi(x, Base(2)) == 2 * 2 - 1);
    CHECK(min_weight_to_phi_zero(x, Base(2)) == 2);
  }

  SECTION("the minimum weight is exactly w across bases") {
    for (const Base& base :
         {Base(2), Base(3), Base(4), Base({6}, 2), Base({5}, 2), Base({3}, 2)})
      for (int k = 2; k <= 4; ++k) {
        auto [x, target] = weight_witness(base, k);
        REQUIRE(target == 0);
        REQUIRE(position_in_set(x, PositionSet::misere));
        REQUIRE(phi(x, base) > 0);
        REQUIRE(min_weight_to_phi_zero(x, base) == weight_formula(base, k).w);
      }
  }

  SECTION("arity below two is rejected") {
    CHECK_THROWS_AS(weight_witness(Base(2), 1), std::domain_error);
  }
}
