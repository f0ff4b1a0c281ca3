#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "satnim/solver.hpp"

using namespace satnim;

namespace {

void check_lemma_u_conditions(std::span<const int> x_r, std::span<const int> u,
                              int target_digit, int radix, std::size_t j) {
  REQUIRE(u.size() == x_r.size());
  int digit_sum = 0;
  long long deducted = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    digit_sum = (digit_sum + u[i]) % radix;
    int drop = x_r[i] - u[i];
    REQUIRE(drop >= 0);
    REQUIRE(drop <= x_r[j] - u[j]);
    deducted += drop;
  }
  REQUIRE(digit_sum == target_digit);
  REQUIRE(deducted <= radix - 1);
}

/// Every X in the box, every target below phi(X): the constructed move obeys
/// all postconditions. Collects the construction branches seen.
void sweep_construct(const Base& base, const std::vector<Int>& bounds,
                     std::set<std::string>* subcases = nullptr) {
  int k = static_cast<int>(bounds.size());
  int w = weight_formula(base, k).w;
  detail::for_each_in_box(bounds, [&](const Position& x) {
    if (!position_in_set(x, PositionSet::misere)) return;
    Int phi_x = phi(x, base);
    for (Int target = 0; target < phi_x; ++target) {
      MoveConstruction mc = construct_move(x, target, base);
      REQUIRE(move_member(mc.move, MoveSetSpec::ord_moves(base)));
      REQUIRE(weight(mc.move) <= w);
      REQUIRE(position_in_set(mc.resulting, PositionSet::misere));
      for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(mc.move[i] >= 0);
        REQUIRE(mc.resulting[i] == x[i] - mc.move[i]);
      }
      REQUIRE(phi(mc.resulting, base) == target);
      if (subcases) subcases->insert(mc.subcase);
    }
  });
}

bool engine_wins_against_all(const Position& x, const Base& base,
                             const MoveSetSpec& legal,
                             const GrundyTable* unit_values,
                             std::map<Position, bool>& memo) {
  auto it = memo.find(x);
  if (it != memo.end()) return it->second;
  auto bm = best_move(x, base, legal);
  if (!bm || bm->losing) return memo[x] = false;
  bool wins = true;
  for (const auto& reply : options(bm->resulting, PositionSet::misere, legal)) {
    Int value = unit_values ? *unit_values->at(reply) : phi(reply, base);
    if (value == 0 ||
        !engine_wins_against_all(reply, base, legal, unit_values, memo)) {
      wins = false;
      break;
    }
  }
  return memo[x] = wins;
}

}  // namespace

TEST_CASE("solution formula on the paper example") {
  Base b3(3);
  auto [m0, y0] = solution_formula({3, 4}, 2, 0, b3);
  CHECK(m0 == 0);
  CHECK(y0 == Position{8, 4});
  CHECK(phi(y0, b3) == 2);

  auto [m1, y1] = solution_formula({3, 4}, 2, 1, b3);
  CHECK(m1 == 1);
  CHECK(y1 == Position{3, 0});
  CHECK(phi(y1, b3) == 2);
}

TEST_CASE("solution formula on a single heap") {
  // scan for the unique preimage and compare
  Base b2(2);
  Int expected = -1;
  for (Int y = 1; y < 64; ++y)
    if (phi({y}, b2) == 0) {
      expected = y;
      break;
    }
  auto [m, y] = solution_formula({5}, 0, 0, b2);
  (void)m;
  CHECK(y == Position{expected});
  CHECK(phi(y, b2) == 0);
}

TEST_CASE("solution formula sweep") {
  for (const Base& base : {Base(2), Base(3), Base({6}, 2)}) {
    detail::for_each_in_box(std::vector<Int>{5, 5}, [&](const Position& x) {
      if (!position_in_set(x, PositionSet::misere)) return;
      for (Int target = 0; target < 32; ++target)
        for (std::size_t i = 0; i < x.size(); ++i) {
          auto [m, y] = solution_formula(x, target, i, base);
          REQUIRE(mord(y, base) == ExtNat::finite(m));
          REQUIRE(phi(y, base) == target);
          // untouched coordinates stay put
          REQUIRE(y[1 - i] == x[1 - i]);
        }
    });
  }
  // consistency at target = phi(X)
  CHECK(solution_formula({3, 4}, phi({3, 4}, Base(3)), 1, Base(3)).second[0] == 3);
  CHECK_THROWS_AS(solution_formula({0, 0}, 1, 0, Base(2)), std::domain_error);
}

TEST_CASE("lemma u on the paper example") {
  Base b72({7}, 2);
  std::vector<int> x0{4, 4, 3};
  std::vector<int> u = lemma_u(x0, 6, b72, 0, 0);
  check_lemma_u_conditions(x0, u, 6, 7, 0);
  long long deducted = 0;
  for (std::size_t i = 0; i < u.size(); ++i) deducted += x0[i] - u[i];
  CHECK(deducted == 5);
}

TEST_CASE("lemma u keeps everything when the target matches") {
  std::vector<int> x{3, 1, 2};
  CHECK(lemma_u(x, (3 + 1 + 2) % 5, Base(5), 0, 0) == x);
}

TEST_CASE("lemma u exhaustive over small digit vectors") {
  for (int radix = 2; radix <= 7; ++radix) {
    Base base(radix);
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<int> x(k, 0);
      while (true) {
        long long sum = 0;
        for (int v : x) sum += v;
        std::size_t j = static_cast<std::size_t>(
            std::max_element(x.begin(), x.end()) - x.begin());
        int cap = static_cast<int>(std::min<long long>(sum, radix - 1));
        for (int target = 0; target <= cap; ++target)
          check_lemma_u_conditions(x, lemma_u(x, target, base, 0, j), target,
                                   radix, j);
        std::size_t idx = 0;
        while (idx < k && x[idx] == radix - 1) x[idx++] = 0;
        if (idx == k) break;
        ++x[idx];
      }
    }
  }
}

TEST_CASE("lemma u randomized over wide radices") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 20000; ++trial) {
    int radix = std::uniform_int_distribution<int>(2, 50)(rng);
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::vector<int> x(k);
    long long sum = 0;
    for (auto& v : x) {
      v = std::uniform_int_distribution<int>(0, radix - 1)(rng);
      sum += v;
    }
    std::size_t j = static_cast<std::size_t>(
        std::max_element(x.begin(), x.end()) - x.begin());
    long long cap = std::min<long long>(sum, radix - 1);
    int target =
        static_cast<int>(std::uniform_int_distribution<long long>(0, cap)(rng));
    std::vector<int> u = lemma_u(x, target, Base(radix), 0, j);
    check_lemma_u_conditions(x, u, target, radix, j);
  }
}

TEST_CASE("lemma u rejects bad inputs") {
  CHECK_THROWS_AS(lemma_u(std::vector<int>{1, 3}, 0, Base(5), 0, 0),
                  std::domain_error);  // x[0] is not maximal
  CHECK_THROWS_AS(lemma_u(std::vector<int>{1, 1}, 3, Base(5), 0, 0),
                  std::domain_error);  // target above the digit sum
  CHECK_THROWS_AS(lemma_u(std::vector<int>{7}, 0, Base(5), 0, 0),
                  std::domain_error);  // digit out of range
}

TEST_CASE("claim vector on a wraparound case") {
  // X = (2,2), base 2, target 0: the plain lemma returns the digits
  // unchanged, so a full radix gets deducted instead.
  std::vector<int> u = build_u_claim({2, 2}, 0, 1, 1, 0, Base(2));
  CHECK(u == std::vector<int>{0, 0});
}

TEST_CASE("construct move on the paper positions") {
  Base b2(2);
  MoveConstruction mc = construct_move({2, 2}, 0, b2);
  CHECK(phi(mc.resulting, b2) == 0);
  bool known = mc.resulting == Position{0, 1} || mc.resulting == Position{1, 0};
  CHECK(known);

  CHECK_THROWS_AS(construct_move({2, 3}, 0, b2), no_such_move_error);
  CHECK_THROWS_AS(construct_move({2, 2}, 3, b2), no_such_move_error);
  CHECK_THROWS_AS(construct_move({0, 0}, 0, b2), std::domain_error);
  CHECK_THROWS_AS(construct_move({2, 2}, -1, b2), std::domain_error);
}

TEST_CASE("construct move sweeps every branch") {
  std::set<std::string> subcases;
  sweep_construct(Base(2), {9, 9}, &subcases);
  sweep_construct(Base(3), {9, 9}, &subcases);
  CHECK(subcases.count("solution-formula") == 1);
  CHECK(subcases.count("u") == 1);
  CHECK(subcases.count("u-wraparound") == 1);
  CHECK(subcases.count("u-full-digit") == 1);
  CHECK(subcases.count("u-last-pinned") == 1);
  CHECK(subcases.count("u-last-zero") == 1);
}

TEST_CASE("construct move on a three-coordinate box") {
  sweep_construct(Base({6}, 2), {4, 4, 4});
}

TEST_CASE("best move") {
  Base b2(2);
  auto losing = best_move({2, 2}, b2, MoveSetSpec::unit());
  REQUIRE(losing.has_value());
  CHECK(losing->losing);
  CHECK(losing->move == Move{0, 1});  // lexicographically smallest handover

  auto winning = best_move({2, 2}, b2, MoveSetSpec::ord_moves(Base(2)));
  REQUIRE(winning.has_value());
  CHECK_FALSE(winning->losing);
  CHECK(phi(winning->resulting, b2) == 0);

  CHECK_FALSE(best_move({1, 0}, b2, MoveSetSpec::unit()).has_value());
  CHECK_FALSE(best_move({1, 0}, b2, MoveSetSpec::ord_moves(Base(2))).has_value());

  CHECK_THROWS_AS(best_move({2, 2}, b2, MoveSetSpec::ord_moves(Base(2), 1)),
                  std::invalid_argument);  // cap below the minimal weight
  CHECK_THROWS_AS(best_move({0, 0}, b2, MoveSetSpec::unit()), std::domain_error);
}

TEST_CASE("the winning strategy survives every adversary") {
  Base b2(2);

  SECTION("ord moves") {
    MoveSetSpec legal = MoveSetSpec::ord_moves(b2);
    std::map<Position, bool> memo;
    detail::for_each_in_box(std::vector<Int>{6, 6}, [&](const Position& x) {
      if (!position_in_set(x, PositionSet::misere)) return;
      if (phi(x, b2) == 0) return;
      REQUIRE(engine_wins_against_all(x, b2, legal, nullptr, memo));
    });
  }

  SECTION("unit moves") {
    MoveSetSpec legal = MoveSetSpec::unit();
    GrundyTable values =
        grundy_table({6, 6}, PositionSet::misere, MoveSetSpec::unit());
    std::map<Position, bool> memo;
    detail::for_each_in_box(values.bounds(), [&](const Position& x) {
      if (!position_in_set(x, PositionSet::misere)) return;
      if (*values.at(x) == 0) return;
      REQUIRE(engine_wins_against_all(x, b2, legal, &values, memo));
    });
  }
}
