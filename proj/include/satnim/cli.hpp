#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "satnim/json_io.hpp"
#include "satnim/satnim.hpp"

// Command-line front end. run_cli is stream-parameterized so the whole tool
// can be exercised in-process by the tests.

namespace satnim::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;
constexpr int kNoFormula = 4;
constexpr int kNoSuchMove = 5;

struct GameSpec {
  std::string name;
  PositionSet pset = PositionSet::all;
  MoveSetSpec::Kind move_kind = MoveSetSpec::Kind::unit;
  bool needs_base = false;
  bool constant_base_only = false;
};

inline GameSpec parse_game(const std::string& name) {
  if (name == "nim") return {name, PositionSet::all, MoveSetSpec::Kind::unit};
  if (name == "misere")
    return {name, PositionSet::misere, MoveSetSpec::Kind::unit};
  if (name == "welter")
    return {name, PositionSet::welter, MoveSetSpec::Kind::unit};
  if (name == "nim-sat")
    return {name, PositionSet::all, MoveSetSpec::Kind::ord, true};
  if (name == "misere-sat")
    return {name, PositionSet::misere, MoveSetSpec::Kind::ord, true};
  if (name == "welter-sat")
    return {name, PositionSet::welter, MoveSetSpec::Kind::ord, true, true};
  throw std::invalid_argument("unknown game '" + name + "'");
}

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

inline Int parse_int(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty integer");
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + tok + "'");
  }
}

inline Position parse_position(const std::string& text) {
  Position x;
  for (const auto& tok : split(text, ',')) {
    Int v = parse_int(tok);
    if (v < 0) throw std::invalid_argument("negative coordinate");
    x.push_back(v);
  }
  return x;
}

inline std::string join(std::span<const Int> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(values[i]);
  }
  return s;
}

}  // namespace detail

struct GameInstance {
  GameSpec spec;
  std::optional<Base> base;  // present for sat games (or when given)

  const Base& base_ref() const {
    if (!base) throw std::invalid_argument("game needs a base");
    return *base;
  }

  MoveSetSpec move_set(std::optional<int> max_weight = std::nullopt) const {
    if (spec.move_kind == MoveSetSpec::Kind::unit) {
      MoveSetSpec m = MoveSetSpec::unit();
      m.max_weight = max_weight;
      return m;
    }
    return MoveSetSpec::ord_moves(base_ref(), max_weight);
  }

  /// Closed-form value; nullopt when none exists (misere Nim under unit
  /// moves).
  std::optional<Int> formula_value(const Position& x) const {
    if (spec.name == "nim") return sigma(x, Base(2));
    if (spec.name == "nim-sat") return sigma(x, base_ref());
    if (spec.name == "welter") return welter_sg(x, 2);
    if (spec.name == "welter-sat") return welter_sg(x, base_ref().radix(0));
    if (spec.name == "misere-sat") return phi(x, base_ref());
    return std::nullopt;
  }

  Int value(const Position& x) const {
    if (auto v = formula_value(x)) return *v;
    return grundy_bruteforce(x, spec.pset, move_set());
  }
};

inline GameInstance make_instance(const GameSpec& spec,
                                  const std::optional<std::string>& base_text) {
  GameInstance g{spec, std::nullopt};
  if (base_text) g.base = Base::parse(*base_text);
  if (spec.needs_base && !g.base)
    throw std::invalid_argument("game '" + spec.name + "' requires --base");
  if (spec.constant_base_only && g.base && g.base->head_size() != 0)
    throw std::invalid_argument("game '" + spec.name +
                                "' requires a constant base");
  return g;
}

/// Engine move for any game: winning option if the value is nonzero,
/// otherwise a deterministic losing handover. nullopt at terminal positions.
inline std::optional<BestMove> engine_move(const GameInstance& g,
                                           const Position& x) {
  if (g.spec.pset == PositionSet::misere)
    return best_move(x, g.base ? *g.base : Base(2), g.move_set());
  auto opts = options(x, g.spec.pset, g.move_set());
  if (opts.empty()) return std::nullopt;
  auto to_move = [&](const Position& y) {
    Move c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] - y[i];
    return c;
  };
  if (g.value(x) != 0)
    for (const auto& y : opts)
      if (g.value(y) == 0) return BestMove{to_move(y), y, false};
  return BestMove{to_move(opts.front()), opts.front(), true};
}

namespace detail {

struct CommandError {
  int code;
  std::string message;
};

inline int fail(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << "\n";
  return code;
}

inline int cmd_digits(const std::string& base_text, Int n, std::ostream& out,
                      std::ostream& err) {
  Base base = Base::parse(base_text);
  if (n < 0) return fail(err, kUsage, "n must be nonnegative");
  out << to_digits(n, base).to_string() << " ord=" << ord(n, base).to_string()
      << "\n";
  return kOk;
}

inline int cmd_grundy(const GameInstance& g, const Position& x,
                      const std::string& method, bool show_digits,
                      std::ostream& out, std::ostream& err) {
  if (!position_in_set(x, g.spec.pset))
    return fail(err, kDomain, "position outside the game's position set");
  Int value;
  if (method == "brute") {
    value = grundy_bruteforce(x, g.spec.pset, g.move_set());
  } else {
    auto v = g.formula_value(x);
    if (!v) {
      if (method == "formula")
        return fail(err, kNoFormula,
                    "no closed form for misere Nim under unit moves");
      value = grundy_bruteforce(x, g.spec.pset, g.move_set());
    } else {
      value = *v;
    }
  }
  out << value;
  if (show_digits) {
    Base display = g.base ? *g.base : Base(2);
    out << " " << to_digits(value, display).to_string();
  }
  out << "\n";
  return kOk;
}

inline int cmd_table(const GameInstance& g, const std::vector<Int>& bounds,
                     const std::string& format, std::optional<int> max_weight,
                     std::ostream& out, std::ostream& err) {
  for (Int b : bounds)
    if (b <= 0) return fail(err, kUsage, "bounds must be positive");
  GrundyTable table = grundy_table(bounds, g.spec.pset, g.move_set(max_weight));
  if (format == "tsv") {
    if (bounds.size() > 2)
      return fail(err, kUsage, "tsv output supports only k <= 2");
    out << table_to_tsv(table);
  } else {
    std::optional<std::string> base_text;
    if (g.base) base_text = g.base->to_string();
    out << table_to_json(table, g.spec.name, base_text).dump() << "\n";
  }
  return kOk;
}

inline void saturation_diff(const GrundyTable& got, const GrundyTable& want,
                            nlohmann::json& violations, bool& truncated) {
  satnim::detail::for_each_in_box(got.bounds(), [&](const Position& x) {
    auto a = got.at(x);
    auto b = want.at(x);
    if (a == b) return;
    if (violations.size() >= 100) {
      truncated = true;
      return;
    }
    violations.push_back(
        {{"x", x},
         {"detail",
          {{"got", a ? nlohmann::json(*a) : nlohmann::json(nullptr)},
           {"want", b ? nlohmann::json(*b) : nlohmann::json(nullptr)}}}});
  });
}

inline int cmd_verify(const Base& base, int k, std::vector<Int> bounds,
                      const std::string& checks_text,
                      std::optional<int> max_weight, const std::string& game,
                      std::ostream& out, std::ostream& err) {
  if (k < 1) return fail(err, kUsage, "k must be >= 1");
  if (bounds.size() == 1) bounds.assign(static_cast<std::size_t>(k), bounds[0]);
  if (bounds.size() != static_cast<std::size_t>(k))
    return fail(err, kUsage, "bounds arity does not match k");
  for (Int b : bounds)
    if (b <= 0) return fail(err, kUsage, "bounds must be positive");

  bool all_pass = true;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& check : split(checks_text, ',')) {
    if (check == "sg1") {
      SaturationReport rep = check_sg1(bounds, base, MoveSetSpec::ord_moves(base));
      all_pass = all_pass && rep.verdict;
      reports.push_back(report_to_json(rep, "sg1", base));
    } else if (check == "sg2") {
      int w = max_weight ? *max_weight : weight_formula(base, k).w;
      SaturationReport rep =
          check_sg2(bounds, base, MoveSetSpec::ord_moves(base, w));
      all_pass = all_pass && rep.verdict;
      reports.push_back(report_to_json(rep, "sg2", base));
    } else if (check == "saturation") {
      GameInstance g = make_instance(parse_game(game), base.to_string());
      GrundyTable got = grundy_table(bounds, g.spec.pset, g.move_set());
      GrundyTable want =
          grundy_table(bounds, g.spec.pset, MoveSetSpec::ord_moves(base));
      bool verdict = got == want;
      all_pass = all_pass && verdict;
      nlohmann::json violations = nlohmann::json::array();
      bool truncated = false;
      saturation_diff(got, want, violations, truncated);
      reports.push_back(nlohmann::json{{"check", "saturation"},
                                       {"game", g.spec.name},
                                       {"base", base.to_string()},
                                       {"bounds", bounds},
                                       {"verdict", verdict},
                                       {"violations", violations},
                                       {"truncated", truncated}});
    } else {
      return fail(err, kUsage, "unknown check '" + check + "'");
    }
  }
  out << reports.dump() << "\n";
  return all_pass ? kOk : kCheckFailed;
}

inline int cmd_move(const Base& base, const Position& x, Int target,
                    std::ostream& out, std::ostream& err) {
  MoveConstruction mc = construct_move(x, target, base);
  out << move_to_json(mc, base).dump() << "\n";
  return kOk;
}

inline int cmd_weight(const Base& base, int k, std::ostream& out,
                      std::ostream& err) {
  if (k < 1) return fail(err, kUsage, "k must be >= 1");
  out << "w=" << weight_formula(base, k).w << "\n";
  return kOk;
}

inline int cmd_play(const GameInstance& g, Position x, bool engine_first,
                    std::istream& in, std::ostream& out, std::ostream& err) {
  if (!position_in_set(x, g.spec.pset))
    return fail(err, kDomain, "position outside the game's position set");
  bool unit_moves = g.spec.move_kind == MoveSetSpec::Kind::unit;
  out << (unit_moves ? "enter moves as \"i amount\"\n"
                     : "enter moves as a comma-separated vector\n");
  bool humans_turn = !engine_first;
  MoveSetSpec mset = g.move_set();
  while (true) {
    out << "position: " << detail::join(x) << "\n";
    bool terminal = options(x, g.spec.pset, mset).empty();
    if (humans_turn) {
      if (terminal) {
        out << "you have no move; you lose.\n";
        return kOk;
      }
      while (true) {
        out << "move> ";
        std::string line;
        if (!std::getline(in, line))
          return fail(err, kUsage, "input ended mid-game");
        try {
          Move c;
          if (unit_moves) {
            std::istringstream is(line);
            long long i = -1, amount = 0;
            if (!(is >> i >> amount) || !(is >> std::ws).eof())
              throw std::invalid_argument("expected \"i amount\"");
            if (i < 0 || static_cast<std::size_t>(i) >= x.size() || amount <= 0)
              throw std::invalid_argument("bad move");
            c.assign(x.size(), 0);
            c[static_cast<std::size_t>(i)] = amount;
          } else {
            c = parse_position(line);
            if (c.size() != x.size()) throw std::invalid_argument("bad arity");
          }
          Position y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = x[i] - c[i];
            if (y[i] < 0) throw std::invalid_argument("coordinate underflow");
          }
          if (!position_in_set(y, g.spec.pset) || !move_member(c, mset))
            throw std::invalid_argument("not a legal move");
          x = std::move(y);
          break;
        } catch (const std::exception&) {
          out << "illegal move, try again\n";
        }
      }
      humans_turn = false;
    } else {
      if (terminal) {
        out << "engine has no move; you win!\n";
        return kOk;
      }
      auto bm = engine_move(g, x);
      out << "engine plays: " << detail::join(bm->move) << "\n";
      x = bm->resulting;
      humans_turn = true;
    }
  }
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::istream& in,
                   std::ostream& out, std::ostream& err) {
  CLI::App app{"solvers for subtraction games in mixed-radix systems",
               "satnim"};
  app.require_subcommand(1);

  std::string base_text;
  std::optional<std::string> opt_base;
  std::string game = "misere";
  std::string position_text;
  std::string bounds_text;
  std::string format = "tsv";
  std::string method = "auto";
  std::string checks = "sg1,sg2";
  std::optional<int> max_weight;
  long long n = 0;
  long long target = 0;
  int k = 0;
  bool show_digits = false;
  bool engine_first = false;

  auto* digits_cmd =
      app.add_subcommand("digits", "digit expansion and ord of an integer");
  digits_cmd->add_option("--base", base_text, "mixed-radix base, e.g. 3,2,5,4")
      ->required();
  digits_cmd->add_option("n", n, "integer to expand")->required();

  auto* grundy_cmd =
      app.add_subcommand("grundy", "Sprague-Grundy value of a position");
  grundy_cmd->add_option("--game", game, "game name")->required();
  grundy_cmd->add_option("--base", opt_base, "mixed-radix base");
  grundy_cmd->add_option("--position", position_text, "comma-separated position")
      ->required();
  grundy_cmd->add_option("--method", method, "formula|brute (default: auto)");
  grundy_cmd->add_flag("--digits", show_digits, "also print the digit expansion");

  auto* table_cmd =
      app.add_subcommand("table", "Grundy values over a box of positions");
  table_cmd->add_option("--game", game, "game name")->required();
  table_cmd->add_option("--base", opt_base, "mixed-radix base");
  table_cmd->add_option("--bounds", bounds_text, "exclusive bounds, e.g. 9,9")
      ->required();
  table_cmd->add_option("--format", format, "tsv|json");
  table_cmd->add_option("--max-weight", max_weight, "cap move weight");

  auto* verify_cmd = app.add_subcommand(
      "verify", "check SG1/SG2 conditions and saturation over a box");
  verify_cmd->add_option("--base", base_text, "mixed-radix base")->required();
  verify_cmd->add_option("--k", k, "arity")->required();
  verify_cmd->add_option("--bounds", bounds_text, "box bounds")->required();
  verify_cmd->add_option("--checks", checks, "subset of sg1,sg2,saturation");
  verify_cmd->add_option("--max-weight", max_weight, "weight cap for sg2");
  verify_cmd->add_option("--game", game, "game for the saturation check");

  auto* move_cmd = app.add_subcommand(
      "move", "construct an ord move reaching a target phi value");
  move_cmd->add_option("--base", base_text, "mixed-radix base")->required();
  move_cmd->add_option("--position", position_text, "comma-separated position")
      ->required();
  move_cmd->add_option("--target", target, "target phi value")->required();

  auto* weight_cmd =
      app.add_subcommand("weight", "minimal move weight realizing phi");
  weight_cmd->add_option("--base", base_text, "mixed-radix base")->required();
  weight_cmd->add_option("--k", k, "arity")->required();

  auto* play_cmd = app.add_subcommand("play", "interactive game against the engine");
  play_cmd->add_option("--game", game, "game name")->required();
  play_cmd->add_option("--base", opt_base, "mixed-radix base");
  play_cmd->add_option("--position", position_text, "starting position")
      ->required();
  play_cmd->add_flag("--engine-first", engine_first, "engine moves first");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (digits_cmd->parsed())
      return detail::cmd_digits(base_text, n, out, err);
    if (grundy_cmd->parsed()) {
      GameInstance g = make_instance(parse_game(game), opt_base);
      if (method != "auto" && method != "formula" && method != "brute")
        return detail::fail(err, kUsage, "unknown method '" + method + "'");
      return detail::cmd_grundy(g, detail::parse_position(position_text),
                                method, show_digits, out, err);
    }
    if (table_cmd->parsed()) {
      GameInstance g = make_instance(parse_game(game), opt_base);
      if (format != "tsv" && format != "json")
        return detail::fail(err, kUsage, "unknown format '" + format + "'");
      std::vector<Int> bounds;
      for (const auto& tok : detail::split(bounds_text, ','))
        bounds.push_back(detail::parse_int(tok));
      return detail::cmd_table(g, bounds, format, max_weight, out, err);
    }
    if (verify_cmd->parsed()) {
      Base base = Base::parse(base_text);
      std::vector<Int> bounds;
      for (const auto& tok : detail::split(bounds_text, ','))
        bounds.push_back(detail::parse_int(tok));
      return detail::cmd_verify(base, k, std::move(bounds), checks, max_weight,
                                game, out, err);
    }
    if (move_cmd->parsed()) {
      Base base = Base::parse(base_text);
      Position x = detail::parse_position(position_text);
      if (target < 0) return detail::fail(err, kUsage, "target must be >= 0");
      return detail::cmd_move(base, x, target, out, err);
    }
    if (weight_cmd->parsed())
      return detail::cmd_weight(Base::parse(base_text), k, out, err);
    if (play_cmd->parsed()) {
      GameInstance g = make_instance(parse_game(game), opt_base);
      return detail::cmd_play(g, detail::parse_position(position_text),
                              engine_first, in, out, err);
    }
  } catch (const no_such_move_error&) {
    return detail::fail(err, kNoSuchMove, "no such option (SG1)");
  } catch (const std::domain_error& e) {
    return detail::fail(err, kDomain, e.what());
  } catch (const std::invalid_argument& e) {
    return detail::fail(err, kUsage, e.what());
  } catch (const std::overflow_error& e) {
    return detail::fail(err, kUsage, e.what());
  }
  return kUsage;
}

}  // namespace satnim::cli
