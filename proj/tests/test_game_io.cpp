#include "doctest.h"

#include <memory>

#include "nbr/catalog.hpp"
#include "nbr/errors.hpp"
#include "nbr/game_io.hpp"

using namespace nbr;

namespace {

const char* kSection5 = R"(# the three-by-two game
players 2
strategies 1: T M B
strategies 2: L R
payoff T L : 2 0
payoff T R : 2 0
payoff M L : 0 0
payoff M R : 1 0
payoff B L : 1 0
payoff B R : 0 0
)";

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_game(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse the text format") {
  const FiniteGame g = parse_game(kSection5);
  CHECK(g == section5_game());
  CHECK(g.label(0, 2) == "B");
  CHECK(*g.find_label(1, "R") == 1);
}

TEST_CASE("rationals are canonicalized on read") {
  const FiniteGame g = parse_game(
      "players 1\nstrategies 1: a b\npayoff a : 4/6\npayoff b : -10/5 # c\n");
  CHECK(g.payoff(JointProfile{{0}}, 0) == Rational(2, 3));
  CHECK(g.payoff(JointProfile{{1}}, 0) == Rational(-2));
  CHECK(render_game(g).find("payoff a : 2/3") != std::string::npos);
}

TEST_CASE("parse errors name the line") {
  const std::string head = "players 2\nstrategies 1: T B\nstrategies 2: L\n";
  CHECK(parse_error_line(head + "payoff T L : 1 1\npayoff T L : 1 1\n"
                                "payoff B L : 0 0\n") == 5);
  CHECK(parse_error_line(head + "payoff T L : 1 1\n") != 0);  // missing B L
  CHECK(parse_error_line(head + "payoff T X : 1 1\npayoff B L : 0 0\n") == 4);
  CHECK(parse_error_line(head + "payoff T L : 1/0 1\npayoff B L : 0 0\n") == 4);
  CHECK(parse_error_line(head + "payoff T L : 1.5 1\npayoff B L : 0 0\n") == 4);
  CHECK(parse_error_line(head + "payoff T L : 1\npayoff B L : 0 0\n") == 4);
  CHECK(parse_error_line("players 2\nstrategies 2: T\nstrategies 1: L\n") == 2);
  CHECK(parse_error_line("players 1\nstrategies 1: T T\n") == 2);
  CHECK(parse_error_line("players 1\nstrategies 1: T,U\n") == 2);
  CHECK(parse_error_line("players 0\n") == 1);
  CHECK(parse_error_line("strategies 1: T\n") == 1);
  CHECK(parse_error_line("players 1\nstrategies 1:\n") == 2);
}

TEST_CASE("catalog games round-trip bit-exactly") {
  for (const auto& e : catalog_entries()) {
    const std::string text = render_game(*e.game, {e.name, e.deviation_note});
    const FiniteGame back = parse_game(text);
    CHECK(back == *e.game);
    CHECK(render_game(back) == render_game(*e.game));
    CHECK(game_hash(back) == game_hash(*e.game));
  }
  const FiniteGame r = random_game({3, 2, 2}, 5, 77);
  CHECK(parse_game(render_game(r)) == r);
}

TEST_CASE("game hash") {
  const std::string h = game_hash(section5_game());
  CHECK(h.size() == 16);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(game_hash(section5_game()) == h);
  CHECK(game_hash(bertrand_discrete(10)) != h);
  // Comments do not enter the hash.
  CHECK(game_hash(parse_game(kSection5)) == h);
}

TEST_CASE("restriction literals") {
  const GamePtr h = std::make_shared<const FiniteGame>(section5_game());
  const Restriction g = parse_restriction(h, "M,B;L,R");
  CHECK(g.kept_sets() == StrategySets{{1, 2}, {0, 1}});
  CHECK(render_restriction_literal(g) == "M,B;L,R");
  CHECK(parse_restriction(h, "T;").kept_sets() == StrategySets{{0}, {}});
  CHECK(parse_restriction(h, " B , M ; R ").kept_sets() ==
        StrategySets{{1, 2}, {1}});
  CHECK_THROWS_AS(parse_restriction(h, "T"), InputError);
  CHECK_THROWS_AS(parse_restriction(h, "X;L"), InputError);
  CHECK_THROWS_AS(parse_restriction(h, "T;L;R"), InputError);
}
