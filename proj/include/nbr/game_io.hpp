#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nbr/game.hpp"

namespace nbr {

// Game text format:
//
//   players <n>
//   strategies 1: <label> <label> ...
//   ...
//   strategies <n>: ...
//   payoff <label_1> ... <label_n> : <q_1> ... <q_n>
//
// One payoff line per joint profile, each exactly once. Rationals are
// integers or a/b with b > 0 and are canonicalized on read. '#' starts a
// comment. Throws ParseError.
FiniteGame parse_game(std::string_view text);

// Canonical rendering; comment lines are emitted first, each prefixed "# ".
// Profiles appear in tensor order. parse_game(render_game(g)) == g.
std::string render_game(const FiniteGame& game,
                        const std::vector<std::string>& comments = {});

// Restriction literal: per-player comma-separated label lists joined by ';',
// e.g. "T;L,R". An empty list denotes an empty kept set. Throws InputError.
Restriction parse_restriction(const GamePtr& game, std::string_view literal);
std::string render_restriction_literal(const Restriction& r);

// 64-bit FNV-1a of the canonical rendering, as 16 hex digits.
std::string game_hash(const FiniteGame& game);

}  // namespace nbr
