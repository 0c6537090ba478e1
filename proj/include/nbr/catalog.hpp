#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nbr/game.hpp"

namespace nbr {

struct CatalogEntry {
  std::string name;
  GamePtr game;
  std::string provenance;
  // Non-empty whenever the original game has infinite strategy sets.
  std::string deviation_note;
};

// Rows T, M, B against columns L, R; only the row player has non-zero
// payoffs.
FiniteGame section5_game();

// Prices 1..grid_max, demand 100 - p at the lower price, ties split.
FiniteGame bertrand_discrete(int grid_max);

// Locations 1..grid_max on a market of mass 100, tie value 50.
FiniteGame hotelling_discrete(int grid_max);

// Two players choose 0..N and are paid their own choice.
FiniteGame naturals_truncated(int n);

// Three players over 0..N: p1 = k if k = l + 1, p2 = l if l = k, p3 = 0.
FiniteGame three_player_sequence_truncated(int n);

// Integer payoffs uniform in [-payoff_bound, payoff_bound].
FiniteGame random_game(const std::vector<std::size_t>& sizes,
                       int payoff_bound, std::uint64_t seed);

// section5, bertrand<N>, hotelling<N>, naturals<N>, sequence<N>.
CatalogEntry catalog_entry(const std::string& name);

// The default-size entries, in listing order.
std::vector<CatalogEntry> catalog_entries();

// The seeded corpus shared by the verification campaigns: `two_player`
// games with sizes 1..5 and `three_player` games with sizes 1..3, payoffs
// in [-5, 5]. Names are random-<seed>.
std::vector<CatalogEntry> random_corpus(std::size_t two_player,
                                        std::size_t three_player,
                                        std::uint64_t first_seed = 1);

// Random games from the CLI's --random option. Player count is fixed and
// each strategy set size is drawn from 1..max_size.
std::vector<CatalogEntry> random_games(std::size_t count, std::size_t players,
                                       std::size_t max_size,
                                       std::uint64_t first_seed);

}  // namespace nbr
