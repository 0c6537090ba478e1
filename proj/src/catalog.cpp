#include "nbr/catalog.hpp"

#include <charconv>
#include <memory>

#include "nbr/errors.hpp"
#include "nbr/rng.hpp"

namespace nbr {

namespace {

std::vector<std::string> numbered(int lo, int hi) {
  std::vector<std::string> out;
  for (int v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  return out;
}

int value_of(int lo, StrategyIndex s) { return lo + static_cast<int>(s); }

Rational bertrand_payoff(int own, int other) {
  const Rational revenue(static_cast<std::int64_t>(own) * (100 - own));
  if (own < other) return revenue;
  if (own == other) return revenue / Rational(2);
  return Rational(0);
}

Rational hotelling_payoff(int own, int other) {
  if (own < other) return Rational(own) + Rational(other - own, 2);
  if (own > other) return Rational(100 - own) + Rational(own - other, 2);
  return Rational(50);
}

const std::string kBertrandNote =
    "The original price range is the real interval (0,100]; here prices are "
    "the integers 1..N. The continuous game reduces to the empty game under "
    "fast ~> and gets stuck at ({50},{50}) under fast ->. On the integer "
    "grid the undercutting cascade stops at price 1, a Nash point, and every "
    "relation reaches ({1},{1}).";
const std::string kHotellingNote =
    "The original locations form the open interval (0,100); here they are "
    "the integers 1..N. For odd N the discrete outcome is the midpoint, in "
    "agreement with the continuous reduction to ({50},{50}) when N = 99.";
const std::string kNaturalsNote =
    "The original strategy sets are all natural numbers and no strategy is a "
    "best response, so the game reduces to the empty game. Truncating at N "
    "makes N the unique best response, and the fast outcome is ({N},{N}).";
const std::string kSequenceNote =
    "The original strategy sets are all natural numbers and the fast "
    "reduction needs omega+1 rounds to reach the empty game. With the cap N, "
    "l = N leaves player 1 indifferent (k = N + 1 is missing) and k = 0 "
    "leaves player 2 indifferent, so every strategy is a best response to "
    "some profile and no strategy is eliminated.";

int parse_suffix(const std::string& name, std::size_t prefix) {
  int value = 0;
  const char* first = name.data() + prefix;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (first == last || ec != std::errc() || ptr != last) {
    throw InputError("unknown catalog game '" + name + "'");
  }
  return value;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

FiniteGame section5_game() {
  const Rational table[3][2] = {{2, 2}, {0, 1}, {1, 0}};
  return FiniteGame::from_function(
      {{"T", "M", "B"}, {"L", "R"}}, [&](const JointProfile& p) {
        return std::vector<Rational>{table[p.choices[0]][p.choices[1]],
                                     Rational(0)};
      });
}

FiniteGame bertrand_discrete(int grid_max) {
  if (grid_max < 2) throw InputError("bertrand grid must be at least 2");
  return FiniteGame::from_function(
      {numbered(1, grid_max), numbered(1, grid_max)},
      [](const JointProfile& p) {
        const int a = value_of(1, p.choices[0]);
        const int b = value_of(1, p.choices[1]);
        return std::vector<Rational>{bertrand_payoff(a, b),
                                     bertrand_payoff(b, a)};
      });
}

FiniteGame hotelling_discrete(int grid_max) {
  if (grid_max < 2 || grid_max > 99) {
    throw InputError("hotelling grid must lie in 2..99");
  }
  return FiniteGame::from_function(
      {numbered(1, grid_max), numbered(1, grid_max)},
      [](const JointProfile& p) {
        const int a = value_of(1, p.choices[0]);
        const int b = value_of(1, p.choices[1]);
        return std::vector<Rational>{hotelling_payoff(a, b),
                                     hotelling_payoff(b, a)};
      });
}

FiniteGame naturals_truncated(int n) {
  if (n < 1) throw InputError("naturals cap must be at least 1");
  return FiniteGame::from_function(
      {numbered(0, n), numbered(0, n)}, [](const JointProfile& p) {
        return std::vector<Rational>{Rational(value_of(0, p.choices[0])),
                                     Rational(value_of(0, p.choices[1]))};
      });
}

FiniteGame three_player_sequence_truncated(int n) {
  if (n < 2) throw InputError("sequence cap must be at least 2");
  return FiniteGame::from_function(
      {numbered(0, n), numbered(0, n), numbered(0, n)},
      [](const JointProfile& p) {
        const int k = value_of(0, p.choices[0]);
        const int l = value_of(0, p.choices[1]);
        return std::vector<Rational>{Rational(k == l + 1 ? k : 0),
                                     Rational(k == l ? k : 0), Rational(0)};
      });
}

FiniteGame random_game(const std::vector<std::size_t>& sizes,
                       int payoff_bound, std::uint64_t seed) {
  if (sizes.empty()) throw InputError("a game needs at least one player");
  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw InputError("strategy sets must be non-empty");
    std::vector<std::string> l;
    for (std::size_t s = 0; s < sizes[i]; ++s) {
      l.push_back("s" + std::to_string(s + 1));
    }
    labels.push_back(std::move(l));
  }
  Rng rng(seed);
  return FiniteGame::from_function(std::move(labels),
                                   [&](const JointProfile& p) {
                                     std::vector<Rational> v;
                                     for (std::size_t i = 0;
                                          i < p.choices.size(); ++i) {
                                       v.emplace_back(rng.between(
                                           -payoff_bound, payoff_bound));
                                     }
                                     return v;
                                   });
}

CatalogEntry catalog_entry(const std::string& name) {
  const auto share = [](FiniteGame g) {
    return std::make_shared<const FiniteGame>(std::move(g));
  };
  if (name == "section5") {
    return {name, share(section5_game()),
            "three-by-two game separating ~> from -> (row player payoffs "
            "only)",
            ""};
  }
  if (starts_with(name, "bertrand")) {
    return {name, share(bertrand_discrete(parse_suffix(name, 8))),
            "Bertrand price competition, demand 100 - p, split ties",
            kBertrandNote};
  }
  if (starts_with(name, "hotelling")) {
    return {name, share(hotelling_discrete(parse_suffix(name, 9))),
            "Hotelling location game on a market of mass 100",
            kHotellingNote};
  }
  if (starts_with(name, "naturals")) {
    return {name, share(naturals_truncated(parse_suffix(name, 8))),
            "two players paid the number they select", kNaturalsNote};
  }
  if (starts_with(name, "sequence")) {
    return {name,
            share(three_player_sequence_truncated(parse_suffix(name, 8))),
            "three-player successor game needing omega+1 fast rounds",
            kSequenceNote};
  }
  throw InputError("unknown catalog game '" + name + "'");
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> out;
  for (const char* name :
       {"section5", "bertrand100", "hotelling99", "naturals5", "sequence6"}) {
    out.push_back(catalog_entry(name));
  }
  return out;
}

std::vector<CatalogEntry> random_corpus(std::size_t two_player,
                                        std::size_t three_player,
                                        std::uint64_t first_seed) {
  std::vector<CatalogEntry> out =
      random_games(two_player, 2, 5, first_seed);
  std::vector<CatalogEntry> more =
      random_games(three_player, 3, 3, first_seed + two_player);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<CatalogEntry> random_games(std::size_t count, std::size_t players,
                                       std::size_t max_size,
                                       std::uint64_t first_seed) {
  if (players < 1 || max_size < 1) {
    throw InputError("random games need players >= 1 and max size >= 1");
  }
  std::vector<CatalogEntry> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t seed = first_seed + k;
    Rng rng(seed ^ 0x5EED5EED5EED5EEDULL);
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < players; ++i) {
      sizes.push_back(1 + rng.below(max_size));
    }
    out.push_back({"random-" + std::to_string(seed),
                   std::make_shared<const FiniteGame>(
                       random_game(sizes, 5, seed)),
                   "seeded random game", ""});
  }
  return out;
}

}  // namespace nbr
