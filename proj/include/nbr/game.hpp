#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbr/rational.hpp"

namespace nbr {

using PlayerIndex = std::size_t;
using StrategyIndex = std::size_t;

// One ordered index set per player.
using StrategySets = std::vector<std::vector<StrategyIndex>>;

// A choice of strategy index per player. Also used for opponent profiles
// (s_{-i}), in which case the entry for the owning player is absent.
struct JointProfile {
  std::vector<StrategyIndex> choices;

  friend auto operator<=>(const JointProfile&, const JointProfile&) = default;
};

// A finite strategic game with a dense payoff tensor. Profiles are laid out
// row-major with player 0 varying slowest; each profile stores one payoff per
// player.
class FiniteGame {
 public:
  FiniteGame(std::vector<std::vector<std::string>> labels,
             std::vector<Rational> payoffs);

  // Builds the tensor by evaluating `fn(profile)`, which must return one
  // payoff per player.
  template <class Fn>
  static FiniteGame from_function(std::vector<std::vector<std::string>> labels,
                                  Fn&& fn);

  std::size_t num_players() const { return labels_.size(); }
  std::size_t num_strategies(PlayerIndex player) const;
  std::size_t num_profiles() const { return num_profiles_; }

  const std::vector<std::string>& labels(PlayerIndex player) const;
  const std::string& label(PlayerIndex player, StrategyIndex s) const;
  std::optional<StrategyIndex> find_label(PlayerIndex player,
                                          std::string_view label) const;

  std::size_t stride(PlayerIndex player) const { return strides_[player]; }
  std::size_t profile_index(const JointProfile& profile) const;
  JointProfile profile_at(std::size_t index) const;

  // Checked lookup; throws InputError on any out-of-range index.
  const Rational& payoff(const JointProfile& profile,
                         PlayerIndex player) const;
  // Unchecked lookup by flat profile index.
  const Rational& payoff_at(std::size_t profile_index,
                            PlayerIndex player) const {
    return payoffs_[profile_index * labels_.size() + player];
  }

  friend bool operator==(const FiniteGame&, const FiniteGame&) = default;

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::size_t> strides_;
  std::size_t num_profiles_ = 0;
  std::vector<Rational> payoffs_;
};

using GamePtr = std::shared_ptr<const FiniteGame>;

// p_player(profile), exactly.
const Rational& payoff(const FiniteGame& game, const JointProfile& profile,
                       PlayerIndex player);

enum class Shape { NonDegenerate, Degenerate, Empty };

// Per-player subsets of a parent game's strategy sets. Payoffs always come
// from the parent. Kept sets are stored sorted and duplicate-free.
class Restriction {
 public:
  Restriction(GamePtr game, StrategySets kept);

  static Restriction full(GamePtr game);
  static Restriction empty(GamePtr game);

  const FiniteGame& game() const { return *game_; }
  const GamePtr& game_ptr() const { return game_; }
  std::size_t num_players() const { return kept_.size(); }

  std::span<const StrategyIndex> kept(PlayerIndex player) const;
  const StrategySets& kept_sets() const { return kept_; }
  bool contains(PlayerIndex player, StrategyIndex s) const;
  bool contains(const JointProfile& profile) const;
  std::size_t size(PlayerIndex player) const { return kept_[player].size(); }
  std::size_t total_size() const;

  Shape shape() const;

  bool subset_of(const Restriction& other) const;
  bool same_parent(const Restriction& other) const {
    return game_ == other.game_;
  }

  // Payoff through the restriction; a profile that leaves the kept sets
  // (including any profile of a degenerate restriction touching an empty
  // component) is an InputError.
  const Rational& payoff(const JointProfile& profile,
                         PlayerIndex player) const;

  // this \ removed, componentwise.
  Restriction without(const StrategySets& removed) const;
  // Componentwise this \ other.
  StrategySets minus(const Restriction& other) const;

  friend bool operator==(const Restriction& a, const Restriction& b) {
    return a.game_ == b.game_ && a.kept_ == b.kept_;
  }

 private:
  GamePtr game_;
  StrategySets kept_;
  std::vector<std::vector<bool>> mask_;
};

Restriction restrict(GamePtr game, StrategySets kept);
// Componentwise intersection / union. Throws InputError on mismatched parents.
Restriction meet(const Restriction& a, const Restriction& b);
Restriction join(const Restriction& a, const Restriction& b);
Shape classify(const Restriction& r);

bool all_empty(const StrategySets& sets);

// An opponent profile of some player inside a restriction, with the flat
// profile offset contributed by the opponents. For the owning player's
// strategy s the full profile index is offset + s * game.stride(player).
struct OpponentProfile {
  JointProfile opponents;
  std::size_t offset = 0;
};

// All of S_{-i} in lexicographic index order (earlier players slowest).
// Empty iff some opponent's kept set is empty; a single empty profile when the
// game has one player.
std::vector<OpponentProfile> opponent_profiles(const Restriction& r,
                                               PlayerIndex player);

// Full profile obtained by inserting the player's own choice.
JointProfile with_own_choice(const JointProfile& opponents, PlayerIndex player,
                             StrategyIndex s);

std::string render_sets(const FiniteGame& game, const StrategySets& sets);

template <class Fn>
FiniteGame FiniteGame::from_function(
    std::vector<std::vector<std::string>> labels, Fn&& fn) {
  const std::size_t n = labels.size();
  std::size_t count = 1;
  for (const auto& l : labels) count *= l.size();
  std::vector<Rational> payoffs;
  payoffs.reserve(count * n);
  JointProfile profile{std::vector<StrategyIndex>(n, 0)};
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rest = k;
    for (std::size_t p = n; p-- > 0;) {
      profile.choices[p] = rest % labels[p].size();
      rest /= labels[p].size();
    }
    std::vector<Rational> values = fn(static_cast<const JointProfile&>(profile));
    for (auto& v : values) payoffs.push_back(std::move(v));
  }
  return FiniteGame(std::move(labels), std::move(payoffs));
}

}  // namespace nbr
