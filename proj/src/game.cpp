#include "nbr/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nbr/errors.hpp"

namespace nbr {

FiniteGame::FiniteGame(std::vector<std::vector<std::string>> labels,
                       std::vector<Rational> payoffs)
    : labels_(std::move(labels)), payoffs_(std::move(payoffs)) {
  if (labels_.empty()) throw InputError("a game needs at least one player");
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    if (labels_[p].empty()) {
      throw InputError("player " + std::to_string(p + 1) +
                       " has no strategies");
    }
    std::set<std::string_view> seen;
    for (const auto& l : labels_[p]) {
      if (l.empty()) throw InputError("empty strategy label");
      if (!seen.insert(l).second) {
        throw InputError("duplicate strategy label '" + l + "' for player " +
                         std::to_string(p + 1));
      }
    }
  }
  const std::size_t n = labels_.size();
  strides_.assign(n, 1);
  for (std::size_t p = n - 1; p-- > 0;) {
    strides_[p] = strides_[p + 1] * labels_[p + 1].size();
  }
  num_profiles_ = strides_[0] * labels_[0].size();
  if (payoffs_.size() != num_profiles_ * n) {
    throw InputError("payoff tensor has " + std::to_string(payoffs_.size()) +
                     " entries, expected " +
                     std::to_string(num_profiles_ * n));
  }
}

std::size_t FiniteGame::num_strategies(PlayerIndex player) const {
  if (player >= labels_.size()) throw InputError("player index out of range");
  return labels_[player].size();
}

const std::vector<std::string>& FiniteGame::labels(PlayerIndex player) const {
  if (player >= labels_.size()) throw InputError("player index out of range");
  return labels_[player];
}

const std::string& FiniteGame::label(PlayerIndex player,
                                     StrategyIndex s) const {
  const auto& l = labels(player);
  if (s >= l.size()) throw InputError("strategy index out of range");
  return l[s];
}

std::optional<StrategyIndex> FiniteGame::find_label(
    PlayerIndex player, std::string_view label) const {
  const auto& l = labels(player);
  for (std::size_t s = 0; s < l.size(); ++s) {
    if (l[s] == label) return s;
  }
  return std::nullopt;
}

std::size_t FiniteGame::profile_index(const JointProfile& profile) const {
  if (profile.choices.size() != labels_.size()) {
    throw InputError("profile has " + std::to_string(profile.choices.size()) +
                     " entries, game has " + std::to_string(labels_.size()) +
                     " players");
  }
  std::size_t index = 0;
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    if (profile.choices[p] >= labels_[p].size()) {
      throw InputError("strategy index out of range for player " +
                       std::to_string(p + 1));
    }
    index += profile.choices[p] * strides_[p];
  }
  return index;
}

JointProfile FiniteGame::profile_at(std::size_t index) const {
  if (index >= num_profiles_) throw InputError("profile index out of range");
  JointProfile profile{std::vector<StrategyIndex>(labels_.size())};
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    profile.choices[p] = index / strides_[p];
    index %= strides_[p];
  }
  return profile;
}

const Rational& FiniteGame::payoff(const JointProfile& profile,
                                   PlayerIndex player) const {
  if (player >= labels_.size()) throw InputError("player index out of range");
  return payoff_at(profile_index(profile), player);
}

const Rational& payoff(const FiniteGame& game, const JointProfile& profile,
                       PlayerIndex player) {
  return game.payoff(profile, player);
}

Restriction::Restriction(GamePtr game, StrategySets kept)
    : game_(std::move(game)), kept_(std::move(kept)) {
  if (!game_) throw InputError("restriction without a parent game");
  const std::size_t n = game_->num_players();
  if (kept_.size() != n) {
    throw InputError("restriction has " + std::to_string(kept_.size()) +
                     " strategy sets, game has " + std::to_string(n) +
                     " players");
  }
  mask_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t m = game_->num_strategies(p);
    mask_[p].assign(m, false);
    for (StrategyIndex s : kept_[p]) {
      if (s >= m) {
        throw InputError("strategy index " + std::to_string(s) +
                         " out of range for player " + std::to_string(p + 1));
      }
      mask_[p][s] = true;
    }
    kept_[p].clear();
    for (StrategyIndex s = 0; s < m; ++s) {
      if (mask_[p][s]) kept_[p].push_back(s);
    }
  }
}

Restriction Restriction::full(GamePtr game) {
  if (!game) throw InputError("restriction without a parent game");
  StrategySets kept(game->num_players());
  for (std::size_t p = 0; p < kept.size(); ++p) {
    for (StrategyIndex s = 0; s < game->num_strategies(p); ++s) {
      kept[p].push_back(s);
    }
  }
  return Restriction(std::move(game), std::move(kept));
}

Restriction Restriction::empty(GamePtr game) {
  if (!game) throw InputError("restriction without a parent game");
  const std::size_t n = game->num_players();
  return Restriction(std::move(game), StrategySets(n));
}

std::span<const StrategyIndex> Restriction::kept(PlayerIndex player) const {
  if (player >= kept_.size()) throw InputError("player index out of range");
  return kept_[player];
}

bool Restriction::contains(PlayerIndex player, StrategyIndex s) const {
  return player < mask_.size() && s < mask_[player].size() && mask_[player][s];
}

bool Restriction::contains(const JointProfile& profile) const {
  if (profile.choices.size() != kept_.size()) return false;
  for (std::size_t p = 0; p < kept_.size(); ++p) {
    if (!contains(p, profile.choices[p])) return false;
  }
  return true;
}

std::size_t Restriction::total_size() const {
  std::size_t total = 0;
  for (const auto& k : kept_) total += k.size();
  return total;
}

Shape Restriction::shape() const {
  std::size_t empty = 0;
  for (const auto& k : kept_) empty += k.empty() ? 1 : 0;
  if (empty == kept_.size()) return Shape::Empty;
  if (empty > 0) return Shape::Degenerate;
  return Shape::NonDegenerate;
}

bool Restriction::subset_of(const Restriction& other) const {
  if (!same_parent(other)) throw InputError("restrictions of different games");
  for (std::size_t p = 0; p < kept_.size(); ++p) {
    for (StrategyIndex s : kept_[p]) {
      if (!other.contains(p, s)) return false;
    }
  }
  return true;
}

const Rational& Restriction::payoff(const JointProfile& profile,
                                    PlayerIndex player) const {
  if (!contains(profile)) {
    throw InputError("profile lies outside the restriction");
  }
  return game_->payoff(profile, player);
}

Restriction Restriction::without(const StrategySets& removed) const {
  if (removed.size() != kept_.size()) {
    throw InputError("removal sets do not match the player count");
  }
  StrategySets kept(kept_.size());
  for (std::size_t p = 0; p < kept_.size(); ++p) {
    for (StrategyIndex s : kept_[p]) {
      if (std::find(removed[p].begin(), removed[p].end(), s) ==
          removed[p].end()) {
        kept[p].push_back(s);
      }
    }
  }
  return Restriction(game_, std::move(kept));
}

StrategySets Restriction::minus(const Restriction& other) const {
  if (!same_parent(other)) throw InputError("restrictions of different games");
  StrategySets out(kept_.size());
  for (std::size_t p = 0; p < kept_.size(); ++p) {
    for (StrategyIndex s : kept_[p]) {
      if (!other.contains(p, s)) out[p].push_back(s);
    }
  }
  return out;
}

Restriction restrict(GamePtr game, StrategySets kept) {
  return Restriction(std::move(game), std::move(kept));
}

Restriction meet(const Restriction& a, const Restriction& b) {
  if (!a.same_parent(b)) throw InputError("restrictions of different games");
  StrategySets kept(a.num_players());
  for (std::size_t p = 0; p < kept.size(); ++p) {
    for (StrategyIndex s : a.kept(p)) {
      if (b.contains(p, s)) kept[p].push_back(s);
    }
  }
  return Restriction(a.game_ptr(), std::move(kept));
}

Restriction join(const Restriction& a, const Restriction& b) {
  if (!a.same_parent(b)) throw InputError("restrictions of different games");
  StrategySets kept = a.kept_sets();
  for (std::size_t p = 0; p < kept.size(); ++p) {
    for (StrategyIndex s : b.kept(p)) kept[p].push_back(s);
  }
  return Restriction(a.game_ptr(), std::move(kept));
}

Shape classify(const Restriction& r) { return r.shape(); }

bool all_empty(const StrategySets& sets) {
  return std::all_of(sets.begin(), sets.end(),
                     [](const auto& s) { return s.empty(); });
}

std::vector<OpponentProfile> opponent_profiles(const Restriction& r,
                                               PlayerIndex player) {
  const FiniteGame& game = r.game();
  const std::size_t n = game.num_players();
  if (player >= n) throw InputError("player index out of range");
  std::vector<PlayerIndex> opponents;
  for (PlayerIndex p = 0; p < n; ++p) {
    if (p == player) continue;
    if (r.size(p) == 0) return {};
    opponents.push_back(p);
  }
  std::vector<OpponentProfile> out;
  std::vector<std::size_t> cursor(opponents.size(), 0);
  while (true) {
    OpponentProfile op;
    op.opponents.choices.reserve(opponents.size());
    for (std::size_t k = 0; k < opponents.size(); ++k) {
      const StrategyIndex s = r.kept(opponents[k])[cursor[k]];
      op.opponents.choices.push_back(s);
      op.offset += s * game.stride(opponents[k]);
    }
    out.push_back(std::move(op));
    std::size_t k = opponents.size();
    while (k > 0) {
      --k;
      if (++cursor[k] < r.size(opponents[k])) break;
      cursor[k] = 0;
      if (k == 0) return out;
    }
    if (opponents.empty()) return out;
  }
}

JointProfile with_own_choice(const JointProfile& opponents, PlayerIndex player,
                             StrategyIndex s) {
  JointProfile full;
  full.choices.reserve(opponents.choices.size() + 1);
  full.choices.insert(full.choices.end(), opponents.choices.begin(),
                      opponents.choices.begin() +
                          static_cast<std::ptrdiff_t>(player));
  full.choices.push_back(s);
  full.choices.insert(full.choices.end(),
                      opponents.choices.begin() +
                          static_cast<std::ptrdiff_t>(player),
                      opponents.choices.end());
  return full;
}

std::string render_sets(const FiniteGame& game, const StrategySets& sets) {
  std::ostringstream os;
  os << '{';
  for (std::size_t p = 0; p < sets.size(); ++p) {
    if (p > 0) os << ',';
    os << 'p' << (p + 1) << ":[";
    for (std::size_t k = 0; k < sets[p].size(); ++k) {
      if (k > 0) os << ',';
      os << game.label(p, sets[p][k]);
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

}  // namespace nbr
