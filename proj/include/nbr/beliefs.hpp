#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nbr/game.hpp"

namespace nbr {

// Pure: opponents' joint pure strategies. IndependentMixed: products of
// opponent mixed strategies. Correlated: distributions over opponent joint
// profiles. Each is contained in the next.
enum class BeliefKind { Pure, IndependentMixed, Correlated };

std::string to_string(BeliefKind kind);

// Sparse mixed strategy: strictly positive weights, sorted by strategy index.
struct MixedStrategy {
  std::vector<std::pair<StrategyIndex, Rational>> weights;

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;
};

struct PurePoint {
  JointProfile opponents;
  friend bool operator==(const PurePoint&, const PurePoint&) = default;
};

// One factor per opponent in player order.
struct Product {
  std::vector<MixedStrategy> factors;
  friend bool operator==(const Product&, const Product&) = default;
};

// Strictly positive masses over opponent profiles, sorted by profile.
struct Distribution {
  std::vector<std::pair<JointProfile, Rational>> masses;
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

// A belief held by `player` about its opponents.
struct Belief {
  PlayerIndex player = 0;
  std::variant<PurePoint, Product, Distribution> value;

  friend bool operator==(const Belief&, const Belief&) = default;
};

BeliefKind kind_of(const Belief& belief);

Belief make_pure(PlayerIndex player, JointProfile opponents);
// Drops zero weights and sorts; validation happens on use.
Belief make_product(PlayerIndex player, std::vector<MixedStrategy> factors);
Belief make_distribution(
    PlayerIndex player,
    std::vector<std::pair<JointProfile, Rational>> masses);
MixedStrategy make_mixed(std::vector<std::pair<StrategyIndex, Rational>> w);

// Checks shape against the game: opponent count, index ranges, non-negative
// probabilities summing to exactly 1. Throws InputError.
void validate_belief(const FiniteGame& game, const Belief& belief);

// Opponent profiles carrying positive probability, sorted.
std::vector<JointProfile> support(const Belief& belief);

// sum over s_{-i} of mu(s_{-i}) * p_i(s_i, s_{-i}), exactly. Product beliefs
// are expanded lazily as the product measure.
Rational expected_payoff(const FiniteGame& game, PlayerIndex player,
                         StrategyIndex s, const Belief& belief);

// mu in B_i narrowed to G: the support lies inside S_{-i} (per factor for
// products). Throws InputError when the belief's shape does not match `kind`.
bool narrowed_membership(BeliefKind kind, const Belief& belief,
                         const Restriction& g);

// All pure beliefs over S_{-i}, lexicographic.
std::vector<Belief> enumerate_pure_beliefs(const Restriction& g,
                                           PlayerIndex player);

// Embeddings along Pure ⊂ IndependentMixed ⊂ Correlated.
Belief as_product(const Belief& belief);
Belief as_distribution(const Belief& belief);
// Re-expresses an arbitrary belief as one of `kind`, where this is exact:
// Pure only from point beliefs; IndependentMixed from products, points, or
// distributions with a single opponent. Throws InputError otherwise.
Belief convert_belief(const Belief& belief, BeliefKind kind);

// pure(L,R) / prod([T:1/2,M:1/2];[L:1]) / dist[(T,L):1/4,...]
std::string render_belief(const FiniteGame& game, const Belief& belief);

}  // namespace nbr
