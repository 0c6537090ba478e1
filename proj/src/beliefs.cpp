#include "nbr/beliefs.hpp"

#include <algorithm>
#include <sstream>

#include "nbr/errors.hpp"

namespace nbr {

namespace {

std::vector<PlayerIndex> opponents_of(const FiniteGame& game,
                                      PlayerIndex player) {
  std::vector<PlayerIndex> out;
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    if (p != player) out.push_back(p);
  }
  return out;
}

void check_profile(const FiniteGame& game, PlayerIndex player,
                   const JointProfile& opponents) {
  const auto opp = opponents_of(game, player);
  if (opponents.choices.size() != opp.size()) {
    throw InputError("opponent profile has wrong length");
  }
  for (std::size_t k = 0; k < opp.size(); ++k) {
    if (opponents.choices[k] >= game.num_strategies(opp[k])) {
      throw InputError("opponent strategy index out of range");
    }
  }
}

void check_mixed(const MixedStrategy& m, std::size_t num_strategies) {
  Rational total;
  for (const auto& [s, w] : m.weights) {
    if (s >= num_strategies) throw InputError("mixed strategy index out of range");
    if (w.sign() < 0) throw InputError("negative probability");
    total += w;
  }
  if (total != Rational(1)) {
    throw InputError("mixed strategy sums to " + total.str() + ", not 1");
  }
}

// Calls fn(opponent profile, probability) for every profile in the product
// support.
template <class Fn>
void for_each_product_point(const Product& product, Fn&& fn) {
  const std::size_t m = product.factors.size();
  for (const auto& f : product.factors) {
    if (f.weights.empty()) return;
  }
  std::vector<std::size_t> cursor(m, 0);
  JointProfile profile{std::vector<StrategyIndex>(m)};
  while (true) {
    Rational prob(1);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& [s, w] = product.factors[k].weights[cursor[k]];
      profile.choices[k] = s;
      prob *= w;
    }
    fn(profile, prob);
    std::size_t k = m;
    while (true) {
      if (k == 0) return;
      --k;
      if (++cursor[k] < product.factors[k].weights.size()) break;
      cursor[k] = 0;
    }
  }
}

}  // namespace

std::string to_string(BeliefKind kind) {
  switch (kind) {
    case BeliefKind::Pure:
      return "pure";
    case BeliefKind::IndependentMixed:
      return "mixed";
    case BeliefKind::Correlated:
      return "correlated";
  }
  return "?";
}

BeliefKind kind_of(const Belief& belief) {
  switch (belief.value.index()) {
    case 0:
      return BeliefKind::Pure;
    case 1:
      return BeliefKind::IndependentMixed;
    default:
      return BeliefKind::Correlated;
  }
}

Belief make_pure(PlayerIndex player, JointProfile opponents) {
  return Belief{player, PurePoint{std::move(opponents)}};
}

MixedStrategy make_mixed(std::vector<std::pair<StrategyIndex, Rational>> w) {
  MixedStrategy m;
  for (auto& e : w) {
    if (!e.second.is_zero()) m.weights.push_back(std::move(e));
  }
  std::sort(m.weights.begin(), m.weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return m;
}

Belief make_product(PlayerIndex player, std::vector<MixedStrategy> factors) {
  for (auto& f : factors) f = make_mixed(std::move(f.weights));
  return Belief{player, Product{std::move(factors)}};
}

Belief make_distribution(
    PlayerIndex player,
    std::vector<std::pair<JointProfile, Rational>> masses) {
  Distribution d;
  for (auto& e : masses) {
    if (!e.second.is_zero()) d.masses.push_back(std::move(e));
  }
  std::sort(d.masses.begin(), d.masses.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return Belief{player, std::move(d)};
}

void validate_belief(const FiniteGame& game, const Belief& belief) {
  if (belief.player >= game.num_players()) {
    throw InputError("belief holder out of range");
  }
  const auto opp = opponents_of(game, belief.player);
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    check_profile(game, belief.player, pure->opponents);
  } else if (const auto* prod = std::get_if<Product>(&belief.value)) {
    if (prod->factors.size() != opp.size()) {
      throw InputError("product belief has wrong number of factors");
    }
    for (std::size_t k = 0; k < opp.size(); ++k) {
      check_mixed(prod->factors[k], game.num_strategies(opp[k]));
    }
  } else {
    const auto& dist = std::get<Distribution>(belief.value);
    Rational total;
    for (std::size_t k = 0; k < dist.masses.size(); ++k) {
      const auto& [profile, w] = dist.masses[k];
      check_profile(game, belief.player, profile);
      if (w.sign() < 0) throw InputError("negative probability");
      if (k > 0 && !(dist.masses[k - 1].first < profile)) {
        throw InputError("distribution profiles not sorted and distinct");
      }
      total += w;
    }
    if (total != Rational(1)) {
      throw InputError("distribution sums to " + total.str() + ", not 1");
    }
  }
}

std::vector<JointProfile> support(const Belief& belief) {
  std::vector<JointProfile> out;
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    out.push_back(pure->opponents);
  } else if (const auto* prod = std::get_if<Product>(&belief.value)) {
    for_each_product_point(*prod, [&](const JointProfile& p, const Rational& w) {
      if (w.sign() > 0) out.push_back(p);
    });
  } else {
    for (const auto& [p, w] : std::get<Distribution>(belief.value).masses) {
      if (w.sign() > 0) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational expected_payoff(const FiniteGame& game, PlayerIndex player,
                         StrategyIndex s, const Belief& belief) {
  if (belief.player != player) {
    throw InputError("belief belongs to a different player");
  }
  if (s >= game.num_strategies(player)) {
    throw InputError("strategy index out of range");
  }
  validate_belief(game, belief);
  const auto opp = opponents_of(game, player);
  const auto index_of = [&](const JointProfile& opponents) {
    std::size_t index = s * game.stride(player);
    for (std::size_t k = 0; k < opp.size(); ++k) {
      index += opponents.choices[k] * game.stride(opp[k]);
    }
    return index;
  };
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    return game.payoff_at(index_of(pure->opponents), player);
  }
  Rational total;
  if (const auto* prod = std::get_if<Product>(&belief.value)) {
    for_each_product_point(*prod, [&](const JointProfile& p, const Rational& w) {
      total += w * game.payoff_at(index_of(p), player);
    });
    return total;
  }
  for (const auto& [p, w] : std::get<Distribution>(belief.value).masses) {
    total += w * game.payoff_at(index_of(p), player);
  }
  return total;
}

bool narrowed_membership(BeliefKind kind, const Belief& belief,
                         const Restriction& g) {
  if (kind_of(belief) != kind) {
    throw InputError("belief of kind " + to_string(kind_of(belief)) +
                     " tested against the " + to_string(kind) +
                     " belief system");
  }
  validate_belief(g.game(), belief);
  const auto opp = opponents_of(g.game(), belief.player);
  const auto inside = [&](const JointProfile& opponents) {
    for (std::size_t k = 0; k < opp.size(); ++k) {
      if (!g.contains(opp[k], opponents.choices[k])) return false;
    }
    return true;
  };
  if (const auto* prod = std::get_if<Product>(&belief.value)) {
    for (std::size_t k = 0; k < opp.size(); ++k) {
      for (const auto& [s, w] : prod->factors[k].weights) {
        if (w.sign() > 0 && !g.contains(opp[k], s)) return false;
      }
    }
    return true;
  }
  for (const auto& p : support(belief)) {
    if (!inside(p)) return false;
  }
  return true;
}

std::vector<Belief> enumerate_pure_beliefs(const Restriction& g,
                                           PlayerIndex player) {
  std::vector<Belief> out;
  for (auto& op : opponent_profiles(g, player)) {
    out.push_back(make_pure(player, std::move(op.opponents)));
  }
  return out;
}

Belief as_product(const Belief& belief) {
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    std::vector<MixedStrategy> factors;
    for (StrategyIndex s : pure->opponents.choices) {
      factors.push_back(MixedStrategy{{{s, Rational(1)}}});
    }
    return Belief{belief.player, Product{std::move(factors)}};
  }
  if (std::holds_alternative<Product>(belief.value)) return belief;
  throw InputError("a correlated distribution is not a product belief");
}

Belief as_distribution(const Belief& belief) {
  if (std::holds_alternative<Distribution>(belief.value)) return belief;
  std::vector<std::pair<JointProfile, Rational>> masses;
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    masses.emplace_back(pure->opponents, Rational(1));
  } else {
    for_each_product_point(std::get<Product>(belief.value),
                           [&](const JointProfile& p, const Rational& w) {
                             masses.emplace_back(p, w);
                           });
  }
  return make_distribution(belief.player, std::move(masses));
}

Belief convert_belief(const Belief& belief, BeliefKind kind) {
  switch (kind) {
    case BeliefKind::Correlated:
      return as_distribution(belief);
    case BeliefKind::IndependentMixed: {
      if (const auto* dist = std::get_if<Distribution>(&belief.value)) {
        if (!dist->masses.empty() &&
            dist->masses.front().first.choices.size() == 1) {
          std::vector<std::pair<StrategyIndex, Rational>> w;
          for (const auto& [p, q] : dist->masses) {
            w.emplace_back(p.choices[0], q);
          }
          return make_product(belief.player, {make_mixed(std::move(w))});
        }
        if (!dist->masses.empty() &&
            dist->masses.front().first.choices.empty()) {
          return make_product(belief.player, {});
        }
        throw InputError("correlated belief over several opponents");
      }
      return as_product(belief);
    }
    case BeliefKind::Pure: {
      if (std::holds_alternative<PurePoint>(belief.value)) return belief;
      const auto supp = support(belief);
      if (supp.size() == 1) return make_pure(belief.player, supp.front());
      throw InputError("belief with several support points is not pure");
    }
  }
  throw InputError("unknown belief kind");
}

std::string render_belief(const FiniteGame& game, const Belief& belief) {
  const auto opp = opponents_of(game, belief.player);
  const auto profile_labels = [&](const JointProfile& p) {
    std::string out;
    for (std::size_t k = 0; k < opp.size(); ++k) {
      if (k > 0) out += ',';
      out += game.label(opp[k], p.choices[k]);
    }
    return out;
  };
  std::ostringstream os;
  if (const auto* pure = std::get_if<PurePoint>(&belief.value)) {
    os << "pure(" << profile_labels(pure->opponents) << ')';
  } else if (const auto* prod = std::get_if<Product>(&belief.value)) {
    os << "prod(";
    for (std::size_t k = 0; k < prod->factors.size(); ++k) {
      if (k > 0) os << ';';
      os << '[';
      const auto& w = prod->factors[k].weights;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j > 0) os << ',';
        os << game.label(opp[k], w[j].first) << ':' << w[j].second;
      }
      os << ']';
    }
    os << ')';
  } else {
    os << "dist[";
    const auto& m = std::get<Distribution>(belief.value).masses;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) os << ',';
      os << '(' << profile_labels(m[j].first) << "):" << m[j].second;
    }
    os << ']';
  }
  return os.str();
}

}  // namespace nbr
