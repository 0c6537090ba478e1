#include "nbr/oracle.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "nbr/errors.hpp"
#include "nbr/lp.hpp"

namespace nbr {

namespace {

// Payoffs of one player against the opponent profiles of a restriction.
class PayoffView {
 public:
  PayoffView(const Restriction& g, PlayerIndex player)
      : game_(g.game()),
        player_(player),
        stride_(game_.stride(player)),
        opps_(opponent_profiles(g, player)) {}

  std::size_t size() const { return opps_.size(); }
  bool empty() const { return opps_.empty(); }
  const JointProfile& profile(std::size_t j) const {
    return opps_[j].opponents;
  }
  const mpq_class& at(StrategyIndex t, std::size_t j) const {
    return game_.payoff_at(opps_[j].offset + t * stride_, player_).value();
  }

  using Sparse = std::vector<std::pair<std::size_t, mpq_class>>;

  mpq_class expect(StrategyIndex t, const Sparse& weights) const {
    mpq_class total = 0;
    for (const auto& [j, w] : weights) total += w * at(t, j);
    return total;
  }

  // Some pure opponent profile against which s is weakly best in cmp.
  std::optional<std::size_t> pure_witness(StrategyIndex s,
                                          const ComparisonSet& cmp) const {
    for (std::size_t j = 0; j < opps_.size(); ++j) {
      bool ok = true;
      for (StrategyIndex t : cmp.candidates) {
        if (at(t, j) > at(s, j)) {
          ok = false;
          break;
        }
      }
      if (ok) return j;
    }
    return std::nullopt;
  }

  // A candidate strictly better than s against every opponent profile.
  std::optional<StrategyIndex> pure_dominator(StrategyIndex s,
                                              const ComparisonSet& cmp) const {
    for (StrategyIndex t : cmp.candidates) {
      bool dominates = true;
      for (std::size_t j = 0; j < opps_.size() && dominates; ++j) {
        dominates = at(t, j) > at(s, j);
      }
      if (dominates) return t;
    }
    return std::nullopt;
  }

 private:
  const FiniteGame& game_;
  PlayerIndex player_;
  std::size_t stride_;
  std::vector<OpponentProfile> opps_;
};

void check_candidates(const FiniteGame& game, PlayerIndex player,
                      StrategyIndex s, const ComparisonSet& cmp) {
  if (player >= game.num_players()) {
    throw InputError("player index out of range");
  }
  if (cmp.player != player) {
    throw InputError("comparison set belongs to a different player");
  }
  const std::size_t m = game.num_strategies(player);
  if (s >= m) throw InputError("strategy index out of range");
  for (StrategyIndex t : cmp.candidates) {
    if (t >= m) throw InputError("comparison candidate out of range");
  }
}

// Exact LP over distributions on S_{-i}. Constraints are added lazily: only
// candidates that beat s at the current point enter the system. Infeasibility
// of a subsystem implies infeasibility of the whole; feasibility is confirmed
// against every candidate before returning.
std::optional<PayoffView::Sparse> correlated_witness(const PayoffView& view,
                                                     StrategyIndex s,
                                                     const ComparisonSet& cmp) {
  const std::size_t dim = view.size();
  std::vector<StrategyIndex> active;
  PayoffView::Sparse point{{0, mpq_class(1)}};
  while (true) {
    const mpq_class own = view.expect(s, point);
    std::optional<StrategyIndex> best;
    mpq_class best_value;
    for (StrategyIndex t : cmp.candidates) {
      mpq_class v = view.expect(t, point);
      if (v > own && (!best || v > best_value)) {
        best = t;
        best_value = std::move(v);
      }
    }
    if (!best) return point;
    for (StrategyIndex t : active) {
      if (t == *best) throw std::logic_error("LP point violates its own row");
    }
    active.push_back(*best);

    LinearSystem sys;
    sys.dim = dim;
    for (StrategyIndex t : active) {
      Inequality row;
      row.coeffs.reserve(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        row.coeffs.emplace_back(mpq_class(view.at(s, j) - view.at(t, j)));
      }
      sys.at_least.push_back(std::move(row));
    }
    sys.equal.push_back(Equation{std::vector<Rational>(dim, Rational(1)),
                                 Rational(1)});
    const auto x = lp_feasible(sys);
    if (!x) return std::nullopt;
    point.clear();
    for (std::size_t j = 0; j < dim; ++j) {
      if (!(*x)[j].is_zero()) point.emplace_back(j, (*x)[j].value());
    }
  }
}

Belief distribution_belief(const PayoffView& view, PlayerIndex player,
                           const PayoffView::Sparse& point) {
  std::vector<std::pair<JointProfile, Rational>> masses;
  for (const auto& [j, w] : point) {
    masses.emplace_back(view.profile(j), Rational(w));
  }
  return make_distribution(player, std::move(masses));
}

// The distribution as a product of its marginals, if it is one.
std::optional<Belief> as_exact_product(const Belief& dist,
                                       std::size_t num_opponents) {
  const auto& masses = std::get<Distribution>(dist.value).masses;
  std::vector<std::map<StrategyIndex, Rational>> marginals(num_opponents);
  for (const auto& [p, w] : masses) {
    for (std::size_t k = 0; k < num_opponents; ++k) {
      marginals[k][p.choices[k]] += w;
    }
  }
  std::vector<MixedStrategy> factors;
  for (const auto& m : marginals) {
    factors.push_back(make_mixed({m.begin(), m.end()}));
  }
  Belief product = make_product(dist.player, std::move(factors));
  if (as_distribution(product) == dist) return product;
  return std::nullopt;
}

void compositions(std::size_t parts, int total, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == parts) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    current.push_back(k);
    compositions(parts, total - k, current, out);
    current.pop_back();
  }
}

// Product beliefs whose factors have common denominator d <= resolution.
std::optional<Belief> grid_product_witness(const Restriction& g,
                                           const PayoffView& view,
                                           PlayerIndex player, StrategyIndex s,
                                           const ComparisonSet& cmp,
                                           int resolution) {
  const FiniteGame& game = g.game();
  std::vector<PlayerIndex> opponents;
  for (PlayerIndex p = 0; p < game.num_players(); ++p) {
    if (p != player) opponents.push_back(p);
  }
  const std::size_t m = opponents.size();
  // position of each opponent profile's k-th choice inside S_k
  std::vector<std::vector<std::size_t>> pos(view.size(),
                                            std::vector<std::size_t>(m));
  for (std::size_t j = 0; j < view.size(); ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto kept = g.kept(opponents[k]);
      const StrategyIndex c = view.profile(j).choices[k];
      for (std::size_t q = 0; q < kept.size(); ++q) {
        if (kept[q] == c) pos[j][k] = q;
      }
    }
  }
  for (int d = 1; d <= resolution; ++d) {
    std::vector<std::vector<std::vector<int>>> grids(m);
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<int> cur;
      compositions(g.size(opponents[k]), d, cur, grids[k]);
    }
    std::vector<std::size_t> cursor(m, 0);
    while (true) {
      PayoffView::Sparse weights;
      for (std::size_t j = 0; j < view.size(); ++j) {
        long w = 1;
        for (std::size_t k = 0; k < m; ++k) {
          w *= grids[k][cursor[k]][pos[j][k]];
        }
        if (w != 0) weights.emplace_back(j, mpq_class(w));
      }
      const mpq_class own = view.expect(s, weights);
      bool ok = true;
      for (StrategyIndex t : cmp.candidates) {
        if (view.expect(t, weights) > own) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<MixedStrategy> factors;
        for (std::size_t k = 0; k < m; ++k) {
          std::vector<std::pair<StrategyIndex, Rational>> w;
          const auto kept = g.kept(opponents[k]);
          for (std::size_t q = 0; q < kept.size(); ++q) {
            w.emplace_back(kept[q], Rational(grids[k][cursor[k]][q], d));
          }
          factors.push_back(make_mixed(std::move(w)));
        }
        return make_product(player, std::move(factors));
      }
      std::size_t k = m;
      bool done = true;
      while (k > 0) {
        --k;
        if (++cursor[k] < grids[k].size()) {
          done = false;
          break;
        }
        cursor[k] = 0;
      }
      if (done) break;
    }
  }
  return std::nullopt;
}

Belief belief_of_kind(const PayoffView& view, PlayerIndex player,
                      std::size_t j, BeliefKind kind) {
  Belief pure = make_pure(player, view.profile(j));
  return convert_belief(pure, kind);
}

NeverBestResponse infeasibility_proof(const Restriction& g, PlayerIndex player,
                                      StrategyIndex s,
                                      const ComparisonSet& cmp,
                                      const OracleOptions& options) {
  if (options.dominance_proof) {
    if (auto sigma = dominating_strategy(g, player, s, cmp)) {
      return NeverBestResponse{ProofKind::DominatedBy, std::move(sigma)};
    }
    throw std::logic_error("LP infeasible but no dominating strategy found");
  }
  return NeverBestResponse{ProofKind::LPInfeasible, std::nullopt};
}

}  // namespace

ComparisonSet full_comparison(const FiniteGame& game, PlayerIndex player) {
  ComparisonSet cmp{player, {}};
  for (StrategyIndex s = 0; s < game.num_strategies(player); ++s) {
    cmp.candidates.push_back(s);
  }
  return cmp;
}

ComparisonSet kept_comparison(const Restriction& g, PlayerIndex player) {
  const auto kept = g.kept(player);
  return ComparisonSet{player, {kept.begin(), kept.end()}};
}

bool is_never_best(const Certificate& c) {
  return std::holds_alternative<NeverBestResponse>(c);
}
bool is_best(const Certificate& c) {
  return std::holds_alternative<IsBestResponse>(c);
}
bool is_inconclusive(const Certificate& c) {
  return std::holds_alternative<Inconclusive>(c);
}
bool is_empty_beliefs(const Certificate& c) {
  return std::holds_alternative<EmptyBeliefSet>(c);
}

bool is_best_response(const FiniteGame& game, PlayerIndex player,
                      StrategyIndex s, const Belief& belief,
                      const ComparisonSet& cmp) {
  check_candidates(game, player, s, cmp);
  const Rational own = expected_payoff(game, player, s, belief);
  for (StrategyIndex t : cmp.candidates) {
    if (expected_payoff(game, player, t, belief) > own) return false;
  }
  return true;
}

Certificate find_witness(const Restriction& g, PlayerIndex player,
                         StrategyIndex s, BeliefKind kind,
                         const ComparisonSet& cmp,
                         const OracleOptions& options, const Belief* hint) {
  const FiniteGame& game = g.game();
  check_candidates(game, player, s, cmp);
  if (options.grid_resolution < 1) {
    throw InputError("grid resolution must be positive");
  }
  const PayoffView view(g, player);
  if (view.empty()) return EmptyBeliefSet{};
  // Property C: non-degenerate restrictions always carry beliefs.
  assert(g.shape() == Shape::NonDegenerate ? !view.empty() : true);

  if (hint && hint->player == player && kind_of(*hint) == kind &&
      narrowed_membership(kind, *hint, g) &&
      is_best_response(game, player, s, *hint, cmp)) {
    return IsBestResponse{*hint};
  }
  if (const auto j = view.pure_witness(s, cmp)) {
    return IsBestResponse{belief_of_kind(view, player, *j, kind)};
  }
  if (kind == BeliefKind::Pure) {
    return NeverBestResponse{ProofKind::Exhaustive, std::nullopt};
  }

  // The LP row of a pure dominator alone is already infeasible.
  if (const auto t = view.pure_dominator(s, cmp)) {
    if (options.dominance_proof) {
      return NeverBestResponse{ProofKind::DominatedBy,
                               make_mixed({{*t, Rational(1)}})};
    }
    return NeverBestResponse{ProofKind::LPInfeasible, std::nullopt};
  }
  const auto point = correlated_witness(view, s, cmp);
  if (!point) return infeasibility_proof(g, player, s, cmp, options);
  Belief dist = distribution_belief(view, player, *point);
  if (kind == BeliefKind::Correlated) return IsBestResponse{std::move(dist)};
  if (game.num_players() <= 2) {
    return IsBestResponse{convert_belief(dist, BeliefKind::IndependentMixed)};
  }
  if (auto product = as_exact_product(dist, game.num_players() - 1)) {
    return IsBestResponse{std::move(*product)};
  }
  if (auto grid = grid_product_witness(g, view, player, s, cmp,
                                       options.grid_resolution)) {
    return IsBestResponse{std::move(*grid)};
  }
  return Inconclusive{options.grid_resolution};
}

std::optional<MixedStrategy> dominating_strategy(const Restriction& g,
                                                 PlayerIndex player,
                                                 StrategyIndex s,
                                                 const ComparisonSet& cmp) {
  check_candidates(g.game(), player, s, cmp);
  const PayoffView view(g, player);
  if (view.empty() || cmp.candidates.empty()) return std::nullopt;
  // z >= 0 with sum_t z_t (p(t, j) - p(s, j)) >= 1 for every opponent
  // profile j; normalizing z gives the strictly dominating mixture.
  LinearSystem sys;
  sys.dim = cmp.candidates.size();
  for (std::size_t j = 0; j < view.size(); ++j) {
    Inequality row;
    for (StrategyIndex t : cmp.candidates) {
      row.coeffs.emplace_back(mpq_class(view.at(t, j) - view.at(s, j)));
    }
    row.rhs = Rational(1);
    sys.at_least.push_back(std::move(row));
  }
  const auto z = lp_feasible(sys);
  if (!z) return std::nullopt;
  Rational total;
  for (const auto& v : *z) total += v;
  std::map<StrategyIndex, Rational> weights;
  for (std::size_t k = 0; k < z->size(); ++k) {
    if (!(*z)[k].is_zero()) weights[cmp.candidates[k]] += (*z)[k] / total;
  }
  return make_mixed({weights.begin(), weights.end()});
}

bool verify_dominance(const Restriction& g, PlayerIndex player,
                      StrategyIndex s, const ComparisonSet& cmp,
                      const MixedStrategy& dominator) {
  check_candidates(g.game(), player, s, cmp);
  Rational total;
  for (const auto& [t, w] : dominator.weights) {
    if (w.sign() < 0) return false;
    bool in_cmp = false;
    for (StrategyIndex c : cmp.candidates) in_cmp = in_cmp || c == t;
    if (!in_cmp) return false;
    total += w;
  }
  if (total != Rational(1)) return false;
  const PayoffView view(g, player);
  for (std::size_t j = 0; j < view.size(); ++j) {
    mpq_class mixed = 0;
    for (const auto& [t, w] : dominator.weights) {
      mixed += w.value() * view.at(t, j);
    }
    if (!(mixed > view.at(s, j))) return false;
  }
  return true;
}

const Belief* CertificateCache::witness(PlayerIndex player,
                                        StrategyIndex s) const {
  const auto it = witnesses_.find({player, s});
  return it == witnesses_.end() ? nullptr : &it->second;
}

void CertificateCache::remember_witness(PlayerIndex player, StrategyIndex s,
                                        Belief belief) {
  witnesses_.insert_or_assign({player, s}, std::move(belief));
}

const NeverBestResponse* CertificateCache::reference_never_best(
    PlayerIndex player, StrategyIndex s) const {
  const auto it = reference_nbr_.find({player, s});
  return it == reference_nbr_.end() ? nullptr : &it->second;
}

void CertificateCache::remember_reference_never_best(PlayerIndex player,
                                                     StrategyIndex s,
                                                     NeverBestResponse proof) {
  reference_nbr_.insert_or_assign({player, s}, std::move(proof));
}

std::vector<bool> pure_best_responses(const Restriction& g, PlayerIndex player,
                                      const ComparisonSet& cmp) {
  const PayoffView view(g, player);
  std::vector<bool> out(g.game().num_strategies(player), false);
  for (std::size_t j = 0; j < view.size(); ++j) {
    const mpq_class* best = nullptr;
    for (StrategyIndex t : cmp.candidates) {
      if (!best || view.at(t, j) > *best) best = &view.at(t, j);
    }
    for (StrategyIndex s : g.kept(player)) {
      if (!best || view.at(s, j) >= *best) out[s] = true;
    }
  }
  return out;
}

NeverBestSet never_best_set(const Restriction& g, BeliefKind kind,
                            ComparisonMode mode, const OracleOptions& options,
                            CertificateCache* cache) {
  if (cache && cache->kind() != kind) {
    throw InputError("certificate cache built for another belief kind");
  }
  const FiniteGame& game = g.game();
  const std::size_t n = game.num_players();
  NeverBestSet out;
  out.removable.resize(n);
  for (PlayerIndex i = 0; i < n; ++i) {
    if (g.size(i) == 0) continue;
    const ComparisonSet cmp = mode == ComparisonMode::ReferenceH
                                  ? full_comparison(game, i)
                                  : kept_comparison(g, i);
    const PayoffView view(g, i);
    if (view.empty()) {
      for (StrategyIndex s : g.kept(i)) {
        out.removable[i].push_back(s);
        out.certificates.emplace(std::make_pair(i, s), EmptyBeliefSet{});
      }
      out.vacuous = true;
      continue;
    }
    const std::vector<bool> pure_best = pure_best_responses(g, i, cmp);
    for (StrategyIndex s : g.kept(i)) {
      if (pure_best[s]) continue;
      if (kind == BeliefKind::Pure) {
        out.removable[i].push_back(s);
        out.certificates.emplace(
            std::make_pair(i, s),
            NeverBestResponse{ProofKind::Exhaustive, std::nullopt});
        continue;
      }
      if (cache && mode == ComparisonMode::ReferenceH) {
        if (const auto* known = cache->reference_never_best(i, s)) {
          out.removable[i].push_back(s);
          out.certificates.emplace(std::make_pair(i, s), *known);
          continue;
        }
      }
      const Belief* hint = cache ? cache->witness(i, s) : nullptr;
      Certificate c = find_witness(g, i, s, kind, cmp, options, hint);
      if (auto* br = std::get_if<IsBestResponse>(&c)) {
        if (cache) cache->remember_witness(i, s, br->witness);
        continue;
      }
      if (auto* nbr = std::get_if<NeverBestResponse>(&c)) {
        if (cache && mode == ComparisonMode::ReferenceH) {
          cache->remember_reference_never_best(i, s, *nbr);
        }
        out.removable[i].push_back(s);
      } else if (is_inconclusive(c)) {
        out.inconclusive = true;
      }
      out.certificates.emplace(std::make_pair(i, s), std::move(c));
    }
  }
  return out;
}

std::string render_certificate(const FiniteGame& game, PlayerIndex player,
                               const Certificate& c) {
  std::ostringstream os;
  if (const auto* br = std::get_if<IsBestResponse>(&c)) {
    os << "BR(witness=" << render_belief(game, br->witness) << ')';
  } else if (const auto* nbr = std::get_if<NeverBestResponse>(&c)) {
    switch (nbr->proof) {
      case ProofKind::Exhaustive:
        os << "NBR(exhaustive)";
        break;
      case ProofKind::LPInfeasible:
        os << "NBR(lp)";
        break;
      case ProofKind::DominatedBy:
        os << "NBR(dominated=[";
        for (std::size_t k = 0; k < nbr->dominator->weights.size(); ++k) {
          if (k > 0) os << ',';
          os << game.label(player, nbr->dominator->weights[k].first) << ':'
             << nbr->dominator->weights[k].second;
        }
        os << "])";
        break;
    }
  } else if (const auto* inc = std::get_if<Inconclusive>(&c)) {
    os << "INCONCLUSIVE(res=" << inc->resolution << ')';
  } else {
    os << "NBR(empty-beliefs)";
  }
  return os.str();
}

}  // namespace nbr
