#include "nbr/verification.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "nbr/errors.hpp"
#include "nbr/game_io.hpp"
#include "nbr/rng.hpp"

namespace nbr {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  return seed * 0x9E3779B97F4A7C15ULL + k + 1;
}

bool exact_kind(const FiniteGame& game, BeliefKind kind) {
  return kind != BeliefKind::IndependentMixed || game.num_players() <= 2;
}

TheoremReport make_report(TheoremId id, const Instance& inst,
                          const VerifyOptions& options) {
  TheoremReport r;
  r.theorem = id;
  r.game = inst.name;
  r.game_hash = game_hash(*inst.game);
  r.seed = options.seed;
  r.beliefs = options.beliefs;
  return r;
}

TheoremReport unknown_report(TheoremId id, const Instance& inst,
                             const VerifyOptions& options,
                             std::string detail) {
  TheoremReport r = make_report(id, inst, options);
  r.verdict = Verdict::Unknown;
  r.detail = std::move(detail);
  return r;
}

void fail(TheoremReport& r, Counterexample ce) {
  r.verdict = Verdict::Fail;
  r.detail = ce.summary;
  r.counterexample = std::move(ce);
}

Policy order_policy(int k) {
  return k % 2 == 0 ? Policy::RandomPartial : Policy::SingleRandom;
}

Trace run(const Instance& inst, ReductionKind kind, Policy policy,
          std::uint64_t seed, const VerifyOptions& options) {
  IterateOptions io;
  io.policy = policy;
  io.seed = seed;
  io.oracle = options.oracle;
  return iterate(inst.game, kind, options.beliefs, io);
}

std::string describe(const Trace& t) {
  return to_string(t.kind) + " " + to_string(t.policy) + " seed=" +
         std::to_string(t.seed) + " outcome=" +
         render_sets(*t.game, t.outcome.kept_sets()) +
         " steps=" + std::to_string(t.steps.size());
}

Tri closedness(const Restriction& g, BeliefKind kind, ComparisonMode mode,
               const OracleOptions& options, const Restriction* inner) {
  const FiniteGame& game = g.game();
  bool unknown = false;
  // Strategies outside `inner` are checked first: they are the likely
  // never-best ones, so a negative answer comes early.
  for (int pass = 0; pass < 2; ++pass) {
    for (PlayerIndex i = 0; i < g.num_players(); ++i) {
      if (g.size(i) == 0) continue;
      const ComparisonSet cmp = mode == ComparisonMode::ReferenceH
                                    ? full_comparison(game, i)
                                    : kept_comparison(g, i);
      const std::vector<bool> pure_best = pure_best_responses(g, i, cmp);
      for (StrategyIndex s : g.kept(i)) {
        if (inner) {
          if ((pass == 0) == inner->contains(i, s)) continue;
        } else if (pass == 1) {
          continue;
        }
        if (pure_best[s]) continue;
        if (kind == BeliefKind::Pure) return Tri::False;
        const Certificate c = find_witness(g, i, s, kind, cmp, options);
        if (is_inconclusive(c)) {
          unknown = true;
        } else if (!is_best(c)) {
          return Tri::False;
        }
      }
    }
  }
  return unknown ? Tri::Unknown : Tri::True;
}

// Memoized best-response status of (player, strategy) against the beliefs
// over an opponent set, for lattice enumeration of small games.
class LatticeOracle {
 public:
  LatticeOracle(const GamePtr& game, BeliefKind kind,
                const OracleOptions& options)
      : game_(game), kind_(kind), options_(options) {
    std::size_t bit = 0;
    for (PlayerIndex i = 0; i < game->num_players(); ++i) {
      offset_.push_back(bit);
      std::uint32_t own = 0;
      for (StrategyIndex s = 0; s < game->num_strategies(i); ++s) {
        own |= 1u << (bit + s);
      }
      own_.push_back(own);
      bit += game->num_strategies(i);
    }
    bits_ = bit;
  }

  std::size_t bits() const { return bits_; }

  std::uint32_t mask_of(const Restriction& r) const {
    std::uint32_t m = 0;
    for (PlayerIndex i = 0; i < r.num_players(); ++i) {
      for (StrategyIndex s : r.kept(i)) m |= 1u << (offset_[i] + s);
    }
    return m;
  }

  Restriction restriction_of(std::uint32_t mask) const {
    StrategySets sets(game_->num_players());
    for (PlayerIndex i = 0; i < sets.size(); ++i) {
      for (StrategyIndex s = 0; s < game_->num_strategies(i); ++s) {
        if (mask & (1u << (offset_[i] + s))) sets[i].push_back(s);
      }
    }
    return Restriction(game_, std::move(sets));
  }

  Tri best(PlayerIndex i, StrategyIndex s, std::uint32_t mask) {
    const std::uint32_t opponents = mask & ~own_[i];
    const std::uint64_t key =
        (static_cast<std::uint64_t>(offset_[i] + s) << 32) | opponents;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint32_t probe = opponents | (1u << (offset_[i] + s));
    const Restriction g = restriction_of(probe);
    const Certificate c =
        find_witness(g, i, s, kind_, full_comparison(*game_, i), options_);
    const Tri t = is_best(c)           ? Tri::True
                  : is_inconclusive(c) ? Tri::Unknown
                                       : Tri::False;
    memo_.emplace(key, t);
    return t;
  }

  // Closedness of the restriction given by mask, testing strategies outside
  // `first` before the others.
  Tri closed(std::uint32_t mask, std::uint32_t first) {
    bool unknown = false;
    for (int pass = 0; pass < 2; ++pass) {
      for (PlayerIndex i = 0; i < game_->num_players(); ++i) {
        for (StrategyIndex s = 0; s < game_->num_strategies(i); ++s) {
          const std::uint32_t b = 1u << (offset_[i] + s);
          if (!(mask & b)) continue;
          if ((pass == 0) == ((first & b) != 0)) continue;
          const Tri t = best(i, s, mask);
          if (t == Tri::False) return Tri::False;
          if (t == Tri::Unknown) unknown = true;
        }
      }
    }
    return unknown ? Tri::Unknown : Tri::True;
  }

 private:
  GamePtr game_;
  BeliefKind kind_;
  OracleOptions options_;
  std::vector<std::size_t> offset_;
  std::vector<std::uint32_t> own_;
  std::size_t bits_ = 0;
  std::unordered_map<std::uint64_t, Tri> memo_;
};

Restriction random_superset(const Restriction& base, Rng& rng) {
  const FiniteGame& game = base.game();
  StrategySets sets = base.kept_sets();
  std::vector<std::pair<PlayerIndex, StrategyIndex>> outside;
  for (PlayerIndex i = 0; i < game.num_players(); ++i) {
    for (StrategyIndex s = 0; s < game.num_strategies(i); ++s) {
      if (!base.contains(i, s)) outside.emplace_back(i, s);
    }
  }
  if (outside.empty()) return base;
  bool added = false;
  for (const auto& [i, s] : outside) {
    if (rng.coin()) {
      sets[i].push_back(s);
      added = true;
    }
  }
  if (!added) {
    const auto& [i, s] = outside[rng.below(outside.size())];
    sets[i].push_back(s);
  }
  return Restriction(base.game_ptr(), std::move(sets));
}

Restriction random_restriction(const GamePtr& game, Rng& rng) {
  StrategySets sets(game->num_players());
  for (PlayerIndex i = 0; i < sets.size(); ++i) {
    for (StrategyIndex s = 0; s < game->num_strategies(i); ++s) {
      if (rng.coin()) sets[i].push_back(s);
    }
    if (sets[i].empty()) sets[i].push_back(rng.below(game->num_strategies(i)));
  }
  return Restriction(game, std::move(sets));
}

bool contains_profile(const std::vector<JointProfile>& set,
                      const JointProfile& p) {
  return std::binary_search(set.begin(), set.end(), p);
}

// --- independent re-checking ----------------------------------------------

ComparisonSet recheck_comparison(ReductionKind kind, const Restriction& from,
                                 const Restriction& to, PlayerIndex i) {
  switch (kind) {
    case ReductionKind::TildeInitial:
      return full_comparison(from.game(), i);
    case ReductionKind::ArrowCurrent:
      return kept_comparison(from, i);
    case ReductionKind::DArrowTarget:
      return kept_comparison(to, i);
  }
  return kept_comparison(from, i);
}

// True: a verified witness makes s weakly best; False: verified never-best
// (exhaustively, vacuously, or by a checked dominating mixed strategy).
Tri verified_best(const Restriction& g, PlayerIndex i, StrategyIndex s,
                  BeliefKind kind, const ComparisonSet& cmp) {
  const FiniteGame& game = g.game();
  const auto profiles = opponent_profiles(g, i);
  if (profiles.empty()) return Tri::False;
  if (kind == BeliefKind::Pure) {
    for (const auto& op : profiles) {
      const JointProfile at_s = with_own_choice(op.opponents, i, s);
      const Rational& mine = game.payoff(at_s, i);
      bool best = true;
      for (StrategyIndex t : cmp.candidates) {
        if (game.payoff(with_own_choice(op.opponents, i, t), i) > mine) {
          best = false;
          break;
        }
      }
      if (best) return Tri::True;
    }
    return Tri::False;
  }
  OracleOptions options;
  options.dominance_proof = true;
  const Certificate c = find_witness(g, i, s, kind, cmp, options);
  if (const auto* br = std::get_if<IsBestResponse>(&c)) {
    return narrowed_membership(kind, br->witness, g) &&
                   is_best_response(game, i, s, br->witness, cmp)
               ? Tri::True
               : Tri::Unknown;
  }
  if (const auto* nbr = std::get_if<NeverBestResponse>(&c)) {
    return nbr->dominator && verify_dominance(g, i, s, cmp, *nbr->dominator)
               ? Tri::False
               : Tri::Unknown;
  }
  return is_empty_beliefs(c) ? Tri::False : Tri::Unknown;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

Tri tri_not(Tri a) {
  return a == Tri::Unknown ? a : (a == Tri::True ? Tri::False : Tri::True);
}

// No legal step leaves g: every kept strategy is verified best.
Tri recheck_maximal(const Restriction& g, ReductionKind kind,
                    BeliefKind beliefs) {
  Tri all = Tri::True;
  for (PlayerIndex i = 0; i < g.num_players(); ++i) {
    const ComparisonSet cmp = kind == ReductionKind::TildeInitial
                                  ? full_comparison(g.game(), i)
                                  : kept_comparison(g, i);
    for (StrategyIndex s : g.kept(i)) {
      all = tri_and(all, verified_best(g, i, s, beliefs, cmp));
      if (all == Tri::False) return all;
    }
  }
  return all;
}

Tri recheck_closed(const Restriction& g, BeliefKind beliefs) {
  return recheck_maximal(g, ReductionKind::TildeInitial, beliefs);
}

Tri recheck_trace(const Trace& t) {
  Tri ok = Tri::True;
  Restriction current = Restriction::full(t.game);
  for (const auto& step : t.steps) {
    if (!(step.from == current) || !step.to.subset_of(step.from)) {
      return Tri::False;
    }
    ok = tri_and(ok, recheck_step(step.from, step.to, t.kind, t.beliefs));
    current = step.to;
  }
  if (!(current == t.outcome)) return Tri::False;
  return tri_and(ok, recheck_maximal(t.outcome, t.kind, t.beliefs));
}

Json trace_json(const Trace& t) {
  Json j;
  j["relation"] = to_string(t.kind);
  j["beliefs"] = to_string(t.beliefs);
  j["policy"] = to_string(t.policy);
  j["seed"] = t.seed;
  Json steps = Json::array();
  for (const auto& step : t.steps) {
    steps.push_back(render_sets(*t.game, step.removed));
  }
  j["removed"] = std::move(steps);
  j["outcome"] = render_sets(*t.game, t.outcome.kept_sets());
  return j;
}

std::string render_profile(const FiniteGame& game, const JointProfile& p) {
  std::string out = "(";
  for (PlayerIndex i = 0; i < p.choices.size(); ++i) {
    if (i) out += ',';
    out += game.label(i, p.choices[i]);
  }
  return out + ")";
}

}  // namespace

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::OrderIndependence:
      return "OrderIndependence";
    case TheoremId::FastDominance_i:
      return "FastDominance_i";
    case TheoremId::FastDominance_ii:
      return "FastDominance_ii";
    case TheoremId::Equivalence_equb:
      return "Equivalence_equb";
    case TheoremId::Equivalence_equ2:
      return "Equivalence_equ2";
    case TheoremId::NashPreservation_i:
      return "NashPreservation_i";
    case TheoremId::NashPreservation_ii:
      return "NashPreservation_ii";
    case TheoremId::LargestClosed:
      return "LargestClosed";
    case TheoremId::NonDegenerateOutcome:
      return "NonDegenerateOutcome";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

Tri is_closed(const Restriction& g, BeliefKind kind,
              const OracleOptions& options) {
  return closedness(g, kind, ComparisonMode::ReferenceH, options, nullptr);
}

Tri is_closed_within(const Restriction& g, BeliefKind kind,
                     const OracleOptions& options) {
  return closedness(g, kind, ComparisonMode::ReferenceG, options, nullptr);
}

std::vector<TheoremReport> check_order_independence(
    const Instance& inst, const VerifyOptions& options) {
  TheoremReport order = make_report(TheoremId::OrderIndependence, inst, options);
  TheoremReport largest = make_report(TheoremId::LargestClosed, inst, options);
  if (!exact_kind(*inst.game, options.beliefs)) {
    const std::string why =
        "independent-mixed beliefs with three or more players have no exact "
        "certificates";
    return {unknown_report(TheoremId::OrderIndependence, inst, options, why),
            unknown_report(TheoremId::LargestClosed, inst, options, why)};
  }
  const Trace fast = run(inst, ReductionKind::TildeInitial, Policy::Fast, 0,
                         options);
  const Restriction& outcome = fast.outcome;
  const std::string outcome_text =
      render_sets(*inst.game, outcome.kept_sets());

  order.detail = "outcome " + outcome_text + " in " +
                 std::to_string(options.num_orders) + " orders";
  for (int k = 0; k < options.num_orders; ++k) {
    Trace t = run(inst, ReductionKind::TildeInitial, order_policy(k),
                  derive_seed(options.seed, k), options);
    if (!(t.outcome == outcome)) {
      fail(order, {"outcomes differ: " + describe(fast) + " vs " + describe(t),
                   {fast, std::move(t)}, {}, std::nullopt});
      break;
    }
  }

  largest.detail = "outcome " + outcome_text + " is the largest closed";
  const Tri closed = is_closed(outcome, options.beliefs, options.oracle);
  if (closed == Tri::False) {
    fail(largest, {"outcome " + outcome_text + " is not closed",
                   {fast}, {outcome}, std::nullopt});
    return {order, largest};
  }
  bool unknown = closed == Tri::Unknown;
  const Restriction full = Restriction::full(inst.game);
  std::size_t total = full.total_size();
  if (total <= options.lattice_limit) {
    LatticeOracle lattice(inst.game, options.beliefs, options.oracle);
    const std::uint32_t inner = lattice.mask_of(outcome);
    for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
      if ((mask & ~inner) == 0) continue;
      const Tri t = lattice.closed(mask, inner);
      if (t == Tri::Unknown) unknown = true;
      if (t == Tri::True) {
        const Restriction bigger = lattice.restriction_of(mask);
        fail(largest,
             {"closed restriction " +
                  render_sets(*inst.game, bigger.kept_sets()) +
                  " is not contained in the outcome " + outcome_text,
              {fast}, {bigger, outcome}, std::nullopt});
        return {order, largest};
      }
    }
    largest.detail += " (lattice of " + std::to_string(1u << total) + ")";
  } else {
    Rng rng(derive_seed(options.seed, 1u << 20));
    for (int k = 0; k < options.superset_samples; ++k) {
      const Restriction bigger = random_superset(outcome, rng);
      if (bigger == outcome) break;
      const Tri t = closedness(bigger, options.beliefs,
                               ComparisonMode::ReferenceH, options.oracle,
                               &outcome);
      if (t == Tri::Unknown) unknown = true;
      if (t == Tri::True) {
        fail(largest,
             {"closed restriction " +
                  render_sets(*inst.game, bigger.kept_sets()) +
                  " is not contained in the outcome " + outcome_text,
              {fast}, {bigger, outcome}, std::nullopt});
        return {order, largest};
      }
    }
    for (const auto& p : pure_nash(inst.game)) {
      if (!outcome.contains(p)) {
        fail(largest, {"pure Nash profile " + render_profile(*inst.game, p) +
                           " lies outside the outcome " + outcome_text,
                       {fast}, {outcome}, p});
        return {order, largest};
      }
    }
    largest.detail += " (" + std::to_string(options.superset_samples) +
                      " sampled supersets, pure Nash contained)";
  }
  if (unknown && largest.verdict == Verdict::Pass) {
    largest.verdict = Verdict::Unknown;
  }
  return {order, largest};
}

std::vector<TheoremReport> check_fast_dominance(const Instance& inst,
                                                const VerifyOptions& options) {
  TheoremReport part_i = make_report(TheoremId::FastDominance_i, inst, options);
  TheoremReport part_ii =
      make_report(TheoremId::FastDominance_ii, inst, options);
  if (!exact_kind(*inst.game, options.beliefs)) {
    const std::string why =
        "independent-mixed beliefs with three or more players have no exact "
        "certificates";
    return {unknown_report(TheoremId::FastDominance_i, inst, options, why),
            unknown_report(TheoremId::FastDominance_ii, inst, options, why)};
  }
  const Trace fast = run(inst, ReductionKind::TildeInitial, Policy::Fast, 0,
                         options);
  const auto fast_chain = restriction_chain(fast);
  std::size_t shortest = SIZE_MAX;
  for (int k = 0; k < options.num_orders; ++k) {
    Trace t = run(inst, ReductionKind::TildeInitial, order_policy(k),
                  derive_seed(options.seed, k), options);
    const auto chain = restriction_chain(t);
    const std::size_t len = std::max(chain.size(), fast_chain.size());
    for (std::size_t a = 0; a < len && part_i.verdict == Verdict::Pass; ++a) {
      const Restriction& f = fast_chain[std::min(a, fast_chain.size() - 1)];
      const Restriction& g = chain[std::min(a, chain.size() - 1)];
      if (!f.subset_of(g)) {
        fail(part_i, {"fast restriction at index " + std::to_string(a) +
                          " is not contained in " + describe(t),
                      {fast, t}, {f, g}, std::nullopt});
      }
    }
    if (t.outcome == fast.outcome) {
      shortest = std::min(shortest, t.steps.size());
      if (fast.steps.size() > t.steps.size() &&
          part_ii.verdict == Verdict::Pass) {
        fail(part_ii, {"fast takes " + std::to_string(fast.steps.size()) +
                           " steps, " + describe(t),
                       {fast, std::move(t)}, {}, std::nullopt});
      }
    }
  }
  if (part_i.verdict == Verdict::Pass) {
    part_i.detail = std::to_string(fast.steps.size()) +
                    " fast steps contained stepwise in " +
                    std::to_string(options.num_orders) + " orders";
  }
  if (part_ii.verdict == Verdict::Pass) {
    part_ii.detail = "fast steps " + std::to_string(fast.steps.size());
    if (shortest != SIZE_MAX) {
      part_ii.detail += " <= shortest order " + std::to_string(shortest);
    }
  }
  return {part_i, part_ii};
}

std::vector<TheoremReport> check_equivalence(const Instance& inst,
                                             const VerifyOptions& options) {
  TheoremReport equb = make_report(TheoremId::Equivalence_equb, inst, options);
  TheoremReport equ2 = make_report(TheoremId::Equivalence_equ2, inst, options);
  TheoremReport nondeg =
      make_report(TheoremId::NonDegenerateOutcome, inst, options);
  if (!exact_kind(*inst.game, options.beliefs)) {
    const std::string why =
        "independent-mixed beliefs with three or more players have no exact "
        "certificates";
    return {unknown_report(TheoremId::Equivalence_equb, inst, options, why),
            unknown_report(TheoremId::Equivalence_equ2, inst, options, why),
            unknown_report(TheoremId::NonDegenerateOutcome, inst, options,
                           why)};
  }
  Rng rng(derive_seed(options.seed, 1u << 21));

  const Trace fast_tilde =
      run(inst, ReductionKind::TildeInitial, Policy::Fast, 0, options);
  const Trace fast_arrow =
      run(inst, ReductionKind::ArrowCurrent, Policy::Fast, 0, options);

  // Legal -> steps are legal => steps, on sampled restrictions and along the
  // fast -> chain.
  std::vector<Restriction> samples = restriction_chain(fast_arrow);
  for (int k = 0; k < options.restriction_samples; ++k) {
    samples.push_back(random_restriction(inst.game, rng));
  }
  std::size_t checked = 0;
  for (const auto& g : samples) {
    if (equb.verdict != Verdict::Pass) break;
    const RemovalCandidates cands = legal_removal_candidates(
        g, ReductionKind::ArrowCurrent, options.beliefs, options.oracle);
    if (all_empty(cands.sets)) continue;
    StrategySets removal(g.num_players());
    bool any = false;
    for (PlayerIndex i = 0; i < g.num_players(); ++i) {
      for (StrategyIndex s : cands.sets[i]) {
        if (rng.coin()) {
          removal[i].push_back(s);
          any = true;
        }
      }
    }
    if (!any) {
      for (PlayerIndex i = 0; i < g.num_players() && !any; ++i) {
        if (!cands.sets[i].empty()) {
          removal[i].push_back(cands.sets[i].front());
          any = true;
        }
      }
    }
    const Restriction to = g.without(removal);
    const StepVerdict arrow = validate_step(
        g, to, ReductionKind::ArrowCurrent, options.beliefs, options.oracle);
    const StepVerdict darrow = validate_step(
        g, to, ReductionKind::DArrowTarget, options.beliefs, options.oracle);
    ++checked;
    if (std::holds_alternative<Rejection>(arrow) ||
        std::holds_alternative<Rejection>(darrow)) {
      fail(equb, {"step " + render_sets(*inst.game, g.kept_sets()) + " to " +
                      render_sets(*inst.game, to.kept_sets()) +
                      " is legal under -> but not under =>",
                  {}, {g, to}, std::nullopt});
    }
  }
  if (equb.verdict == Verdict::Pass) {
    equb.detail = std::to_string(checked) + " legal -> steps are => steps";
  }

  // Fast ~> and fast -> agree, and random orders of every relation share the
  // outcome.
  std::vector<Trace> traces{fast_tilde, fast_arrow};
  const ReductionKind kinds[] = {ReductionKind::TildeInitial,
                                 ReductionKind::ArrowCurrent,
                                 ReductionKind::DArrowTarget};
  for (int k = 0; k < options.num_orders; ++k) {
    traces.push_back(run(inst, kinds[k % 3], order_policy(k / 3),
                         derive_seed(options.seed, k), options));
  }
  bool unknown = false;
  for (const auto& t : traces) {
    if (t.possibly_non_maximal) unknown = true;
    if (equ2.verdict == Verdict::Pass && !(t.outcome == fast_tilde.outcome)) {
      fail(equ2, {"outcomes differ: " + describe(fast_tilde) + " vs " +
                      describe(t),
                  {fast_tilde, t}, {}, std::nullopt});
    }
    if (nondeg.verdict == Verdict::Pass &&
        classify(t.outcome) != Shape::NonDegenerate) {
      fail(nondeg, {"degenerate outcome: " + describe(t), {t}, {t.outcome},
                    std::nullopt});
    }
  }
  if (equ2.verdict == Verdict::Pass) {
    equ2.detail = "outcome " +
                  render_sets(*inst.game, fast_tilde.outcome.kept_sets()) +
                  " shared by " + std::to_string(traces.size()) + " traces";
    if (unknown) equ2.verdict = Verdict::Unknown;
  }
  if (nondeg.verdict == Verdict::Pass) {
    nondeg.detail = std::to_string(traces.size()) + " outcomes non-degenerate";
  }
  return {equb, equ2, nondeg};
}

std::vector<JointProfile> pure_nash(const Restriction& g) {
  if (classify(g) != Shape::NonDegenerate) {
    throw InputError("pure Nash equilibria of a degenerate restriction");
  }
  const FiniteGame& game = g.game();
  const std::size_t n = g.num_players();
  std::vector<JointProfile> out;
  std::vector<std::size_t> pos(n, 0);
  JointProfile p;
  p.choices.resize(n);
  while (true) {
    for (PlayerIndex i = 0; i < n; ++i) p.choices[i] = g.kept(i)[pos[i]];
    bool nash = true;
    for (PlayerIndex i = 0; i < n && nash; ++i) {
      const Rational& mine = game.payoff(p, i);
      JointProfile q = p;
      for (StrategyIndex t : g.kept(i)) {
        q.choices[i] = t;
        if (game.payoff(q, i) > mine) {
          nash = false;
          break;
        }
      }
    }
    if (nash) out.push_back(p);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pos[i] < g.size(i)) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::vector<JointProfile> pure_nash(const GamePtr& game) {
  return pure_nash(Restriction::full(game));
}

std::vector<TheoremReport> check_nash_preservation(
    const Instance& inst, const VerifyOptions& options) {
  TheoremReport part_i =
      make_report(TheoremId::NashPreservation_i, inst, options);
  TheoremReport part_ii =
      make_report(TheoremId::NashPreservation_ii, inst, options);
  part_i.beliefs = part_ii.beliefs = BeliefKind::Pure;
  VerifyOptions pure = options;
  pure.beliefs = BeliefKind::Pure;

  const std::vector<JointProfile> nash_h = pure_nash(inst.game);
  std::vector<Trace> traces{
      run(inst, ReductionKind::TildeInitial, Policy::Fast, 0, pure)};
  for (int k = 0; k < options.num_orders; ++k) {
    traces.push_back(run(inst, ReductionKind::TildeInitial, order_policy(k),
                         derive_seed(options.seed, k), pure));
  }
  for (const auto& t : traces) {
    const std::vector<JointProfile> nash_g =
        classify(t.outcome) == Shape::NonDegenerate ? pure_nash(t.outcome)
                                                    : std::vector<JointProfile>{};
    for (const auto& p : nash_h) {
      if (part_i.verdict == Verdict::Pass && !contains_profile(nash_g, p)) {
        fail(part_i, {"Nash profile " + render_profile(*inst.game, p) +
                          " of the game is not Nash in the outcome of " +
                          describe(t),
                      {t}, {t.outcome}, p});
      }
    }
    for (const auto& p : nash_g) {
      if (part_ii.verdict == Verdict::Pass && !contains_profile(nash_h, p)) {
        fail(part_ii, {"Nash profile " + render_profile(*inst.game, p) +
                           " of the outcome of " + describe(t) +
                           " is not Nash in the game",
                       {t}, {t.outcome}, p});
      }
    }
  }
  std::string set = "{";
  for (std::size_t k = 0; k < nash_h.size(); ++k) {
    if (k) set += ',';
    set += render_profile(*inst.game, nash_h[k]);
  }
  set += "}";
  const std::string detail =
      "Nash set " + set + " preserved by " + std::to_string(traces.size()) +
      " traces";
  if (part_i.verdict == Verdict::Pass) part_i.detail = detail;
  if (part_ii.verdict == Verdict::Pass) part_ii.detail = detail;
  return {part_i, part_ii};
}

std::vector<TheoremReport> check_all(const Instance& inst,
                                     const VerifyOptions& options) {
  std::vector<TheoremReport> out;
  for (auto* check : {check_order_independence, check_fast_dominance,
                      check_equivalence}) {
    auto reports = check(inst, options);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  if (options.beliefs == BeliefKind::Pure) {
    auto reports = check_nash_preservation(inst, options);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  return out;
}

Tri recheck_step(const Restriction& from, const Restriction& to,
                 ReductionKind kind, BeliefKind beliefs) {
  if (!to.subset_of(from) || to == from) return Tri::False;
  Tri legal = Tri::True;
  const StrategySets removed = from.minus(to);
  for (PlayerIndex i = 0; i < from.num_players(); ++i) {
    const ComparisonSet cmp = recheck_comparison(kind, from, to, i);
    for (StrategyIndex s : removed[i]) {
      legal = tri_and(legal, tri_not(verified_best(from, i, s, beliefs, cmp)));
      if (legal == Tri::False) return legal;
    }
  }
  return legal;
}

bool recheck_failure(const TheoremReport& report) {
  if (report.verdict != Verdict::Fail || !report.counterexample) return false;
  const Counterexample& ce = *report.counterexample;
  const auto traces_ok = [&] {
    return std::all_of(ce.traces.begin(), ce.traces.end(),
                       [](const Trace& t) { return recheck_trace(t) == Tri::True; });
  };
  switch (report.theorem) {
    case TheoremId::OrderIndependence:
    case TheoremId::Equivalence_equ2:
      return ce.traces.size() == 2 && traces_ok() &&
             !(ce.traces[0].outcome == ce.traces[1].outcome);
    case TheoremId::FastDominance_i:
      return ce.traces.size() == 2 && ce.restrictions.size() == 2 &&
             traces_ok() && !ce.restrictions[0].subset_of(ce.restrictions[1]);
    case TheoremId::FastDominance_ii:
      return ce.traces.size() == 2 && traces_ok() &&
             ce.traces[0].outcome == ce.traces[1].outcome &&
             ce.traces[0].steps.size() > ce.traces[1].steps.size();
    case TheoremId::Equivalence_equb: {
      if (ce.restrictions.size() != 2) return false;
      const auto& from = ce.restrictions[0];
      const auto& to = ce.restrictions[1];
      return recheck_step(from, to, ReductionKind::ArrowCurrent,
                          report.beliefs) == Tri::True &&
             recheck_step(from, to, ReductionKind::DArrowTarget,
                          report.beliefs) == Tri::False;
    }
    case TheoremId::LargestClosed: {
      if (ce.restrictions.size() == 1 && !ce.profile) {
        return recheck_closed(ce.restrictions[0], report.beliefs) == Tri::False;
      }
      if (ce.restrictions.size() == 1 && ce.profile) {
        const Restriction single(
            ce.restrictions[0].game_ptr(),
            [&] {
              StrategySets sets;
              for (StrategyIndex s : ce.profile->choices) sets.push_back({s});
              return sets;
            }());
        return !ce.restrictions[0].contains(*ce.profile) &&
               recheck_closed(single, report.beliefs) == Tri::True;
      }
      if (ce.restrictions.size() != 2) return false;
      return !ce.restrictions[0].subset_of(ce.restrictions[1]) &&
             recheck_closed(ce.restrictions[0], report.beliefs) == Tri::True;
    }
    case TheoremId::NonDegenerateOutcome:
      return ce.traces.size() == 1 && traces_ok() &&
             classify(ce.traces[0].outcome) != Shape::NonDegenerate;
    case TheoremId::NashPreservation_i:
    case TheoremId::NashPreservation_ii: {
      if (ce.traces.size() != 1 || !ce.profile) return false;
      const Trace& t = ce.traces[0];
      const FiniteGame& game = *t.game;
      const auto nash_in = [&](const Restriction& g) {
        if (!g.contains(*ce.profile)) return false;
        for (PlayerIndex i = 0; i < g.num_players(); ++i) {
          JointProfile q = *ce.profile;
          for (StrategyIndex s : g.kept(i)) {
            q.choices[i] = s;
            if (game.payoff(q, i) > game.payoff(*ce.profile, i)) return false;
          }
        }
        return true;
      };
      const bool in_h = nash_in(Restriction::full(t.game));
      const bool in_g = nash_in(t.outcome);
      return traces_ok() && in_h != in_g;
    }
  }
  return false;
}

std::string render_record(const TheoremReport& report) {
  Json j;
  j["theorem_id"] = to_string(report.theorem);
  j["game"] = report.game;
  j["game_hash"] = report.game_hash;
  j["seed"] = report.seed;
  j["beliefs"] = to_string(report.beliefs);
  j["verdict"] = to_string(report.verdict);
  j["detail"] = report.detail;
  if (report.counterexample) {
    const Counterexample& ce = *report.counterexample;
    Json c;
    c["summary"] = ce.summary;
    Json traces = Json::array();
    for (const auto& t : ce.traces) traces.push_back(trace_json(t));
    c["traces"] = std::move(traces);
    Json rs = Json::array();
    for (const auto& r : ce.restrictions) {
      rs.push_back(render_restriction_literal(r));
    }
    c["restrictions"] = std::move(rs);
    if (ce.profile && !ce.restrictions.empty()) {
      c["profile"] =
          render_profile(ce.restrictions.front().game(), *ce.profile);
    } else {
      c["profile"] = nullptr;
    }
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump();
}

std::string render_text(const TheoremReport& report) {
  std::ostringstream os;
  os << to_string(report.theorem) << ' ' << to_string(report.verdict)
     << " game=" << report.game << " hash=" << report.game_hash
     << " beliefs=" << to_string(report.beliefs) << " seed=" << report.seed;
  if (!report.detail.empty()) os << " : " << report.detail;
  return os.str();
}

}  // namespace nbr
