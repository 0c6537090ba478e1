#include "nbr/reductions.hpp"

#include <sstream>

#include "nbr/errors.hpp"
#include "nbr/game_io.hpp"
#include "nbr/rng.hpp"

namespace nbr {

namespace {

ComparisonSet comparison_for(ReductionKind kind, const Restriction& from,
                             const Restriction& to, PlayerIndex player) {
  switch (kind) {
    case ReductionKind::TildeInitial:
      return full_comparison(from.game(), player);
    case ReductionKind::ArrowCurrent:
      return kept_comparison(from, player);
    case ReductionKind::DArrowTarget:
      return kept_comparison(to, player);
  }
  throw InputError("unknown reduction kind");
}

ComparisonMode mode_for(ReductionKind kind) {
  return kind == ReductionKind::TildeInitial ? ComparisonMode::ReferenceH
                                             : ComparisonMode::ReferenceG;
}

// Certificate for removing s from `from`, honoring the cache.
Certificate certify(const Restriction& from, PlayerIndex player,
                    StrategyIndex s, ReductionKind kind, BeliefKind beliefs,
                    const ComparisonSet& cmp, const OracleOptions& options,
                    CertificateCache* cache) {
  if (cache && kind == ReductionKind::TildeInitial) {
    if (const auto* known = cache->reference_never_best(player, s)) {
      return *known;
    }
  }
  const Belief* hint = cache ? cache->witness(player, s) : nullptr;
  Certificate c = find_witness(from, player, s, beliefs, cmp, options, hint);
  if (cache) {
    if (const auto* br = std::get_if<IsBestResponse>(&c)) {
      cache->remember_witness(player, s, br->witness);
    } else if (const auto* nbr = std::get_if<NeverBestResponse>(&c);
               nbr && kind == ReductionKind::TildeInitial) {
      cache->remember_reference_never_best(player, s, *nbr);
    }
  }
  return c;
}

std::string removal_error(const FiniteGame& game, const Rejection& r) {
  return "illegal step: strategy " + game.label(r.player, r.strategy) +
         " of player " + std::to_string(r.player + 1) + " has certificate " +
         render_certificate(game, r.player, r.certificate);
}

struct Choice {
  PlayerIndex player;
  StrategyIndex strategy;
};

StrategySets to_sets(std::size_t n, const std::vector<Choice>& choices) {
  StrategySets sets(n);
  for (const auto& c : choices) sets[c.player].push_back(c.strategy);
  return sets;
}

}  // namespace

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::TildeInitial:
      return "~>";
    case ReductionKind::ArrowCurrent:
      return "->";
    case ReductionKind::DArrowTarget:
      return "=>";
  }
  return "?";
}

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::Fast:
      return "fast";
    case Policy::RandomPartial:
      return "random-partial";
    case Policy::SingleRandom:
      return "single-random";
    case Policy::UserScript:
      return "script";
  }
  return "?";
}

StepVerdict validate_step(const Restriction& from, const Restriction& to,
                          ReductionKind kind, BeliefKind beliefs,
                          const OracleOptions& options,
                          CertificateCache* cache) {
  if (!from.same_parent(to)) {
    throw InputError("restrictions of different games");
  }
  if (!to.subset_of(from)) {
    throw InputError("target restriction is not contained in the source");
  }
  if (to == from) throw InputError("a step must remove at least one strategy");
  Step step{from, to, from.minus(to), kind, beliefs, {}, false};
  for (PlayerIndex i = 0; i < from.num_players(); ++i) {
    if (step.removed[i].empty()) continue;
    const ComparisonSet cmp = comparison_for(kind, from, to, i);
    for (StrategyIndex s : step.removed[i]) {
      Certificate c =
          certify(from, i, s, kind, beliefs, cmp, options, cache);
      if (is_best(c) || is_inconclusive(c)) {
        return Rejection{i, s, std::move(c)};
      }
      if (is_empty_beliefs(c)) step.vacuous = true;
      step.certificates.emplace(std::make_pair(i, s), std::move(c));
    }
  }
  return step;
}

std::optional<Step> fast_step(const Restriction& g, ReductionKind kind,
                              BeliefKind beliefs, const OracleOptions& options,
                              CertificateCache* cache) {
  if (kind == ReductionKind::DArrowTarget) {
    throw UnsupportedError(
        "the target-referenced relation => has no fast variant");
  }
  NeverBestSet nbs = never_best_set(g, beliefs, mode_for(kind), options, cache);
  if (all_empty(nbs.removable)) return std::nullopt;
  Step step{g, g.without(nbs.removable), nbs.removable, kind, beliefs, {},
            nbs.vacuous};
  for (auto& [key, c] : nbs.certificates) {
    if (!is_inconclusive(c)) step.certificates.emplace(key, std::move(c));
  }
  return step;
}

RemovalCandidates legal_removal_candidates(const Restriction& g,
                                           ReductionKind kind,
                                           BeliefKind beliefs,
                                           const OracleOptions& options,
                                           CertificateCache* cache) {
  // Removing {s} alone under => compares against S_i \ {s}. Since s always
  // ties with itself, that is the same test as against S_i, so the singleton
  // candidates are exactly the -> candidates.
  NeverBestSet nbs =
      never_best_set(g, beliefs, mode_for(kind), options, cache);
  RemovalCandidates out;
  out.sets = std::move(nbs.removable);
  out.certificates = std::move(nbs.certificates);
  out.inconclusive = nbs.inconclusive;
  out.vacuous = nbs.vacuous;
  return out;
}

Trace iterate(const GamePtr& game, ReductionKind kind, BeliefKind beliefs,
              const IterateOptions& options) {
  if (options.policy == Policy::Fast && kind == ReductionKind::DArrowTarget) {
    throw UnsupportedError(
        "the target-referenced relation => has no fast variant");
  }
  Trace trace{game, kind, beliefs, options.policy, options.seed, {},
              Restriction::full(game), false};
  CertificateCache cache(beliefs);
  Rng rng(options.seed);
  Restriction current = Restriction::full(game);
  const std::size_t n = game->num_players();

  if (options.policy == Policy::UserScript) {
    for (std::size_t k = 0; k < options.script.size(); ++k) {
      const auto& removal = options.script[k];
      if (removal.size() != n) {
        throw InputError("scripted step " + std::to_string(k + 1) +
                         " has the wrong number of players");
      }
      for (PlayerIndex i = 0; i < n; ++i) {
        for (StrategyIndex s : removal[i]) {
          if (!current.contains(i, s)) {
            throw InputError("scripted step " + std::to_string(k + 1) +
                             " removes a strategy that is not kept");
          }
        }
      }
      StepVerdict v = validate_step(current, current.without(removal), kind,
                                    beliefs, options.oracle, &cache);
      if (const auto* r = std::get_if<Rejection>(&v)) {
        throw InputError("scripted step " + std::to_string(k + 1) + ": " +
                         removal_error(*game, *r));
      }
      Step& step = std::get<Step>(v);
      current = step.to;
      trace.steps.push_back(std::move(step));
    }
    trace.outcome = current;
    trace.possibly_non_maximal =
        !is_maximal(current, kind, beliefs, options.oracle);
    return trace;
  }

  while (true) {
    if (options.policy == Policy::Fast) {
      NeverBestSet nbs =
          never_best_set(current, beliefs, mode_for(kind), options.oracle,
                         &cache);
      if (all_empty(nbs.removable)) {
        trace.possibly_non_maximal = nbs.inconclusive;
        break;
      }
      Step step{current, current.without(nbs.removable), nbs.removable, kind,
                beliefs, {}, nbs.vacuous};
      for (auto& [key, c] : nbs.certificates) {
        if (!is_inconclusive(c)) step.certificates.emplace(key, std::move(c));
      }
      current = step.to;
      trace.steps.push_back(std::move(step));
      continue;
    }

    RemovalCandidates cands =
        legal_removal_candidates(current, kind, beliefs, options.oracle,
                                 &cache);
    std::vector<Choice> pool;
    for (PlayerIndex i = 0; i < n; ++i) {
      for (StrategyIndex s : cands.sets[i]) pool.push_back({i, s});
    }
    if (pool.empty()) {
      trace.possibly_non_maximal = cands.inconclusive;
      break;
    }
    std::vector<Choice> chosen;
    if (options.policy == Policy::SingleRandom) {
      chosen.push_back(pool[rng.below(pool.size())]);
    } else {
      while (chosen.empty()) {
        for (const auto& c : pool) {
          if (rng.coin()) chosen.push_back(c);
        }
      }
    }

    if (kind == ReductionKind::DArrowTarget && chosen.size() > 1) {
      // Joint removals under => need their own validation; shrink on failure.
      while (true) {
        const StrategySets removal = to_sets(n, chosen);
        StepVerdict v = validate_step(current, current.without(removal), kind,
                                      beliefs, options.oracle, &cache);
        if (auto* step = std::get_if<Step>(&v)) {
          current = step->to;
          trace.steps.push_back(std::move(*step));
          break;
        }
        const auto& r = std::get<Rejection>(v);
        std::erase_if(chosen, [&](const Choice& c) {
          return c.player == r.player && c.strategy == r.strategy;
        });
      }
      continue;
    }

    const StrategySets removal = to_sets(n, chosen);
    Step step{current, current.without(removal), removal, kind, beliefs, {},
              false};
    for (const auto& c : chosen) {
      const auto& cert = cands.certificates.at({c.player, c.strategy});
      if (is_empty_beliefs(cert)) step.vacuous = true;
      step.certificates.emplace(std::make_pair(c.player, c.strategy), cert);
    }
    current = step.to;
    trace.steps.push_back(std::move(step));
  }
  trace.outcome = current;
  return trace;
}

bool is_maximal(const Restriction& outcome, ReductionKind kind,
                BeliefKind beliefs, const OracleOptions& options) {
  const RemovalCandidates cands =
      legal_removal_candidates(outcome, kind, beliefs, options);
  return all_empty(cands.sets) && !cands.inconclusive;
}

std::vector<Restriction> restriction_chain(const Trace& trace) {
  std::vector<Restriction> chain{Restriction::full(trace.game)};
  for (const auto& step : trace.steps) chain.push_back(step.to);
  return chain;
}

std::string render_step(std::size_t k, const Step& step) {
  const FiniteGame& game = step.from.game();
  std::ostringstream os;
  os << "step " << k << " kind=" << to_string(step.kind)
     << " removed=" << render_sets(game, step.removed)
     << " -> kept=" << render_sets(game, step.to.kept_sets());
  if (step.vacuous) os << " vacuous";
  return os.str();
}

std::string render_trace(const Trace& trace) {
  const FiniteGame& game = *trace.game;
  std::ostringstream os;
  os << "trace relation=" << to_string(trace.kind)
     << " beliefs=" << to_string(trace.beliefs)
     << " policy=" << to_string(trace.policy) << " seed=" << trace.seed
     << " game=" << game_hash(game) << '\n';
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    os << render_step(k + 1, trace.steps[k]) << '\n';
  }
  os << "outcome kept=" << render_sets(game, trace.outcome.kept_sets())
     << " steps=" << trace.steps.size();
  if (trace.possibly_non_maximal) os << " sound-possibly-non-maximal";
  os << '\n';
  os << "certificates:\n";
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    for (const auto& [key, c] : trace.steps[k].certificates) {
      os << "  step " << (k + 1) << " p" << (key.first + 1) << ':'
         << game.label(key.first, key.second) << ' '
         << render_certificate(game, key.first, c) << '\n';
    }
  }
  return os.str();
}

}  // namespace nbr
