#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nbr/beliefs.hpp"
#include "nbr/game.hpp"

namespace nbr {

// The own strategies a candidate must weakly beat. T_i for the
// initial-game relation, S_i for the current-game relation, S'_i for the
// target-game relation.
struct ComparisonSet {
  PlayerIndex player = 0;
  std::vector<StrategyIndex> candidates;
};

ComparisonSet full_comparison(const FiniteGame& game, PlayerIndex player);
ComparisonSet kept_comparison(const Restriction& g, PlayerIndex player);

enum class ProofKind { Exhaustive, LPInfeasible, DominatedBy };

struct IsBestResponse {
  Belief witness;
};

struct NeverBestResponse {
  ProofKind proof = ProofKind::Exhaustive;
  // Set iff proof == DominatedBy: a mixed strategy over the comparison set
  // that strictly beats the strategy against every narrowed opponent profile.
  std::optional<MixedStrategy> dominator;
};

// Independent-mixed beliefs with three or more players: no grid witness up
// to the resolution and no correlated infeasibility proof either.
struct Inconclusive {
  int resolution = 0;
};

// The narrowed belief set is empty (an opponent's kept set is empty), so any
// elimination of the strategy holds vacuously.
struct EmptyBeliefSet {};

using Certificate =
    std::variant<IsBestResponse, NeverBestResponse, Inconclusive,
                 EmptyBeliefSet>;

bool is_never_best(const Certificate& c);
bool is_best(const Certificate& c);
bool is_inconclusive(const Certificate& c);
bool is_empty_beliefs(const Certificate& c);

struct OracleOptions {
  // Largest denominator tried by the independent-mixed grid search.
  int grid_resolution = 8;
  // Replace LP infeasibility proofs by explicit dominating mixed strategies.
  bool dominance_proof = false;
};

// p_i(s, mu) >= p_i(t, mu) for every t in cmp. Throws InputError on a
// malformed belief.
bool is_best_response(const FiniteGame& game, PlayerIndex player,
                      StrategyIndex s, const Belief& belief,
                      const ComparisonSet& cmp);

// Decides whether some mu in B_i narrowed to g makes s weakly best within
// cmp. A hint belief is tried first and returned if it already works.
Certificate find_witness(const Restriction& g, PlayerIndex player,
                         StrategyIndex s, BeliefKind kind,
                         const ComparisonSet& cmp,
                         const OracleOptions& options = {},
                         const Belief* hint = nullptr);

// Mixed strategy over cmp strictly dominating s on S_{-i}, via a second
// exact LP; nullopt if none exists (then s is a best response to some
// correlated belief).
std::optional<MixedStrategy> dominating_strategy(const Restriction& g,
                                                 PlayerIndex player,
                                                 StrategyIndex s,
                                                 const ComparisonSet& cmp);

// Arithmetic-only check of a dominance certificate.
bool verify_dominance(const Restriction& g, PlayerIndex player,
                      StrategyIndex s, const ComparisonSet& cmp,
                      const MixedStrategy& dominator);

// Marks, over the player's full index range, the kept strategies that are
// weakly best within cmp against at least one opponent profile of g.
std::vector<bool> pure_best_responses(const Restriction& g, PlayerIndex player,
                                      const ComparisonSet& cmp);

enum class ComparisonMode { ReferenceH, ReferenceG };

// Certificates remembered across the steps of one elimination run.
// Witnesses are reusable whenever their support survives, since comparison
// sets never grow along a run. Never-best certificates against the full
// strategy set stay valid on every sub-restriction.
class CertificateCache {
 public:
  explicit CertificateCache(BeliefKind kind) : kind_(kind) {}

  BeliefKind kind() const { return kind_; }

  const Belief* witness(PlayerIndex player, StrategyIndex s) const;
  void remember_witness(PlayerIndex player, StrategyIndex s, Belief belief);

  const NeverBestResponse* reference_never_best(PlayerIndex player,
                                                StrategyIndex s) const;
  void remember_reference_never_best(PlayerIndex player, StrategyIndex s,
                                     NeverBestResponse proof);

 private:
  BeliefKind kind_;
  std::map<std::pair<PlayerIndex, StrategyIndex>, Belief> witnesses_;
  std::map<std::pair<PlayerIndex, StrategyIndex>, NeverBestResponse>
      reference_nbr_;
};

struct NeverBestSet {
  StrategySets removable;
  // One entry per removable or inconclusive strategy.
  std::map<std::pair<PlayerIndex, StrategyIndex>, Certificate> certificates;
  bool inconclusive = false;  // some strategy kept for lack of a certificate
  bool vacuous = false;       // some removal rests on an empty belief set
};

// Per player, the kept strategies certified never-best against cmp = T_i
// (ReferenceH) or cmp = S_i (ReferenceG). Inconclusive strategies are kept.
NeverBestSet never_best_set(const Restriction& g, BeliefKind kind,
                            ComparisonMode mode,
                            const OracleOptions& options = {},
                            CertificateCache* cache = nullptr);

// NBR(exhaustive) / NBR(lp) / NBR(dominated=[T:1]) / NBR(empty-beliefs) /
// BR(witness=...) / INCONCLUSIVE(res=k). `player` owns the certificate.
std::string render_certificate(const FiniteGame& game, PlayerIndex player,
                               const Certificate& c);

}  // namespace nbr
