#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nbr/beliefs.hpp"
#include "nbr/game.hpp"
#include "nbr/oracle.hpp"
#include "nbr/reductions.hpp"

namespace nbr {

enum class Tri { False, True, Unknown };

// Every kept strategy is a best response within T_i to some belief narrowed
// to g. Empty restrictions are closed.
Tri is_closed(const Restriction& g, BeliefKind kind,
              const OracleOptions& options = {});

// Same with the comparison set S_i of g itself (the -> / => variant).
Tri is_closed_within(const Restriction& g, BeliefKind kind,
                     const OracleOptions& options = {});

enum class TheoremId {
  OrderIndependence,
  FastDominance_i,
  FastDominance_ii,
  Equivalence_equb,
  Equivalence_equ2,
  NashPreservation_i,
  NashPreservation_ii,
  LargestClosed,
  NonDegenerateOutcome,
};

std::string to_string(TheoremId id);

enum class Verdict { Pass, Fail, Unknown };

std::string to_string(Verdict v);

struct Counterexample {
  std::string summary;
  // Traces whose comparison exhibits the failure (e.g. two outcomes).
  std::vector<Trace> traces;
  // A step (from, to) or a restriction (largest-closed, degenerate outcome).
  std::vector<Restriction> restrictions;
  std::optional<JointProfile> profile;
};

struct TheoremReport {
  TheoremId theorem = TheoremId::OrderIndependence;
  std::string game;  // catalog name or a descriptor
  std::string game_hash;
  std::uint64_t seed = 0;
  BeliefKind beliefs = BeliefKind::Pure;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::optional<Counterexample> counterexample;
};

struct VerifyOptions {
  BeliefKind beliefs = BeliefKind::Pure;
  int num_orders = 20;
  std::uint64_t seed = 0;
  OracleOptions oracle;
  // Sampled restrictions per game for the step-equivalence check.
  int restriction_samples = 8;
  // Sampled supersets when the lattice is too big to enumerate.
  int superset_samples = 20;
  // Exhaustive largest-closed check when sum |T_i| is at most this.
  std::size_t lattice_limit = 12;
};

struct Instance {
  std::string name;
  GamePtr game;
};

// Fast ~> against num_orders random maximal ~> orders, alternating
// RandomPartial and SingleRandom. Reports OrderIndependence and
// LargestClosed.
std::vector<TheoremReport> check_order_independence(
    const Instance& inst, const VerifyOptions& options);

// Stepwise G'_a subset of G''_a against each random order (part i) and the
// step-count bound when outcomes coincide (part ii).
std::vector<TheoremReport> check_fast_dominance(const Instance& inst,
                                                const VerifyOptions& options);

// Legal -> steps from sampled restrictions are legal => steps; fast ~> and
// fast -> agree and random ~>, ->, => orders share that outcome, which is
// non-degenerate.
std::vector<TheoremReport> check_equivalence(const Instance& inst,
                                             const VerifyOptions& options);

// Profiles where every player's choice is a best response within the kept
// sets. Throws InputError on a degenerate restriction.
std::vector<JointProfile> pure_nash(const Restriction& g);
std::vector<JointProfile> pure_nash(const GamePtr& game);

// Pure beliefs only: Nash sets of H and of every sampled maximal ~> outcome
// coincide.
std::vector<TheoremReport> check_nash_preservation(
    const Instance& inst, const VerifyOptions& options);

std::vector<TheoremReport> check_all(const Instance& inst,
                                     const VerifyOptions& options);

// Independent re-check of a failing report: re-derives legality of the
// steps and restrictions involved by pure enumeration or by arithmetic
// verification of witnesses and dominance certificates, without trusting
// the engine's verdicts. True iff the failure is confirmed.
bool recheck_failure(const TheoremReport& report);

// Arithmetic-only legality of a step: witnesses and dominance certificates
// are produced afresh and then verified by expected-payoff evaluation.
Tri recheck_step(const Restriction& from, const Restriction& to,
                 ReductionKind kind, BeliefKind beliefs);

// Record fields in fixed order: theorem_id, game, game_hash, seed, beliefs,
// verdict, detail, counterexample.
std::string render_record(const TheoremReport& report);
std::string render_text(const TheoremReport& report);

}  // namespace nbr
