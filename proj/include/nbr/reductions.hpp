#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nbr/beliefs.hpp"
#include "nbr/game.hpp"
#include "nbr/oracle.hpp"

namespace nbr {

// Which own strategies a removed strategy is compared against:
//   TildeInitial  (~>)  the initial game's full sets T_i
//   ArrowCurrent  (->)  the current sets S_i
//   DArrowTarget  (=>)  the reduced sets S'_i
enum class ReductionKind { TildeInitial, ArrowCurrent, DArrowTarget };

std::string to_string(ReductionKind kind);  // "~>", "->", "=>"

struct Step {
  Restriction from;
  Restriction to;
  StrategySets removed;
  ReductionKind kind = ReductionKind::TildeInitial;
  BeliefKind beliefs = BeliefKind::Pure;
  std::map<std::pair<PlayerIndex, StrategyIndex>, Certificate> certificates;
  bool vacuous = false;  // some removal rests on an empty belief set
};

// A removed strategy that still has a witness (or could not be certified).
struct Rejection {
  PlayerIndex player = 0;
  StrategyIndex strategy = 0;
  Certificate certificate;
};

using StepVerdict = std::variant<Step, Rejection>;

enum class Policy { Fast, RandomPartial, SingleRandom, UserScript };

std::string to_string(Policy policy);

struct IterateOptions {
  Policy policy = Policy::Fast;
  std::uint64_t seed = 0;
  OracleOptions oracle;
  // Removal schedule for Policy::UserScript, one entry per step.
  std::vector<StrategySets> script;
};

struct Trace {
  GamePtr game;
  ReductionKind kind = ReductionKind::TildeInitial;
  BeliefKind beliefs = BeliefKind::Pure;
  Policy policy = Policy::Fast;
  std::uint64_t seed = 0;
  std::vector<Step> steps;
  Restriction outcome;
  // Inconclusive certificates kept some strategy at the end: every step is
  // certified, but the outcome may admit a further step.
  bool possibly_non_maximal = false;
};

// Throws InputError unless to is a proper sub-restriction of from.
StepVerdict validate_step(const Restriction& from, const Restriction& to,
                          ReductionKind kind, BeliefKind beliefs,
                          const OracleOptions& options = {},
                          CertificateCache* cache = nullptr);

// Removes every certified never-best strategy, or returns nullopt at a fixed
// point. Throws UnsupportedError for DArrowTarget, which has no fast form.
std::optional<Step> fast_step(const Restriction& g, ReductionKind kind,
                              BeliefKind beliefs,
                              const OracleOptions& options = {},
                              CertificateCache* cache = nullptr);

struct RemovalCandidates {
  StrategySets sets;
  std::map<std::pair<PlayerIndex, StrategyIndex>, Certificate> certificates;
  bool inconclusive = false;
  bool vacuous = false;
};

// Strategies whose removal alone is a legal step. For ~> and -> any subset
// of these is legal; for => a joint removal must be re-validated.
RemovalCandidates legal_removal_candidates(const Restriction& g,
                                           ReductionKind kind,
                                           BeliefKind beliefs,
                                           const OracleOptions& options = {},
                                           CertificateCache* cache = nullptr);

// Applies legal steps per the policy until none remains. Throws
// UnsupportedError for Fast with DArrowTarget and InputError carrying the
// rejection when a scripted step is illegal.
Trace iterate(const GamePtr& game, ReductionKind kind, BeliefKind beliefs,
              const IterateOptions& options = {});

// True iff no legal step leaves the outcome (a singleton sweep for =>).
// Inconclusive certificates count as possible steps.
bool is_maximal(const Restriction& outcome, ReductionKind kind,
                BeliefKind beliefs, const OracleOptions& options = {});

// Index-aligned restrictions G_0 = H, G_1, ..., G_k = outcome.
std::vector<Restriction> restriction_chain(const Trace& trace);

// step <k> kind=<~>|->|=>> removed={...} -> kept={...}, then certificate
// lines. Deterministic.
std::string render_step(std::size_t k, const Step& step);
std::string render_trace(const Trace& trace);

}  // namespace nbr
