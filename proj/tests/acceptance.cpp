// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nbr/catalog.hpp"
#include "nbr/cli.hpp"
#include "nbr/oracle.hpp"
#include "nbr/reductions.hpp"
#include "nbr/verification.hpp"
#include "oracles.hpp"

using namespace nbr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;
std::map<int, std::string> lines;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  lines[id] = "criterion " + std::to_string(id) + (ok ? " PASS " : " FAIL ") + title +
              ": " + detail;
  if (!ok) ++failures;
}

GamePtr share(FiniteGame g) { return std::make_shared<const FiniteGame>(std::move(g)); }

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  for (const char* name : {"section5", "bertrand100", "hotelling99"}) {
    const CatalogEntry e = catalog_entry(name);
    out.push_back({e.name, e.game});
  }
  for (auto& e : random_corpus(500, 100)) out.push_back({e.name, e.game});
  return out;
}

struct Tally {
  std::size_t checked = 0;
  std::size_t bad = 0;
  std::string first_bad;

  void add(const TheoremReport& r) {
    ++checked;
    if (r.verdict != Verdict::Pass) {
      if (bad++ == 0) first_bad = render_text(r);
    }
  }
  std::string detail() const {
    std::string d = std::to_string(checked) + " reports, " + std::to_string(bad) +
                    " not passing";
    if (bad) d += "; first: " + first_bad;
    return d;
  }
};

void criterion1() {
  const GamePtr h = share(section5_game());
  const Restriction g(h, {{1, 2}, {0, 1}});
  const Restriction g2(h, {{1}, {0, 1}});
  const auto start = Clock::now();
  const StepVerdict tilde =
      validate_step(g, g2, ReductionKind::TildeInitial, BeliefKind::Pure);
  const StepVerdict arrow =
      validate_step(g, g2, ReductionKind::ArrowCurrent, BeliefKind::Pure);
  const double ms = seconds_since(start) * 1000;
  bool ok = std::holds_alternative<Step>(tilde);
  std::string witness = "none";
  if (const auto* r = std::get_if<Rejection>(&arrow)) {
    witness = render_certificate(*h, r->player, r->certificate);
    ok = ok && r->player == 0 && r->strategy == 2 &&
         witness == "BR(witness=pure(L))";
  } else {
    ok = false;
  }
  ok = ok && ms < 10;
  char buf[160];
  std::snprintf(buf, sizeof buf, "~> legal, -> rejected B with %s, %.3f ms",
                witness.c_str(), ms);
  report(1, "three-by-two step", ok, buf);
}

// Criteria 2, 3, 4, 6 share one pass over the corpus.
void corpus_criteria() {
  const std::vector<Instance> games = corpus();
  Tally order, dominance, equivalence, nash;
  double order_seconds = 0;
  std::string nash_bertrand, nash_hotelling;
  for (BeliefKind beliefs : {BeliefKind::Pure, BeliefKind::Correlated}) {
    VerifyOptions o;
    o.beliefs = beliefs;
    o.num_orders = 20;
    for (const Instance& inst : games) {
      auto start = Clock::now();
      for (const auto& r : check_order_independence(inst, o)) order.add(r);
      order_seconds += seconds_since(start);
      for (const auto& r : check_fast_dominance(inst, o)) dominance.add(r);
      for (const auto& r : check_equivalence(inst, o)) equivalence.add(r);
      if (beliefs == BeliefKind::Pure) {
        const auto reports = check_nash_preservation(inst, o);
        for (const auto& r : reports) nash.add(r);
        if (inst.name == "bertrand100") nash_bertrand = reports[0].detail;
        if (inst.name == "hotelling99") nash_hotelling = reports[0].detail;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1f s", order_seconds);
  report(2, "order independence", order.bad == 0 && order_seconds < 120,
         order.detail() + buf);
  report(3, "fast dominance", dominance.bad == 0, dominance.detail());
  report(4, "equivalence", equivalence.bad == 0, equivalence.detail());
  const bool named = nash_bertrand.find("{(1,1)}") != std::string::npos &&
                     nash_hotelling.find("{(50,50)}") != std::string::npos;
  report(6, "nash preservation", nash.bad == 0 && named,
         nash.detail() + "; bertrand100 " + nash_bertrand + "; hotelling99 " +
             nash_hotelling);
}

void criterion5() {
  struct Truth {
    const char* name;
    oracle::Sets outcome;
    std::size_t rounds;
  };
  // Rounds and outcomes from the best-response replay, frozen.
  const std::vector<Truth> truths = {{"bertrand100", {{0}, {0}}, 50},
                                     {"hotelling99", {{49}, {49}}, 49},
                                     {"naturals5", {{5}, {5}}, 1}};
  bool ok = true;
  std::string detail;
  for (const Truth& t : truths) {
    const CatalogEntry e = catalog_entry(t.name);
    const auto replay = oracle::fast_replay(*e.game, true);
    const Trace trace = iterate(e.game, ReductionKind::TildeInitial, BeliefKind::Pure);
    oracle::Sets got;
    for (const auto& k : trace.outcome.kept_sets()) got.emplace_back(k.begin(), k.end());
    const bool match = replay.back() == t.outcome && replay.size() - 1 == t.rounds &&
                       got == t.outcome && trace.steps.size() == t.rounds;
    ok = ok && match;
    if (!detail.empty()) detail += "; ";
    detail += std::string(t.name) + " " +
              render_sets(*e.game, trace.outcome.kept_sets()) + " rounds=" +
              std::to_string(trace.steps.size()) + (match ? "" : " MISMATCH");
  }
  report(5, "catalog ground truths", ok, detail);
}

// Criteria 7 and 8 on the same small games.
void oracle_criteria() {
  const auto start = Clock::now();
  std::size_t decisions = 0, inconsistent = 0, violations = 0;
  for (const auto& e : random_games(200, 2, 3, 7001)) {
    const FiniteGame& g = *e.game;
    const Restriction full = Restriction::full(e.game);
    const auto sets = oracle::full_sets(g);
    for (PlayerIndex i = 0; i < 2; ++i) {
      const ComparisonSet cmp = full_comparison(g, i);
      for (StrategyIndex s = 0; s < g.num_strategies(i); ++s) {
        ++decisions;
        const Certificate corr = find_witness(full, i, s, BeliefKind::Correlated, cmp);
        const bool grid = oracle::grid_best_any(g, sets, i, s, cmp.candidates, 6);
        if (grid && !is_best(corr)) ++inconsistent;
        if (is_never_best(corr) && grid) ++inconsistent;
        if (const auto* br = std::get_if<IsBestResponse>(&corr)) {
          if (!is_best_response(g, i, s, br->witness, cmp)) ++inconsistent;
        }
        const Certificate mixed =
            find_witness(full, i, s, BeliefKind::IndependentMixed, cmp);
        const Certificate pure = find_witness(full, i, s, BeliefKind::Pure, cmp);
        if (is_never_best(corr) != is_never_best(mixed)) ++violations;
        if (is_never_best(mixed) && !is_never_best(pure)) ++violations;
        if (!is_never_best(pure) && is_never_best(corr)) ++violations;
      }
    }
  }
  const double secs = seconds_since(start);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu decisions, %zu inconsistent, %.2f s", decisions,
                inconsistent, secs);
  report(7, "LP against grid", inconsistent == 0 && secs < 60, buf);
  std::snprintf(buf, sizeof buf, "%zu decisions, %zu violations", decisions, violations);
  report(8, "kind monotonicity", violations == 0, buf);
}

void criterion9() {
  const std::vector<std::vector<std::string>> commands = {
      {"solve", "--game", "catalog:hotelling99"},
      {"solve", "--game", "catalog:bertrand100", "--beliefs", "correlated", "--policy",
       "random-partial", "--seed", "11"},
      {"solve", "--game", "catalog:section5", "--relation", "darrow", "--policy",
       "single-random", "--seed", "4", "--format", "records"},
      {"check-step", "--game", "catalog:section5", "--relation", "arrow", "--from",
       "M,B;L,R", "--to", "M;L,R"},
      {"verify", "all", "--random", "30", "--players", "3", "--max-size", "3",
       "--beliefs", "correlated", "--seed", "9", "--format", "records"},
      {"verify", "order-independence", "--game", "catalog:hotelling99", "--orders", "5",
       "--seed", "2"},
      {"catalog", "emit", "sequence6"},
  };
  std::size_t same = 0;
  std::string first_diff;
  for (auto args : commands) {
    args.insert(args.begin(), "nbr");
    std::ostringstream a, b, ea, eb;
    const int ca = run_cli(args, a, ea);
    const int cb = run_cli(args, b, eb);
    if (ca == cb && a.str() == b.str() && !a.str().empty()) {
      ++same;
    } else if (first_diff.empty()) {
      first_diff = args[1];
    }
  }
  std::string detail = std::to_string(same) + "/" + std::to_string(commands.size()) +
                       " commands byte-identical";
  if (!first_diff.empty()) detail += "; first difference: " + first_diff;
  report(9, "determinism", same == commands.size(), detail);
}

}  // namespace

int main() {
  criterion1();
  corpus_criteria();
  criterion5();
  oracle_criteria();
  criterion9();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", failures ? "acceptance FAILED" : "acceptance passed");
  return failures ? 1 : 0;
}
