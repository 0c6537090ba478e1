#include "doctest.h"

#include <memory>

#include "nbr/catalog.hpp"
#include "nbr/errors.hpp"
#include "nbr/oracle.hpp"
#include "oracles.hpp"

using namespace nbr;

namespace {

GamePtr share(FiniteGame g) { return std::make_shared<const FiniteGame>(std::move(g)); }

JointProfile jp(std::vector<StrategyIndex> c) { return JointProfile{std::move(c)}; }

// Row payoffs only; the column player is indifferent.
GamePtr row_game(std::vector<std::vector<std::int64_t>> rows) {
  std::vector<std::string> r, c;
  for (std::size_t k = 0; k < rows.size(); ++k) r.push_back("r" + std::to_string(k));
  for (std::size_t k = 0; k < rows[0].size(); ++k) c.push_back("c" + std::to_string(k));
  return share(FiniteGame::from_function({r, c}, [&](const JointProfile& p) {
    return std::vector<Rational>{Rational(rows[p.choices[0]][p.choices[1]]),
                                 Rational(0)};
  }));
}

// Player 1 strategy S is a best response to the correlated belief
// 1/2 (a,a) + 1/2 (b,b) but to no product belief.
GamePtr correlation_only_game() {
  // Columns: (a,a), (a,b), (b,a), (b,b).
  const std::vector<std::vector<Rational>> own = {
      {1, 0, 0, 1},
      {0, 2, 2, 0},
      {Rational(3, 2), 0, 0, Rational(1, 2)},
      {Rational(1, 2), 0, 0, Rational(3, 2)}};
  return share(FiniteGame::from_function(
      {{"S", "U1", "U2", "U3"}, {"a", "b"}, {"a", "b"}},
      [&](const JointProfile& p) {
        const std::size_t col = p.choices[1] * 2 + p.choices[2];
        return std::vector<Rational>{own[p.choices[0]][col], 0, 0};
      }));
}

bool verifies(const Restriction& g, PlayerIndex i, StrategyIndex s,
              BeliefKind kind, const ComparisonSet& cmp, const Certificate& c) {
  const auto* br = std::get_if<IsBestResponse>(&c);
  return br && kind_of(br->witness) == kind &&
         narrowed_membership(kind, br->witness, g) &&
         is_best_response(g.game(), i, s, br->witness, cmp);
}

}  // namespace

TEST_CASE("is_best_response on the three-by-two game") {
  const GamePtr h = share(section5_game());
  const Belief left = make_pure(0, jp({0}));
  CHECK_FALSE(is_best_response(*h, 0, 2, left, full_comparison(*h, 0)));
  CHECK(is_best_response(*h, 0, 2, left, ComparisonSet{0, {1, 2}}));
  CHECK(is_best_response(*h, 0, 1, left, ComparisonSet{0, {1}}));
  CHECK_THROWS_AS(is_best_response(*h, 0, 0, make_pure(0, jp({5})),
                                   full_comparison(*h, 0)),
                  InputError);
  CHECK_THROWS_AS(is_best_response(*h, 0, 0, left, full_comparison(*h, 1)),
                  InputError);
}

TEST_CASE("find_witness on the three-by-two game") {
  const GamePtr h = share(section5_game());
  const Restriction full = Restriction::full(h);
  const Certificate m =
      find_witness(full, 0, 1, BeliefKind::Pure, full_comparison(*h, 0));
  REQUIRE(is_never_best(m));
  CHECK(std::get<NeverBestResponse>(m).proof == ProofKind::Exhaustive);
  CHECK(render_certificate(*h, 0, m) == "NBR(exhaustive)");

  const Certificate t =
      find_witness(full, 0, 0, BeliefKind::Pure, full_comparison(*h, 0));
  CHECK(render_certificate(*h, 0, t) == "BR(witness=pure(L))");

  const Restriction g(h, {{1, 2}, {0, 1}});
  const Certificate b =
      find_witness(g, 0, 2, BeliefKind::Pure, kept_comparison(g, 0));
  CHECK(render_certificate(*h, 0, b) == "BR(witness=pure(L))");
}

TEST_CASE("pure domination gives an LP infeasibility proof") {
  const GamePtr g = row_game({{3, 1}, {2, 0}});
  const Restriction full = Restriction::full(g);
  const Certificate c =
      find_witness(full, 0, 1, BeliefKind::Correlated, full_comparison(*g, 0));
  REQUIRE(is_never_best(c));
  CHECK(std::get<NeverBestResponse>(c).proof == ProofKind::LPInfeasible);
  CHECK(render_certificate(*g, 0, c) == "NBR(lp)");

  OracleOptions proof;
  proof.dominance_proof = true;
  const Certificate d = find_witness(full, 0, 1, BeliefKind::Correlated,
                                     full_comparison(*g, 0), proof);
  CHECK(render_certificate(*g, 0, d) == "NBR(dominated=[r0:1])");
}

TEST_CASE("mixed domination") {
  // r2 is beaten by 1/2 r0 + 1/2 r1 but by neither pure row.
  const GamePtr g = row_game({{4, 0}, {0, 4}, {1, 1}});
  const Restriction full = Restriction::full(g);
  const ComparisonSet cmp = full_comparison(*g, 0);
  CHECK(is_never_best(find_witness(full, 0, 2, BeliefKind::Pure, cmp)));
  const Certificate c = find_witness(full, 0, 2, BeliefKind::Correlated, cmp);
  REQUIRE(is_never_best(c));
  CHECK(std::get<NeverBestResponse>(c).proof == ProofKind::LPInfeasible);
  const auto sigma = dominating_strategy(full, 0, 2, cmp);
  REQUIRE(sigma);
  CHECK(verify_dominance(full, 0, 2, cmp, *sigma));
  CHECK_FALSE(verify_dominance(full, 0, 2, cmp, make_mixed({{0, Rational(1)}})));
  CHECK_FALSE(dominating_strategy(full, 0, 0, cmp));
}

TEST_CASE("a strategy that is best only against a mixture") {
  const GamePtr g = row_game({{3, 0}, {0, 3}, {2, 2}});
  const Restriction full = Restriction::full(g);
  const ComparisonSet cmp = full_comparison(*g, 0);
  CHECK(is_never_best(find_witness(full, 0, 2, BeliefKind::Pure, cmp)));
  for (BeliefKind kind : {BeliefKind::Correlated, BeliefKind::IndependentMixed}) {
    const Certificate c = find_witness(full, 0, 2, kind, cmp);
    CHECK(verifies(full, 0, 2, kind, cmp, c));
  }
}

TEST_CASE("matching pennies") {
  const GamePtr g = share(FiniteGame::from_function(
      {{"H", "T"}, {"H", "T"}}, [](const JointProfile& p) {
        const std::int64_t v = p.choices[0] == p.choices[1] ? 1 : -1;
        return std::vector<Rational>{v, -v};
      }));
  const Restriction full = Restriction::full(g);
  for (PlayerIndex i = 0; i < 2; ++i) {
    for (StrategyIndex s = 0; s < 2; ++s) {
      const ComparisonSet cmp = full_comparison(*g, i);
      CHECK(verifies(full, i, s, BeliefKind::Correlated, cmp,
                     find_witness(full, i, s, BeliefKind::Correlated, cmp)));
      // The uniform belief is a witness too (denominator-4 grid point).
      const Belief uniform = make_distribution(
          i, {{jp({0}), Rational(2, 4)}, {jp({1}), Rational(2, 4)}});
      CHECK(is_best_response(*g, i, s, uniform, cmp));
      CHECK(oracle::grid_best(*g, oracle::full_sets(*g), i, s, cmp.candidates, 4));
    }
  }
}

TEST_CASE("empty belief set") {
  const GamePtr h = share(section5_game());
  const Restriction d(h, {{0, 1}, {}});
  const Certificate c =
      find_witness(d, 0, 0, BeliefKind::Correlated, full_comparison(*h, 0));
  CHECK(is_empty_beliefs(c));
  CHECK(render_certificate(*h, 0, c) == "NBR(empty-beliefs)");
  const NeverBestSet nbs = never_best_set(d, BeliefKind::Pure,
                                          ComparisonMode::ReferenceH);
  CHECK(nbs.vacuous);
  CHECK(nbs.removable == StrategySets{{0, 1}, {}});
}

TEST_CASE("independent mixed beliefs with three players") {
  const GamePtr g = correlation_only_game();
  const Restriction full = Restriction::full(g);
  const ComparisonSet cmp = full_comparison(*g, 0);
  CHECK(is_never_best(find_witness(full, 0, 0, BeliefKind::Pure, cmp)));
  CHECK(verifies(full, 0, 0, BeliefKind::Correlated, cmp,
                 find_witness(full, 0, 0, BeliefKind::Correlated, cmp)));
  OracleOptions options;
  options.grid_resolution = 6;
  const Certificate c =
      find_witness(full, 0, 0, BeliefKind::IndependentMixed, cmp, options);
  REQUIRE(is_inconclusive(c));
  CHECK(std::get<Inconclusive>(c).resolution == 6);
  CHECK(render_certificate(*g, 0, c) == "INCONCLUSIVE(res=6)");
  const NeverBestSet nbs = never_best_set(full, BeliefKind::IndependentMixed,
                                          ComparisonMode::ReferenceH, options);
  CHECK(nbs.inconclusive);
  CHECK(nbs.removable[0].empty());

  // Product witnesses found for three players verify exactly.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const GamePtr r = share(random_game({3, 2, 3}, 4, seed));
    const Restriction rf = Restriction::full(r);
    for (PlayerIndex i = 0; i < 3; ++i) {
      for (StrategyIndex s = 0; s < r->num_strategies(i); ++s) {
        const ComparisonSet ci = full_comparison(*r, i);
        const Certificate w =
            find_witness(rf, i, s, BeliefKind::IndependentMixed, ci);
        if (is_best(w)) CHECK(verifies(rf, i, s, BeliefKind::IndependentMixed, ci, w));
      }
    }
  }
}

TEST_CASE("never_best_set ground truths") {
  const GamePtr h = share(section5_game());
  const NeverBestSet nbs = never_best_set(Restriction::full(h), BeliefKind::Pure,
                                          ComparisonMode::ReferenceH);
  CHECK(nbs.removable == StrategySets{{1, 2}, {}});

  const GamePtr zero = row_game({{0, 0}, {0, 0}});
  CHECK(all_empty(never_best_set(Restriction::full(zero), BeliefKind::Correlated,
                                 ComparisonMode::ReferenceG)
                      .removable));

  // Bertrand: the brute-force table marks 51..100 as never best.
  const GamePtr b = share(bertrand_discrete(100));
  const NeverBestSet bn = never_best_set(Restriction::full(b), BeliefKind::Pure,
                                         ComparisonMode::ReferenceH);
  const auto full = oracle::full_sets(*b);
  for (PlayerIndex i = 0; i < 2; ++i) {
    std::vector<StrategyIndex> expected;
    for (StrategyIndex s = 0; s < 100; ++s) {
      if (!oracle::pure_best(*b, full, i, s, full[i])) expected.push_back(s);
    }
    CHECK(bn.removable[i] == expected);
    REQUIRE(expected.size() == 50);
    CHECK(b->label(i, expected.front()) == "51");
  }
}

TEST_CASE("witness soundness, LP against grid, kind monotonicity") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const GamePtr g = share(random_game({1 + seed % 3, 1 + (seed / 3) % 3}, 5, seed));
    const Restriction full = Restriction::full(g);
    const auto sets = oracle::full_sets(*g);
    for (PlayerIndex i = 0; i < 2; ++i) {
      const ComparisonSet cmp = full_comparison(*g, i);
      for (StrategyIndex s = 0; s < g->num_strategies(i); ++s) {
        const Certificate pure = find_witness(full, i, s, BeliefKind::Pure, cmp);
        const Certificate mixed =
            find_witness(full, i, s, BeliefKind::IndependentMixed, cmp);
        const Certificate corr =
            find_witness(full, i, s, BeliefKind::Correlated, cmp);
        for (auto [kind, c] : {std::pair{BeliefKind::Pure, &pure},
                               std::pair{BeliefKind::IndependentMixed, &mixed},
                               std::pair{BeliefKind::Correlated, &corr}}) {
          if (is_best(*c)) CHECK(verifies(full, i, s, kind, cmp, *c));
        }
        CHECK(is_never_best(corr) == is_never_best(mixed));
        if (is_never_best(mixed)) CHECK(is_never_best(pure));
        CHECK(is_never_best(pure) ==
              !oracle::pure_best(*g, sets, i, s, cmp.candidates));
        const bool grid = oracle::grid_best_any(*g, sets, i, s, cmp.candidates, 6);
        if (grid) CHECK(is_best(corr));
        if (is_never_best(corr)) CHECK_FALSE(grid);
      }
    }
  }
}

TEST_CASE("certificate cache") {
  CertificateCache cache(BeliefKind::Pure);
  CHECK(cache.witness(0, 1) == nullptr);
  cache.remember_witness(0, 1, make_pure(0, jp({0})));
  REQUIRE(cache.witness(0, 1) != nullptr);
  CHECK(*cache.witness(0, 1) == make_pure(0, jp({0})));
  cache.remember_reference_never_best(1, 0, NeverBestResponse{});
  CHECK(cache.reference_never_best(1, 0) != nullptr);
  CHECK(cache.reference_never_best(0, 0) == nullptr);
  const GamePtr h = share(section5_game());
  CHECK_THROWS_AS(never_best_set(Restriction::full(h), BeliefKind::Correlated,
                                 ComparisonMode::ReferenceH, {}, &cache),
                  InputError);
}

TEST_CASE("determinism") {
  const GamePtr g = share(random_game({4, 4}, 5, 99));
  const Restriction full = Restriction::full(g);
  for (StrategyIndex s = 0; s < 4; ++s) {
    const ComparisonSet cmp = full_comparison(*g, 0);
    CHECK(render_certificate(*g, 0, find_witness(full, 0, s, BeliefKind::Correlated, cmp)) ==
          render_certificate(*g, 0, find_witness(full, 0, s, BeliefKind::Correlated, cmp)));
  }
}
