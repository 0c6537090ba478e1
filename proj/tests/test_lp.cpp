#include "doctest.h"

#include <functional>
#include <optional>
#include <random>

#include "nbr/errors.hpp"
#include "nbr/lp.hpp"

using namespace nbr;

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Solves a square system by Gauss-Jordan; nullopt if singular.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Brute-force vertex enumeration: a non-empty polyhedron in the orthant has a
// vertex where `dim` linearly independent constraints are tight.
bool vertex_feasible(const LinearSystem& sys) {
  Matrix rows;
  std::vector<Rational> rhs;
  for (const auto& e : sys.equal) rows.push_back(e.coeffs), rhs.push_back(e.rhs);
  const std::size_t forced = rows.size();
  for (const auto& q : sys.at_least) rows.push_back(q.coeffs), rhs.push_back(q.rhs);
  for (std::size_t j = 0; j < sys.dim; ++j) {
    std::vector<Rational> unit(sys.dim);
    unit[j] = Rational(1);
    rows.push_back(unit);
    rhs.push_back(Rational(0));
  }
  const std::size_t m = rows.size();
  // Equations are always tight, so every candidate basis contains them.
  std::vector<std::size_t> pick;
  for (std::size_t k = 0; k < forced; ++k) pick.push_back(k);
  bool found = false;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (found) return;
    if (pick.size() == sys.dim) {
      Matrix a;
      std::vector<Rational> b;
      for (std::size_t p : pick) a.push_back(rows[p]), b.push_back(rhs[p]);
      const auto x = solve(a, b);
      if (x && satisfies(sys, *x)) found = true;
      return;
    }
    for (std::size_t k = from; k < m; ++k) {
      pick.push_back(k);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(forced);
  return found;
}

}  // namespace

TEST_CASE("trivial systems") {
  LinearSystem one{1, {}, {Equation{{Rational(1)}, Rational(1)}}};
  const auto x = lp_feasible(one);
  REQUIRE(x);
  CHECK((*x)[0] == Rational(1));

  LinearSystem contradiction{2,
                             {Inequality{{Rational(1), Rational(-1)}, Rational(0)},
                              Inequality{{Rational(-1), Rational(1)}, Rational(1)}},
                             {Equation{{Rational(1), Rational(1)}, Rational(1)}}};
  CHECK_FALSE(lp_feasible(contradiction));
}

TEST_CASE("all-negative row is infeasible at once") {
  // mu_L (0 - 2) + mu_R (1 - 2) >= 0 with mu_L + mu_R = 1.
  LinearSystem sys{2,
                   {Inequality{{Rational(-2), Rational(-1)}, Rational(0)}},
                   {Equation{{Rational(1), Rational(1)}, Rational(1)}}};
  CHECK_FALSE(lp_feasible(sys));
}

TEST_CASE("dimension mismatch") {
  LinearSystem sys{2, {Inequality{{Rational(1)}, Rational(0)}}, {}};
  CHECK_THROWS_AS(lp_feasible(sys), InputError);
}

TEST_CASE("agrees with vertex enumeration on random systems") {
  std::mt19937_64 rng(2024);
  int feasible = 0, infeasible = 0;
  for (int k = 0; k < 400; ++k) {
    LinearSystem sys;
    sys.dim = 1 + rng() % 3;
    const std::size_t ineq = rng() % 4;
    for (std::size_t r = 0; r < ineq; ++r) {
      Inequality q;
      for (std::size_t j = 0; j < sys.dim; ++j) {
        q.coeffs.emplace_back(static_cast<std::int64_t>(rng() % 7) - 3);
      }
      q.rhs = Rational(static_cast<std::int64_t>(rng() % 5) - 2);
      sys.at_least.push_back(q);
    }
    if (rng() & 1) {
      sys.equal.push_back(
          Equation{std::vector<Rational>(sys.dim, Rational(1)), Rational(1)});
    }
    const auto x = lp_feasible(sys);
    if (x) {
      CHECK(satisfies(sys, *x));
      ++feasible;
    } else {
      ++infeasible;
    }
    CHECK(static_cast<bool>(x) == vertex_feasible(sys));
  }
  CHECK(feasible > 50);
  CHECK(infeasible > 50);
}

TEST_CASE("deterministic") {
  LinearSystem sys{3,
                   {Inequality{{Rational(1), Rational(-1), Rational(2)}, Rational(1)},
                    Inequality{{Rational(-1), Rational(2), Rational(1)}, Rational(0)}},
                   {Equation{{Rational(1), Rational(1), Rational(1)}, Rational(1)}}};
  CHECK(lp_feasible(sys) == lp_feasible(sys));
}
