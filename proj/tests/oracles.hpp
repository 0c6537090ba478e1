#pragma once

// Reference computations used to derive expected values. They read payoffs
// straight from the tensor and share no code with the elimination engine.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "nbr/game.hpp"

namespace oracle {

using nbr::FiniteGame;
using nbr::JointProfile;
using nbr::Rational;
using Sets = std::vector<std::vector<std::size_t>>;

inline Sets full_sets(const FiniteGame& g) {
  Sets s(g.num_players());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = 0; k < g.num_strategies(i); ++k) s[i].push_back(k);
  }
  return s;
}

// Calls fn on every choice vector in the product of `axes`.
inline void for_each_product(const Sets& axes,
                             const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (const auto& a : axes) {
    if (a.empty()) return;
  }
  std::vector<std::size_t> pos(axes.size(), 0), pick(axes.size());
  while (true) {
    for (std::size_t i = 0; i < axes.size(); ++i) pick[i] = axes[i][pos[i]];
    fn(pick);
    std::size_t i = axes.size();
    while (true) {
      if (i == 0) return;
      --i;
      if (++pos[i] < axes[i].size()) break;
      pos[i] = 0;
    }
  }
}

inline const Rational& pay(const FiniteGame& g, const std::vector<std::size_t>& p,
                           std::size_t i) {
  return g.payoff(JointProfile{p}, i);
}

// Pure best-response table: s of player i is a best response within `cmp`
// to some opponent profile drawn from `kept` (own axis ignored).
inline bool pure_best(const FiniteGame& g, const Sets& kept, std::size_t i,
                      std::size_t s, const std::vector<std::size_t>& cmp) {
  Sets axes = kept;
  axes[i] = {s};
  bool found = false;
  for_each_product(axes, [&](const std::vector<std::size_t>& p) {
    if (found) return;
    std::vector<std::size_t> q = p;
    for (std::size_t t : cmp) {
      q[i] = t;
      if (pay(g, q, i) > pay(g, p, i)) return;
    }
    found = true;
  });
  return found;
}

// Fast ~> (cmp = T_i) or fast -> (cmp = S_i) with pure beliefs, replayed from
// best-response tables. Returns the chain of kept sets, initial first.
inline std::vector<Sets> fast_replay(const FiniteGame& g, bool against_full) {
  std::vector<Sets> chain{full_sets(g)};
  const Sets full = full_sets(g);
  while (true) {
    const Sets& cur = chain.back();
    Sets next(cur.size());
    bool removed = false;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t s : cur[i]) {
        if (pure_best(g, cur, i, s, against_full ? full[i] : cur[i])) {
          next[i].push_back(s);
        } else {
          removed = true;
        }
      }
    }
    if (!removed) return chain;
    chain.push_back(std::move(next));
  }
}

inline std::set<std::vector<std::size_t>> pure_nash(const FiniteGame& g,
                                                    const Sets& kept) {
  std::set<std::vector<std::size_t>> out;
  for_each_product(kept, [&](const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::vector<std::size_t> q = p;
      for (std::size_t t : kept[i]) {
        q[i] = t;
        if (pay(g, q, i) > pay(g, p, i)) return;
      }
    }
    out.insert(p);
  });
  return out;
}

// Two-player grid search: a distribution over the opponent's kept strategies
// with common denominator d making s weakly best within cmp.
inline bool grid_best(const FiniteGame& g, const Sets& kept, std::size_t i,
                      std::size_t s, const std::vector<std::size_t>& cmp,
                      int d) {
  const std::size_t o = 1 - i;
  const auto& opp = kept[o];
  const std::size_t m = opp.size();
  if (m == 0) return false;
  std::vector<int> w(m, 0);
  const auto payoff_vs = [&](std::size_t own, std::size_t col) {
    std::vector<std::size_t> p(2);
    p[i] = own;
    p[o] = col;
    return pay(g, p, i);
  };
  std::function<bool(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == m) {
      w[k] = left;
      Rational own;
      for (std::size_t c = 0; c < m; ++c) {
        own += Rational(w[c], d) * payoff_vs(s, opp[c]);
      }
      for (std::size_t t : cmp) {
        Rational other;
        for (std::size_t c = 0; c < m; ++c) {
          other += Rational(w[c], d) * payoff_vs(t, opp[c]);
        }
        if (other > own) return false;
      }
      return true;
    }
    for (int v = 0; v <= left; ++v) {
      w[k] = v;
      if (rec(k + 1, left - v)) return true;
    }
    return false;
  };
  return rec(0, d);
}

inline bool grid_best_any(const FiniteGame& g, const Sets& kept, std::size_t i,
                          std::size_t s, const std::vector<std::size_t>& cmp,
                          int max_d) {
  for (int d = 1; d <= max_d; ++d) {
    if (grid_best(g, kept, i, s, cmp, d)) return true;
  }
  return false;
}

}  // namespace oracle
