#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nbr/rational.hpp"

namespace nbr {

// coeffs . x >= rhs
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// coeffs . x == rhs
struct Equation {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// { x >= 0 : every inequality and equation holds }
struct LinearSystem {
  std::size_t dim = 0;
  std::vector<Inequality> at_least;
  std::vector<Equation> equal;
};

// Exact phase-1 simplex over the rationals with Bland's rule. Returns a
// feasible basic point, or nullopt when the system is infeasible. Throws
// InputError on a row whose length differs from `dim`.
std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system);

bool satisfies(const LinearSystem& system, const std::vector<Rational>& x);

}  // namespace nbr
