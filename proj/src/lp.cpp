#include "nbr/lp.hpp"

#include "nbr/errors.hpp"

namespace nbr {

namespace {

// Dense tableau for min sum(artificials). Column layout: structural
// variables, then one slack per inequality, then artificials.
class Phase1 {
 public:
  explicit Phase1(const LinearSystem& sys) {
    const std::size_t m = sys.at_least.size() + sys.equal.size();
    dim_ = sys.dim;
    std::size_t artificials = sys.equal.size();
    for (const auto& row : sys.at_least) {
      if (row.rhs.sign() > 0) ++artificials;
    }
    cols_ = dim_ + sys.at_least.size() + artificials;
    first_artificial_ = dim_ + sys.at_least.size();
    rows_.assign(m, std::vector<mpq_class>(cols_ + 1, 0));
    basis_.assign(m, 0);

    std::size_t next_art = first_artificial_;
    std::size_t r = 0;
    for (std::size_t k = 0; k < sys.at_least.size(); ++k, ++r) {
      const auto& row = sys.at_least[k];
      const std::size_t slack = dim_ + k;
      if (row.rhs.sign() <= 0) {
        // -a.x + s = -b with -b >= 0: the slack starts basic.
        for (std::size_t j = 0; j < dim_; ++j) {
          rows_[r][j] = -row.coeffs[j].value();
        }
        rows_[r][slack] = 1;
        rows_[r][cols_] = -row.rhs.value();
        basis_[r] = slack;
      } else {
        for (std::size_t j = 0; j < dim_; ++j) {
          rows_[r][j] = row.coeffs[j].value();
        }
        rows_[r][slack] = -1;
        rows_[r][next_art] = 1;
        rows_[r][cols_] = row.rhs.value();
        basis_[r] = next_art++;
      }
    }
    for (const auto& row : sys.equal) {
      const bool flip = row.rhs.sign() < 0;
      for (std::size_t j = 0; j < dim_; ++j) {
        rows_[r][j] = flip ? mpq_class(-row.coeffs[j].value())
                           : row.coeffs[j].value();
      }
      rows_[r][next_art] = 1;
      rows_[r][cols_] = flip ? mpq_class(-row.rhs.value()) : row.rhs.value();
      basis_[r] = next_art++;
      ++r;
    }

    objective_.assign(cols_ + 1, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        objective_[j] -= rows_[i][j];
      }
      objective_[cols_] -= rows_[i][cols_];
    }
  }

  std::optional<std::vector<Rational>> solve() {
    while (true) {
      // Bland: lowest-index improving column.
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(objective_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) break;
      std::size_t leave = rows_.size();
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        mpq_class ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      // Phase-1 objective is bounded below by 0, so some row qualifies.
      if (leave == rows_.size()) break;
      pivot(leave, enter);
    }
    if (sgn(objective_[cols_]) != 0) return std::nullopt;
    std::vector<Rational> x(dim_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < dim_) x[basis_[i]] = Rational(rows_[i][cols_]);
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const mpq_class p = rows_[row][col];
    for (auto& v : rows_[row]) v /= p;
    const auto eliminate = [&](std::vector<mpq_class>& target) {
      if (sgn(target[col]) == 0) return;
      const mpq_class f = target[col];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(rows_[row][j]) != 0) target[j] -= f * rows_[row][j];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != row) eliminate(rows_[i]);
    }
    eliminate(objective_);
    basis_[row] = col;
  }

  std::size_t dim_ = 0;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<mpq_class> objective_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> lp_feasible(const LinearSystem& system) {
  for (const auto& row : system.at_least) {
    if (row.coeffs.size() != system.dim) {
      throw InputError("inequality row length does not match dimension");
    }
  }
  for (const auto& row : system.equal) {
    if (row.coeffs.size() != system.dim) {
      throw InputError("equation row length does not match dimension");
    }
  }
  if (system.at_least.empty() && system.equal.empty()) {
    return std::vector<Rational>(system.dim);
  }
  return Phase1(system).solve();
}

bool satisfies(const LinearSystem& system, const std::vector<Rational>& x) {
  if (x.size() != system.dim) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  const auto dot = [&](const std::vector<Rational>& a) {
    Rational total;
    for (std::size_t j = 0; j < a.size(); ++j) total += a[j] * x[j];
    return total;
  };
  for (const auto& row : system.at_least) {
    if (dot(row.coeffs) < row.rhs) return false;
  }
  for (const auto& row : system.equal) {
    if (dot(row.coeffs) != row.rhs) return false;
  }
  return true;
}

}  // namespace nbr
