#ifndef LETHARGY_DETAIL_SIMPLEX_HPP
#define LETHARGY_DETAIL_SIMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace lethargy::detail {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> primal;  // x
  std::vector<double> dual;    // y >= 0, one per inequality row
};

// Dense two-phase tableau simplex for
//
//   maximize c'x  subject to  A x <= b,  x >= 0.
//
// Pivots follow the most negative reduced cost at first and switch to Bland's
// smallest-index rule once the pivot count suggests stalling, so degenerate
// programs terminate. Intended for the small dense programs that arise from
// l1 / l-infinity distance problems.
class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
               const std::vector<double>& c, double eps = 1e-11)
      : rows_(b.size()), cols_(c.size()), eps_(eps), nonbasic_(cols_ + 1), basic_(rows_),
        tab_(rows_ + 2, std::vector<double>(cols_ + 2, 0.0)) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) tab_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(cols_ + i);
      tab_[i][cols_] = -1.0;
      tab_[i][cols_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      tab_[rows_][j] = -c[j];
    }
    nonbasic_[cols_] = -1;
    tab_[rows_ + 1][cols_] = 1.0;
  }

  LpSolution solve() {
    LpSolution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < rows_; ++i) {
      if (tab_[i][cols_ + 1] < tab_[r][cols_ + 1]) r = i;
    }
    if (rows_ > 0 && tab_[r][cols_ + 1] < -eps_) {
      // Phase one: drive the artificial column out.
      pivot(r, cols_);
      const Outcome p1 = run(2);
      if (p1 == Outcome::limit) {
        out.status = LpStatus::iteration_limit;
        return out;
      }
      if (p1 != Outcome::optimal || tab_[rows_ + 1][cols_ + 1] < -eps_) {
        out.status = LpStatus::infeasible;
        return out;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basic_[i] != -1) continue;
        std::size_t s = 0;
        for (std::size_t j = 1; j <= cols_; ++j) {
          if (better(tab_[i], j, s)) s = j;
        }
        pivot(i, s);
      }
    }
    const Outcome p2 = run(1);
    if (p2 == Outcome::limit) {
      out.status = LpStatus::iteration_limit;
      return out;
    }
    const bool bounded = p2 == Outcome::optimal;
    out.primal.assign(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < cols_) {
        out.primal[static_cast<std::size_t>(basic_[i])] = tab_[i][cols_ + 1];
      }
    }
    out.dual.assign(rows_, 0.0);
    for (std::size_t j = 0; j <= cols_; ++j) {
      const long v = nonbasic_[j];
      if (v >= static_cast<long>(cols_)) out.dual[static_cast<std::size_t>(v) - cols_] = tab_[rows_][j];
    }
    out.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
    out.objective = bounded ? tab_[rows_][cols_ + 1] : std::numeric_limits<double>::infinity();
    return out;
  }

 private:
  enum class Outcome { optimal, unbounded, limit };

  bool better(const std::vector<double>& row, std::size_t j, std::size_t s) const {
    return std::make_pair(row[j], nonbasic_[j]) < std::make_pair(row[s], nonbasic_[s]);
  }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / tab_[r][s];
    for (std::size_t i = 0; i < rows_ + 2; ++i) {
      if (i == r || std::abs(tab_[i][s]) <= eps_) continue;
      const double f = tab_[i][s] * inv;
      for (std::size_t j = 0; j < cols_ + 2; ++j) tab_[i][j] -= tab_[r][j] * f;
      tab_[i][s] = tab_[r][s] * f;
    }
    for (std::size_t j = 0; j < cols_ + 2; ++j) {
      if (j != s) tab_[r][j] *= inv;
    }
    for (std::size_t i = 0; i < rows_ + 2; ++i) {
      if (i != r) tab_[i][s] *= -inv;
    }
    tab_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  Outcome run(int phase) {
    const std::size_t obj = rows_ + static_cast<std::size_t>(phase) - 1;
    const std::size_t bland_after = 4 * (rows_ + cols_) + 50;
    const std::size_t cap = 200 * (rows_ + cols_) + 1000;
    for (std::size_t iter = 0;; ++iter) {
      if (iter >= cap) return Outcome::limit;
      const bool bland = iter >= bland_after;
      std::size_t s = cols_ + 1;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (bland) {
          if (tab_[obj][j] < -eps_ && (s == cols_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
        } else if (s == cols_ + 1 || better(tab_[obj], j, s)) {
          s = j;
        }
      }
      if (s == cols_ + 1 || tab_[obj][s] >= -eps_) return Outcome::optimal;
      std::size_t r = rows_;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tab_[i][s] <= eps_) continue;
        if (r == rows_ ||
            std::make_pair(tab_[i][cols_ + 1] / tab_[i][s], basic_[i]) <
                std::make_pair(tab_[r][cols_ + 1] / tab_[r][s], basic_[r])) {
          r = i;
        }
      }
      if (r == rows_) return Outcome::unbounded;
      pivot(r, s);
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  double eps_;
  std::vector<long> nonbasic_;
  std::vector<long> basic_;
  std::vector<std::vector<double>> tab_;
};

}  // namespace lethargy::detail

#endif  // LETHARGY_DETAIL_SIMPLEX_HPP
