#include "saatsp/simplex.hpp"

#include <string>

#include "saatsp/errors.hpp"

namespace saatsp {

namespace {

class Tableau {
 public:
  explicit Tableau(const LpProblem& lp) : n_(lp.objective.size()), m_(lp.rows.size()) {
    if (lp.lower.size() != n_ || lp.upper.size() != n_) {
      throw Error(ErrorKind::BadParams, "bound vectors must match the variable count");
    }
    std::size_t slacks = 0;
    for (const auto& r : lp.rows) if (!r.equality) ++slacks;
    cols_ = n_ + slacks + m_;
    lo_.assign(cols_, Rational());
    up_.assign(cols_, std::nullopt);
    val_.assign(cols_, Rational());
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      up_[j] = lp.upper[j];
      if (up_[j] && *up_[j] < lo_[j]) throw Error(ErrorKind::Infeasible, "empty variable range");
      val_[j] = lo_[j];
    }
    t_.assign(m_, std::vector<Rational>(cols_));
    basis_.resize(m_);
    std::size_t slack = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      Rational residual = row.rhs;
      for (const auto& [j, a] : row.terms) {
        if (j >= n_) throw Error(ErrorKind::BadParams, "row references an unknown variable");
        t_[i][j] += a;
        residual -= a * val_[j];
      }
      if (!row.equality) t_[i][slack++] = Rational(-1);
      const std::size_t art = n_ + slacks + i;
      if (residual.sign() < 0) {
        for (auto& v : t_[i]) v = -v;
        residual = -residual;
      }
      t_[i][art] = Rational(1);
      basis_[i] = art;
      val_[art] = residual;
    }
    first_artificial_ = n_ + slacks;
  }

  // Phase 1: minimize the sum of artificials.
  void phase_one() {
    std::vector<Rational> c(cols_);
    for (std::size_t j = first_artificial_; j < cols_; ++j) c[j] = Rational(1);
    run(c);
    Rational infeasibility;
    for (std::size_t j = first_artificial_; j < cols_; ++j) infeasibility += val_[j];
    if (infeasibility.sign() > 0) throw Error(ErrorKind::Infeasible, "linear program is infeasible");
    for (std::size_t j = first_artificial_; j < cols_; ++j) up_[j] = Rational(0);
  }

  void phase_two(const std::vector<Rational>& objective) {
    std::vector<Rational> c(cols_);
    for (std::size_t j = 0; j < n_; ++j) c[j] = objective[j];
    run(c);
  }

  LpSolution solution(const std::vector<Rational>& objective) const {
    LpSolution s;
    s.x.assign(val_.begin(), val_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = 0; j < n_; ++j) s.value += objective[j] * val_[j];
    s.pivots = pivots_;
    return s;
  }

 private:
  bool fixed(std::size_t j) const { return up_[j] && *up_[j] == lo_[j]; }
  bool at_upper(std::size_t j) const { return up_[j] && val_[j] == *up_[j]; }

  void run(const std::vector<Rational>& c) {
    std::vector<bool> is_basic(cols_, false);
    for (std::size_t b : basis_) is_basic[b] = true;
    std::vector<Rational> d = c;
    for (std::size_t i = 0; i < m_; ++i) {
      if (c[basis_[i]].is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!t_[i][j].is_zero()) d[j] -= c[basis_[i]] * t_[i][j];
      }
    }
    while (true) {
      std::size_t enter = cols_;
      int dir = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic[j] || fixed(j)) continue;
        if (d[j].sign() < 0 && !at_upper(j)) {
          enter = j;
          dir = 1;
          break;
        }
        if (d[j].sign() > 0 && at_upper(j)) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == cols_) return;

      // Ratio test; ties go to the smallest basic variable index.
      std::optional<Rational> best;
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = t_[i][enter];
        if (a.is_zero()) continue;
        const std::size_t b = basis_[i];
        Rational rate = dir > 0 ? a : -a;
        std::optional<Rational> limit;
        bool to_upper = false;
        if (rate.sign() > 0) {
          limit = (val_[b] - lo_[b]) / rate;
        } else if (up_[b]) {
          limit = (*up_[b] - val_[b]) / (-rate);
          to_upper = true;
        }
        if (!limit) continue;
        if (!best || *limit < *best || (*limit == *best && b < basis_[leave_row])) {
          best = limit;
          leave_row = i;
          leave_to_upper = to_upper;
        }
      }
      std::optional<Rational> flip;
      if (up_[enter]) flip = *up_[enter] - lo_[enter];
      if (!best && !flip) throw Error(ErrorKind::Unbounded, "linear program is unbounded");
      const bool bound_flip = flip && (!best || *flip < *best);
      const Rational theta = bound_flip ? *flip : *best;

      if (!theta.is_zero()) {
        const Rational step = dir > 0 ? theta : -theta;
        val_[enter] += step;
        for (std::size_t i = 0; i < m_; ++i) {
          if (!t_[i][enter].is_zero()) val_[basis_[i]] -= t_[i][enter] * step;
        }
      }
      if (bound_flip) {
        val_[enter] = dir > 0 ? *up_[enter] : lo_[enter];
        continue;
      }
      const std::size_t leaving = basis_[leave_row];
      val_[leaving] = leave_to_upper ? *up_[leaving] : lo_[leaving];
      pivot(leave_row, enter, d);
      is_basic[leaving] = false;
      is_basic[enter] = true;
      basis_[leave_row] = enter;
      ++pivots_;
    }
  }

  void pivot(std::size_t r, std::size_t col, std::vector<Rational>& d) {
    std::vector<Rational>& prow = t_[r];
    const Rational inv = Rational(1) / prow[col];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][col].is_zero()) continue;
      const Rational f = t_[i][col];
      for (std::size_t j : nz) t_[i][j] -= f * prow[j];
    }
    if (!d[col].is_zero()) {
      const Rational f = d[col];
      for (std::size_t j : nz) d[j] -= f * prow[j];
    }
  }

  std::size_t n_, m_, cols_ = 0, first_artificial_ = 0, pivots_ = 0;
  std::vector<Rational> lo_;
  std::vector<std::optional<Rational>> up_;
  std::vector<Rational> val_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_simplex(const LpProblem& lp) {
  Tableau tab(lp);
  tab.phase_one();
  tab.phase_two(lp.objective);
  return tab.solution(lp.objective);
}

}  // namespace saatsp
