#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "saatsp/rational.hpp"

namespace saatsp {

/// min c.x subject to rows (a.x >= b or a.x = b) and lower <= x <= upper.
struct LpProblem {
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Rational rhs;
    bool equality = false;
  };
  std::vector<Rational> objective;
  std::vector<Rational> lower;                 // finite lower bound per variable
  std::vector<std::optional<Rational>> upper;  // nullopt = unbounded above
  std::vector<Row> rows;
};

struct LpSolution {
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

/// Two-phase bounded-variable primal simplex on a dense exact tableau with
/// Bland's smallest-index rule. Throws Infeasible or Unbounded.
LpSolution solve_simplex(const LpProblem& lp);

}  // namespace saatsp
