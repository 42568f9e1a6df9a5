#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "saatsp/moment.hpp"
#include "saatsp/relaxations.hpp"

namespace saatsp {

enum class CheckMethod { DirectEnumerated, DirectSeparated, Recursive };
std::string check_method_name(CheckMethod m);

struct SaViolation {
  ConstraintTag tag;
  EdgeSet s;
  EdgeSet q;
  Rational lhs;
  Rational rhs;
};

struct SaVerdict {
  bool feasible = true;
  CheckMethod method = CheckMethod::DirectSeparated;
  std::size_t level = 0;
  std::size_t pairs = 0;             // (S, Q) pairs (direct) or leaf vectors (recursive) examined
  std::size_t violation_count = 0;   // all violations found
  std::vector<SaViolation> violations;  // the first few, in deterministic order
  std::map<Family, std::size_t> checked;
  std::size_t cut_fallbacks = 0;
  std::size_t memo_hits = 0;
};

struct CheckOptions {
  std::size_t threads = 1;
  std::size_t max_violations = 16;
};

/// Lifted rows sum a_i z_{S+i,Q} >= b z_{S,Q} for every row of cs and every disjoint
/// (S, Q) with |S|+|Q| <= t. Edges in S carry weight z_{S,Q}, edges in Q weight 0.
/// Throws LevelMismatch if y.level() < t or the ground set differs from E(cs).
SaVerdict check_direct(const MomentVector& y, const ConstraintSystem& cs, std::size_t t,
                       const CheckOptions& opt = {});

/// Cone membership through the shift recursion: at level 0 the homogenized rows
/// (including 0 <= y_e <= y_empty), above it e*y and y - e*y one level down for
/// every e. Sub-vectors are memoized by content. Violations carry the (S, Q)
/// accumulated along the recursion path (shift adds to S, complement to Q).
SaVerdict check_recursive(const MomentVector& y, const ConstraintSystem& cs, std::size_t t,
                          const CheckOptions& opt = {});

/// All disjoint (S, Q) over {0..m-1} with |S|+|Q| <= t, in canonical order.
std::vector<std::pair<EdgeSet, EdgeSet>> lifted_pairs(std::size_t m, std::size_t t);

}  // namespace saatsp
