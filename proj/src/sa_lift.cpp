#include "saatsp/sa_lift.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "saatsp/errors.hpp"

namespace saatsp {

std::string check_method_name(CheckMethod m) {
  switch (m) {
    case CheckMethod::DirectEnumerated: return "direct-enumerated";
    case CheckMethod::DirectSeparated: return "direct-separated";
    case CheckMethod::Recursive: return "recursive";
  }
  return "?";
}

std::vector<std::pair<EdgeSet, EdgeSet>> lifted_pairs(std::size_t m, std::size_t t) {
  std::vector<std::pair<EdgeSet, EdgeSet>> pairs;
  for_each_subset(m, t, [&](const EdgeSet& a) {
    for_each_subset_of(a, a.size(), [&](const EdgeSet& s) {
      std::vector<EdgeId> q;
      std::set_difference(a.begin(), a.end(), s.begin(), s.end(), std::back_inserter(q));
      pairs.emplace_back(s, EdgeSet(std::move(q)));
    });
  });
  return pairs;
}

namespace {

void require_level(const MomentVector& y, const ConstraintSystem& cs, std::size_t t) {
  if (y.level() < t) {
    throw Error(ErrorKind::LevelMismatch, "vector of level " + std::to_string(y.level()) +
                                              " cannot be checked at level " + std::to_string(t));
  }
  if (y.ground_size() != cs.edge_count()) {
    throw Error(ErrorKind::LevelMismatch, "vector ground set does not match the constraint system");
  }
}

struct PartialResult {
  std::size_t violation_count = 0;
  std::vector<SaViolation> violations;
  RowCheckStats stats;
};

void check_pair(const MomentVector& y, const ConstraintSystem& cs, const EdgeSet& s, const EdgeSet& q,
                std::size_t max_violations, PartialResult& out) {
  const std::size_t m = cs.edge_count();
  const Rational z0 = z_value(y, s, q);
  std::vector<Rational> w(m);
  for (EdgeId e = 0; e < m; ++e) {
    if (q.contains(e)) continue;
    w[e] = s.contains(e) ? z0 : z_value(y, s.with(e), q);
  }
  std::vector<RowViolation> rows;
  const std::size_t room = max_violations > out.violations.size() ? max_violations - out.violations.size() : 0;
  out.violation_count += check_rows(cs, w, z0, out.stats, rows, room);
  for (RowViolation& r : rows) {
    out.violations.push_back(SaViolation{std::move(r.tag), s, q, std::move(r.lhs), std::move(r.rhs)});
  }
}

void merge_stats(SaVerdict& v, const RowCheckStats& stats) {
  for (const auto& [f, c] : stats.checked) v.checked[f] += c;
  v.cut_fallbacks += stats.cut_fallbacks;
}

}  // namespace

SaVerdict check_direct(const MomentVector& y, const ConstraintSystem& cs, std::size_t t, const CheckOptions& opt) {
  require_level(y, cs, t);
  const auto pairs = lifted_pairs(cs.edge_count(), t);
  const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, pairs.size()));
  std::vector<PartialResult> parts(threads);
  auto work = [&](std::size_t k) {
    const std::size_t begin = pairs.size() * k / threads;
    const std::size_t end = pairs.size() * (k + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      check_pair(y, cs, pairs[i].first, pairs[i].second, opt.max_violations, parts[k]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        try {
          work(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) if (err) std::rethrow_exception(err);
  }

  SaVerdict v;
  v.method = cs.cut_mode == CutMode::Enumerated ? CheckMethod::DirectEnumerated : CheckMethod::DirectSeparated;
  v.level = t;
  v.pairs = pairs.size();
  for (PartialResult& p : parts) {
    v.violation_count += p.violation_count;
    for (SaViolation& viol : p.violations) {
      if (v.violations.size() < opt.max_violations) v.violations.push_back(std::move(viol));
    }
    merge_stats(v, p.stats);
  }
  v.feasible = v.violation_count == 0;
  return v;
}

namespace {

class RecursiveChecker {
 public:
  RecursiveChecker(const ConstraintSystem& cs, std::size_t max_violations)
      : cs_(cs), max_(max_violations) {}

  const PartialResult& visit(const MomentVector& y, std::size_t t) {
    std::string key = std::to_string(t) + "|";
    for (const auto& [s, v] : y.entries()) {
      if (!v.is_zero()) key += s.to_string() + "=" + v.to_string() + ";";
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
    PartialResult result;
    if (y.is_zero()) {
      // Homogeneous rows hold trivially at the origin.
    } else if (t == 0) {
      ++leaves_;
      std::vector<RowViolation> rows;
      result.violation_count = check_rows(cs_, singletons(y), y.get(EdgeSet()), result.stats, rows, max_);
      for (RowViolation& r : rows) {
        result.violations.push_back(SaViolation{std::move(r.tag), {}, {}, std::move(r.lhs), std::move(r.rhs)});
      }
    } else {
      const MomentVector base = y.truncated(t - 1);
      for (EdgeId e = 0; e < y.ground_size(); ++e) {
        MomentVector shifted = shift(e, y);
        MomentVector rest = base - shifted;
        absorb(result, visit(shifted, t - 1), e, true);
        absorb(result, visit(rest, t - 1), e, false);
      }
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

  std::size_t hits() const { return hits_; }
  std::size_t leaves() const { return leaves_; }

 private:
  void absorb(PartialResult& into, const PartialResult& child, EdgeId e, bool into_s) {
    into.violation_count += child.violation_count;
    for (const auto& [f, c] : child.stats.checked) into.stats.checked[f] += c;
    into.stats.cut_fallbacks += child.stats.cut_fallbacks;
    for (const SaViolation& v : child.violations) {
      if (into.violations.size() >= max_) break;
      SaViolation moved = v;
      if (into_s) moved.s = moved.s.with(e); else moved.q = moved.q.with(e);
      into.violations.push_back(std::move(moved));
    }
  }

  const ConstraintSystem& cs_;
  std::size_t max_;
  std::unordered_map<std::string, PartialResult> memo_;
  std::size_t hits_ = 0;
  std::size_t leaves_ = 0;
};

}  // namespace

SaVerdict check_recursive(const MomentVector& y, const ConstraintSystem& cs, std::size_t t,
                          const CheckOptions& opt) {
  require_level(y, cs, t);
  RecursiveChecker checker(cs, opt.max_violations);
  const PartialResult& r = checker.visit(y.truncated(t), t);
  SaVerdict v;
  v.method = CheckMethod::Recursive;
  v.level = t;
  v.pairs = checker.leaves();
  v.memo_hits = checker.hits();
  v.violation_count = r.violation_count;
  v.violations = r.violations;
  merge_stats(v, r.stats);
  v.feasible = v.violation_count == 0;
  return v;
}

}  // namespace saatsp
