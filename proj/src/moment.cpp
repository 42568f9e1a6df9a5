#include "saatsp/moment.hpp"

#include <string>

#include "saatsp/errors.hpp"

namespace saatsp {

MomentVector::MomentVector(std::size_t level, std::size_t ground_size, bool sparse)
    : level_(level), ground_(ground_size), sparse_(sparse) {}

void MomentVector::check_key(const EdgeSet& s) const {
  if (s.size() > level_ + 1) {
    throw Error(ErrorKind::OutOfLevel, "set " + s.to_string() + " exceeds level " + std::to_string(level_));
  }
  if (!s.empty() && s.ids().back() >= ground_) {
    throw Error(ErrorKind::BadParams, "set " + s.to_string() + " leaves the ground set");
  }
}

Rational MomentVector::get(const EdgeSet& s) const {
  check_key(s);
  auto it = entries_.find(s);
  if (it != entries_.end()) return it->second;
  if (!sparse_) throw Error(ErrorKind::BadParams, "dense moment vector has no entry " + s.to_string());
  return Rational();
}

void MomentVector::set(const EdgeSet& s, Rational value) {
  check_key(s);
  if (sparse_ && value.is_zero()) {
    entries_.erase(s);
  } else {
    entries_[s] = std::move(value);
  }
}

MomentVector MomentVector::truncated(std::size_t new_level) const {
  MomentVector out(new_level, ground_, sparse_);
  for (const auto& [s, v] : entries_) {
    if (s.size() <= new_level + 1) out.entries_.emplace(s, v);
  }
  return out;
}

bool MomentVector::is_zero() const {
  for (const auto& [s, v] : entries_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

bool operator==(const MomentVector& a, const MomentVector& b) {
  if (a.level_ != b.level_ || a.ground_ != b.ground_) return false;
  for (const auto& [s, v] : a.entries_) {
    auto it = b.entries_.find(s);
    const Rational other = it == b.entries_.end() ? Rational() : it->second;
    if (v != other) return false;
  }
  for (const auto& [s, v] : b.entries_) {
    if (!a.entries_.count(s) && !v.is_zero()) return false;
  }
  return true;
}

template <class Op>
MomentVector& MomentVector::combine(const MomentVector& o, Op op) {
  if (o.level_ != level_ || o.ground_ != ground_) {
    throw Error(ErrorKind::LevelMismatch, "moment vectors differ in level or ground set");
  }
  for (const auto& [s, v] : o.entries_) {
    auto it = entries_.find(s);
    Rational cur = it == entries_.end() ? Rational() : it->second;
    op(cur, v);
    if (sparse_ && cur.is_zero()) {
      if (it != entries_.end()) entries_.erase(it);
    } else if (it != entries_.end()) {
      it->second = std::move(cur);
    } else {
      entries_.emplace(s, std::move(cur));
    }
  }
  return *this;
}

MomentVector& MomentVector::operator+=(const MomentVector& o) {
  return combine(o, [](Rational& a, const Rational& b) { a += b; });
}

MomentVector& MomentVector::operator-=(const MomentVector& o) {
  return combine(o, [](Rational& a, const Rational& b) { a -= b; });
}

MomentVector& MomentVector::operator*=(const Rational& k) {
  if (sparse_ && k.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& [s, v] : entries_) v *= k;
  return *this;
}

MomentVector operator+(MomentVector a, const MomentVector& b) { return a += b; }
MomentVector operator-(MomentVector a, const MomentVector& b) { return a -= b; }
MomentVector operator*(const Rational& k, MomentVector a) { return a *= k; }

void for_each_subset_of(const EdgeSet& items, std::size_t max_size,
                        const std::function<void(const EdgeSet&)>& fn) {
  const auto& pool = items.ids();
  const std::size_t n = pool.size();
  fn(EdgeSet());
  for (std::size_t k = 1; k <= std::min(max_size, n); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<EdgeId> chosen(k);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
      fn(EdgeSet(chosen));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

void for_each_subset(std::size_t ground_size, std::size_t max_size,
                     const std::function<void(const EdgeSet&)>& fn) {
  std::vector<EdgeId> all(ground_size);
  for (std::size_t i = 0; i < ground_size; ++i) all[i] = static_cast<EdgeId>(i);
  for_each_subset_of(EdgeSet(std::move(all)), max_size, fn);
}

std::size_t count_subsets(std::size_t n, std::size_t k) {
  std::size_t total = 0;
  std::size_t binom = 1;
  for (std::size_t i = 0; i <= std::min(n, k); ++i) {
    total += binom;
    binom = binom * (n - i) / (i + 1);
  }
  return total;
}

Rational z_value(const MomentVector& y, const EdgeSet& s, const EdgeSet& q) {
  if (s.intersects(q)) throw Error(ErrorKind::BadParams, "z_{S,Q} needs disjoint S and Q");
  if (s.size() + q.size() > y.level() + 1) {
    throw Error(ErrorKind::OutOfLevel, "z_{S,Q} with |S|+|Q| = " + std::to_string(s.size() + q.size()) +
                                           " exceeds level " + std::to_string(y.level()));
  }
  Rational sum;
  for_each_subset_of(q, q.size(), [&](const EdgeSet& t) {
    const Rational v = y.get(s.united(t));
    if (t.size() % 2 == 0) sum += v; else sum -= v;
  });
  return sum;
}

MomentVector shift(EdgeId e, const MomentVector& y) {
  if (y.level() == 0) throw Error(ErrorKind::ZeroLevel, "cannot shift a level-0 vector");
  if (e >= y.ground_size()) throw Error(ErrorKind::BadParams, "shift edge outside the ground set");
  MomentVector out(y.level() - 1, y.ground_size(), y.sparse());
  for (const auto& [k, v] : y.entries()) {
    if (!k.contains(e)) continue;
    out.set(k.without(e), v);
    if (k.size() <= y.level()) out.set(k, v);
  }
  return out;
}

MomentVector indicator_lift(const EdgeSet& set, std::size_t ground_size, std::size_t level) {
  MomentVector out(level, ground_size, true);
  for_each_subset_of(set, level + 1, [&](const EdgeSet& s) { out.set(s, Rational(1)); });
  return out;
}

MomentVector monomial_lift(std::span<const Rational> x, std::size_t level) {
  bool binary = true;
  std::vector<EdgeId> support;
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (x[e] == Rational(1)) {
      support.push_back(static_cast<EdgeId>(e));
    } else if (!x[e].is_zero()) {
      binary = false;
    }
  }
  if (binary) return indicator_lift(EdgeSet(support), x.size(), level);
  MomentVector out(level, x.size(), false);
  for_each_subset(x.size(), level + 1, [&](const EdgeSet& s) {
    Rational prod(1);
    for (EdgeId e : s) prod *= x[e];
    out.set(s, prod);
  });
  return out;
}

std::vector<Rational> singletons(const MomentVector& y) {
  std::vector<Rational> out;
  out.reserve(y.ground_size());
  for (std::size_t e = 0; e < y.ground_size(); ++e) out.push_back(y.get(EdgeSet{static_cast<EdgeId>(e)}));
  return out;
}

}  // namespace saatsp
