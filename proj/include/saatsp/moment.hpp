#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>

#include "saatsp/digraph.hpp"

namespace saatsp {

/// Vector y indexed by edge subsets of size <= level+1 over ground set {0..ground_size-1}.
/// A sparse vector reads missing keys as 0; a dense vector requires every key.
class MomentVector {
 public:
  MomentVector() = default;
  MomentVector(std::size_t level, std::size_t ground_size, bool sparse);

  std::size_t level() const { return level_; }
  std::size_t ground_size() const { return ground_; }
  bool sparse() const { return sparse_; }

  /// y_S. Throws OutOfLevel if |S| > level+1, BadParams for a missing dense key
  /// or an element outside the ground set.
  Rational get(const EdgeSet& s) const;
  Rational operator[](const EdgeSet& s) const { return get(s); }
  /// Stores y_S (sparse vectors drop zeros).
  void set(const EdgeSet& s, Rational value);

  const std::map<EdgeSet, Rational>& entries() const { return entries_; }

  /// Same values restricted to sets of size <= new_level+1.
  MomentVector truncated(std::size_t new_level) const;
  /// True iff every entry is zero.
  bool is_zero() const;

  /// Exact entrywise equality at equal level and ground size (missing sparse keys count as 0).
  friend bool operator==(const MomentVector& a, const MomentVector& b);

  MomentVector& operator+=(const MomentVector& o);
  MomentVector& operator-=(const MomentVector& o);
  MomentVector& operator*=(const Rational& k);

 private:
  void check_key(const EdgeSet& s) const;
  template <class Op>
  MomentVector& combine(const MomentVector& o, Op op);

  std::size_t level_ = 0;
  std::size_t ground_ = 0;
  bool sparse_ = true;
  std::map<EdgeSet, Rational> entries_;
};

MomentVector operator+(MomentVector a, const MomentVector& b);
MomentVector operator-(MomentVector a, const MomentVector& b);
MomentVector operator*(const Rational& k, MomentVector a);

/// Calls fn for every subset of {0..ground_size-1} of size <= max_size, by size then lexicographically.
void for_each_subset(std::size_t ground_size, std::size_t max_size, const std::function<void(const EdgeSet&)>& fn);
/// Same, over the subsets of `items`.
void for_each_subset_of(const EdgeSet& items, std::size_t max_size, const std::function<void(const EdgeSet&)>& fn);
/// Number of subsets of an n-set with size <= k.
std::size_t count_subsets(std::size_t n, std::size_t k);

/// z_{S,Q} = sum over T subset of Q of (-1)^|T| y_{S u T}.
/// Throws BadParams if S and Q meet, OutOfLevel if |S|+|Q| > level+1.
Rational z_value(const MomentVector& y, const EdgeSet& s, const EdgeSet& q);

/// (e*y)_S = y_{S+e}, at level-1. Throws ZeroLevel at level 0.
MomentVector shift(EdgeId e, const MomentVector& y);

/// y_S = 1 iff S is a subset of `set` (the lifted indicator 1^set_t). Sparse.
MomentVector indicator_lift(const EdgeSet& set, std::size_t ground_size, std::size_t level);

/// y_S = product of x_e over S. Sparse for 0/1 points, dense otherwise.
MomentVector monomial_lift(std::span<const Rational> x, std::size_t level);

/// Singleton entries y_{e}, e = 0..ground_size-1.
std::vector<Rational> singletons(const MomentVector& y);

}  // namespace saatsp
