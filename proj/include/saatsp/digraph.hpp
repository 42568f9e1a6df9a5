#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "saatsp/rational.hpp"

namespace saatsp {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId tail;
  VertexId head;
  Rational cost;
};

/// Sorted, duplicate-free set of edge ids. Usable directly as a map key.
class EdgeSet {
 public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<EdgeId> ids);
  explicit EdgeSet(std::vector<EdgeId> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(EdgeId e) const;
  /// True when every element of this set is in `other`.
  bool subset_of(const EdgeSet& other) const;
  bool intersects(const EdgeSet& other) const;

  EdgeSet with(EdgeId e) const;
  EdgeSet without(EdgeId e) const;
  EdgeSet united(const EdgeSet& other) const;

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  EdgeId operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<EdgeId>& ids() const { return ids_; }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.ids_ == b.ids_; }
  friend bool operator!=(const EdgeSet& a, const EdgeSet& b) { return a.ids_ != b.ids_; }
  /// Canonical order: by size, then lexicographic.
  friend bool operator<(const EdgeSet& a, const EdgeSet& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<EdgeId> ids_;
};

/// Directed multigraph with nonnegative exact costs. EdgeId = position in edges().
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t vertex_count) : n_(vertex_count) {}

  EdgeId add_edge(VertexId tail, VertexId head, Rational cost);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<EdgeId> out_edges(VertexId v) const;
  std::vector<EdgeId> in_edges(VertexId v) const;
  std::size_t out_degree(VertexId v) const;
  std::size_t in_degree(VertexId v) const;

  std::vector<Rational> costs() const;
  Rational total_cost() const;
  /// Costs of the edges in `set`, summed.
  Rational cost_of(std::span<const EdgeId> set) const;

  /// Digraph on the same vertices with the listed edges removed (ids are renumbered
  /// in order; `kept` receives the old id of each surviving edge when non-null).
  Digraph without_edges(const EdgeSet& removed, std::vector<EdgeId>* kept = nullptr) const;

  friend bool operator==(const Digraph& a, const Digraph& b);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Line format: header "n m", then m lines "tail head num/den".
void write_digraph(std::ostream& os, const Digraph& g);
std::string digraph_to_text(const Digraph& g);
Digraph read_digraph(std::istream& is);
Digraph digraph_from_text(const std::string& text);

}  // namespace saatsp

template <>
struct std::hash<saatsp::EdgeSet> {
  std::size_t operator()(const saatsp::EdgeSet& s) const noexcept { return s.hash(); }
};
