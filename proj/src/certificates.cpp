#include "saatsp/certificates.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "saatsp/errors.hpp"

namespace saatsp {

namespace {

std::vector<bool> active_cycles(std::size_t cycle_count, const std::vector<std::size_t>& witness,
                                const std::vector<std::size_t>& delta) {
  std::vector<bool> active(cycle_count, false);
  for (std::size_t j : witness) active.at(j) = true;
  for (std::size_t j : delta) {
    if (j >= cycle_count || !std::binary_search(witness.begin(), witness.end(), j)) {
      throw Error(ErrorKind::BadParams, "Delta index " + std::to_string(j) + " is not in F");
    }
    active[j] = false;
  }
  return active;
}

std::size_t count_hits(const std::vector<bool>& active, const std::vector<std::size_t>& cycle_of_edge,
                       const EdgeSet& s) {
  std::set<std::size_t> hit;
  for (EdgeId e : s) {
    const std::size_t c = cycle_of_edge.at(e);
    if (active[c]) hit.insert(c);
  }
  return hit.size();
}

}  // namespace

std::size_t fractional_hits(const Decomposition& d, const std::vector<std::size_t>& cycle_of_edge,
                            const std::vector<std::size_t>& delta, const EdgeSet& s) {
  return count_hits(active_cycles(d.cycles.size(), d.witness, delta), cycle_of_edge, s);
}

MomentVector y_balanced(const Digraph& g, const Decomposition& d, const std::vector<std::size_t>& delta,
                        std::size_t t) {
  const auto active = active_cycles(d.cycles.size(), d.witness, delta);
  const auto owner = d.cycle_of_edges(g.edge_count());
  const Rational denom(static_cast<long>(t + 2));
  MomentVector y(t, g.edge_count(), false);
  for_each_subset(g.edge_count(), t + 1, [&](const EdgeSet& s) {
    const auto f = static_cast<long>(count_hits(active, owner, s));
    y.set(s, (denom - Rational(f)) / denom);
  });
  return y;
}

MomentVector z_dfj(const SplitInstance& s, const std::vector<std::size_t>& delta, std::size_t t) {
  const auto active = active_cycles(s.cycles.size(), s.witness, delta);
  const std::size_t free_cycles = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
  if (free_cycles < t + 2) {
    throw Error(ErrorKind::WitnessTooSmall, "|F| - |Delta| = " + std::to_string(free_cycles) +
                                                " is below t+2 = " + std::to_string(t + 2));
  }
  for (std::size_t j = 0; j < active.size(); ++j) {
    if (active[j] && !is_hamiltonian_cycle(s.graph, tour(s, j))) {
      throw Error(ErrorKind::NoGoodTours, "tour(" + std::to_string(j) + ") is not a Hamiltonian dicycle");
    }
  }
  const Rational denom(static_cast<long>(t + 2));
  const Rational tour_value = Rational(1) / denom;
  MomentVector z(t, s.graph.edge_count(), true);
  for_each_subset(s.graph.edge_count(), t + 1, [&](const EdgeSet& set) {
    // A dashed edge lies only in the tour of its own cycle, so that cycle is the sole candidate.
    std::optional<std::size_t> candidate;
    bool possible = true;
    std::set<std::size_t> hit;
    for (EdgeId e : set) {
      const std::size_t c = s.cycle_of_edge[e];
      if (s.dashed.contains(e)) {
        if (candidate && *candidate != c) possible = false;
        candidate = c;
      } else if (active[c]) {
        hit.insert(c);
      }
    }
    if (!candidate) {
      z.set(set, (denom - Rational(static_cast<long>(hit.size()))) / denom);
      return;
    }
    if (!possible || !active[*candidate]) return;
    for (EdgeId e : set) {
      if (!s.dashed.contains(e) && s.cycle_of_edge[e] == *candidate) return;
    }
    z.set(set, tour_value);
  });
  return z;
}

RestrictedPath restrict_path(const MomentVector& z, const Digraph& g, std::span<const EdgeId> path) {
  if (path.empty()) throw Error(ErrorKind::NotUnitPath, "empty path");
  if (z.ground_size() != g.edge_count()) throw Error(ErrorKind::BadParams, "vector does not match the digraph");
  std::vector<bool> internal(g.vertex_count(), false);
  std::vector<bool> visited(g.vertex_count(), false);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const EdgeId e = path[i];
    if (e >= g.edge_count()) throw Error(ErrorKind::NotUnitPath, "path names a missing edge");
    if (z.get(EdgeSet{e}) != Rational(1)) {
      throw Error(ErrorKind::NotUnitPath, "edge " + std::to_string(e) + " has value " + z.get(EdgeSet{e}).to_string());
    }
    const Edge& ed = g.edge(e);
    if (visited[ed.tail]) throw Error(ErrorKind::NotUnitPath, "path repeats a vertex");
    visited[ed.tail] = true;
    if (i + 1 < path.size()) {
      if (g.edge(path[i + 1]).tail != ed.head) throw Error(ErrorKind::NotUnitPath, "edges do not form a dipath");
      internal[ed.head] = true;
    }
  }
  RestrictedPath r;
  r.q = g.edge(path.front()).tail;
  r.p = g.edge(path.back()).head;
  if (visited[r.p]) throw Error(ErrorKind::NotUnitPath, "path is closed");
  std::vector<VertexId> new_id(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (internal[v]) continue;
    new_id[v] = static_cast<VertexId>(r.vertex_origin.size());
    r.vertex_origin.push_back(v);
  }
  r.graph = Digraph(r.vertex_origin.size());
  std::vector<std::optional<EdgeId>> edge_map(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (internal[ed.tail] || internal[ed.head]) continue;
    edge_map[e] = r.graph.add_edge(new_id[ed.tail], new_id[ed.head], ed.cost);
    r.edge_origin.push_back(e);
  }
  r.p = new_id[r.p];
  r.q = new_id[r.q];
  r.z = MomentVector(z.level(), r.graph.edge_count(), z.sparse());
  for (const auto& [set, v] : z.entries()) {
    std::vector<EdgeId> mapped;
    bool kept = true;
    for (EdgeId e : set) {
      if (!edge_map[e]) {
        kept = false;
        break;
      }
      mapped.push_back(*edge_map[e]);
    }
    if (kept) r.z.set(EdgeSet(std::move(mapped)), v);
  }
  return r;
}

Rational objective_value(const MomentVector& y, std::span<const Rational> costs) {
  if (costs.size() != y.ground_size()) throw Error(ErrorKind::BadParams, "cost vector size mismatch");
  Rational sum;
  for (std::size_t e = 0; e < costs.size(); ++e) {
    if (!costs[e].is_zero()) sum += costs[e] * y.get(EdgeSet{static_cast<EdgeId>(e)});
  }
  return sum;
}

}  // namespace saatsp
