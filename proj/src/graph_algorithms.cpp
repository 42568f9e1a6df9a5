#include "saatsp/graph_algorithms.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "saatsp/errors.hpp"

namespace saatsp {

namespace {

struct Adjacency {
  std::vector<std::vector<VertexId>> out;
  std::vector<std::vector<VertexId>> in;
};

Adjacency build_adjacency(const Digraph& g, const std::vector<bool>* removed) {
  Adjacency adj;
  adj.out.resize(g.vertex_count());
  adj.in.resize(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (removed && (*removed)[e]) continue;
    const Edge& ed = g.edge(e);
    adj.out[ed.tail].push_back(ed.head);
    adj.in[ed.head].push_back(ed.tail);
  }
  return adj;
}

// Residual network reused across the (s, t) pairs of one min-cut query.
class FlowNetwork {
 public:
  FlowNetwork(const Digraph& g, std::span<const Rational> weights) : n_(g.vertex_count()) {
    head_.resize(n_);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (weights[e].is_zero()) continue;
      const Edge& ed = g.edge(e);
      add_arc(ed.tail, ed.head, weights[e]);
    }
  }

  Rational run(VertexId s, VertexId t, const Rational* limit, std::vector<VertexId>* side) {
    for (Arc& a : arcs_) a.residual = a.capacity;
    Rational flow;
    std::vector<int> parent_arc(n_);
    while (limit == nullptr || flow < *limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -1);
      std::deque<VertexId> queue{s};
      std::vector<bool> seen(n_, false);
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        VertexId v = queue.front();
        queue.pop_front();
        for (int ai : head_[v]) {
          const Arc& a = arcs_[static_cast<std::size_t>(ai)];
          if (seen[a.to] || a.residual.sign() <= 0) continue;
          seen[a.to] = true;
          parent_arc[a.to] = ai;
          queue.push_back(a.to);
        }
      }
      if (!seen[t]) {
        if (side) {
          side->clear();
          for (VertexId v = 0; v < n_; ++v) if (seen[v]) side->push_back(v);
        }
        return flow;
      }
      Rational bottleneck;
      bool first = true;
      for (VertexId v = t; v != s;) {
        const Arc& a = arcs_[static_cast<std::size_t>(parent_arc[v])];
        if (first || a.residual < bottleneck) bottleneck = a.residual;
        first = false;
        v = arcs_[static_cast<std::size_t>(a.reverse)].to;
      }
      for (VertexId v = t; v != s;) {
        Arc& a = arcs_[static_cast<std::size_t>(parent_arc[v])];
        a.residual -= bottleneck;
        arcs_[static_cast<std::size_t>(a.reverse)].residual += bottleneck;
        v = arcs_[static_cast<std::size_t>(a.reverse)].to;
      }
      flow += bottleneck;
    }
    return flow;  // reached limit; side is not meaningful
  }

 private:
  struct Arc {
    VertexId to;
    int reverse;
    Rational capacity;
    Rational residual;
  };

  void add_arc(VertexId u, VertexId v, const Rational& cap) {
    const int fwd = static_cast<int>(arcs_.size());
    arcs_.push_back(Arc{v, fwd + 1, cap, cap});
    arcs_.push_back(Arc{u, fwd, Rational(), Rational()});
    head_[u].push_back(fwd);
    head_[v].push_back(fwd + 1);
  }

  std::size_t n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
};

std::vector<std::pair<VertexId, VertexId>> candidate_pairs(std::size_t n, const CutSide& side) {
  if (n < 2) throw Error(ErrorKind::BadParams, "directed cut needs at least two vertices");
  std::vector<std::pair<VertexId, VertexId>> pairs;
  const auto nv = static_cast<VertexId>(n);
  if (side.must_contain && side.must_avoid) {
    if (*side.must_contain == *side.must_avoid) {
      throw Error(ErrorKind::BadParams, "cut side constraint contains and avoids the same vertex");
    }
    pairs.emplace_back(*side.must_contain, *side.must_avoid);
  } else if (side.must_contain) {
    for (VertexId t = 0; t < nv; ++t) if (t != *side.must_contain) pairs.emplace_back(*side.must_contain, t);
  } else if (side.must_avoid) {
    for (VertexId s = 0; s < nv; ++s) if (s != *side.must_avoid) pairs.emplace_back(s, *side.must_avoid);
  } else {
    for (VertexId t = 1; t < nv; ++t) {
      pairs.emplace_back(0, t);
      pairs.emplace_back(t, 0);
    }
  }
  return pairs;
}

void require_nonnegative(const Digraph& g, std::span<const Rational> weights) {
  if (weights.size() != g.edge_count()) throw Error(ErrorKind::BadParams, "weight vector size mismatch");
  for (const Rational& w : weights) {
    if (w.sign() < 0) throw Error(ErrorKind::NegativeWeight, "min-cut weights must be nonnegative");
  }
}

}  // namespace

Components strongly_connected_components(const Digraph& g, const std::vector<bool>* removed) {
  const std::size_t n = g.vertex_count();
  Adjacency adj = build_adjacency(g, removed);

  // Kosaraju: finishing order on g, then sweep the reverse graph.
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<bool> seen(n, false);
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj.out[v].size()) {
        VertexId w = adj.out[v][next++];
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  Components comp;
  comp.id.assign(n, n);
  std::vector<std::size_t> raw(n, n);
  std::size_t raw_count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (raw[*it] != n) continue;
    std::vector<VertexId> stack{*it};
    raw[*it] = raw_count;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : adj.in[v]) {
        if (raw[w] == n) {
          raw[w] = raw_count;
          stack.push_back(w);
        }
      }
    }
    ++raw_count;
  }
  // Renumber by first appearance so ids are deterministic in vertex order.
  std::vector<std::size_t> remap(raw_count, n);
  for (VertexId v = 0; v < n; ++v) {
    if (remap[raw[v]] == n) remap[raw[v]] = comp.count++;
    comp.id[v] = remap[raw[v]];
  }
  return comp;
}

bool is_strongly_connected(const Digraph& g) {
  return strongly_connected_components(g).count <= 1;
}

bool is_strongly_connected_without(const Digraph& g, const EdgeSet& removed) {
  std::vector<bool> mask(g.edge_count(), false);
  for (EdgeId e : removed) mask.at(e) = true;
  return strongly_connected_components(g, &mask).count <= 1;
}

EdgeId complete_edge_id(std::size_t n, VertexId u, VertexId v) {
  return static_cast<EdgeId>(u * (n - 1) + (v > u ? v - 1 : v));
}

Digraph metric_completion(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::optional<Rational>>> dist(n, std::vector<std::optional<Rational>>(n));
  for (VertexId v = 0; v < n; ++v) dist[v][v] = Rational(0);
  for (const Edge& e : g.edges()) {
    auto& d = dist[e.tail][e.head];
    if (!d || e.cost < *d) d = e.cost;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!dist[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dist[k][j]) continue;
        Rational via = *dist[i][k] + *dist[k][j];
        if (!dist[i][j] || via < *dist[i][j]) dist[i][j] = std::move(via);
      }
    }
  }
  Digraph complete(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (!dist[u][v]) {
        throw Error(ErrorKind::NotStronglyConnected,
                    "no dipath from " + std::to_string(u) + " to " + std::to_string(v));
      }
      complete.add_edge(u, v, *dist[u][v]);
    }
  }
  return complete;
}

Rational max_flow(const Digraph& g, std::span<const Rational> weights, VertexId s, VertexId t,
                  const Rational* limit, std::vector<VertexId>* source_side) {
  require_nonnegative(g, weights);
  if (s == t || s >= g.vertex_count() || t >= g.vertex_count()) {
    throw Error(ErrorKind::BadParams, "max-flow needs distinct in-range terminals");
  }
  FlowNetwork net(g, weights);
  return net.run(s, t, limit, source_side);
}

DirectedCut min_directed_cut(const Digraph& g, std::span<const Rational> weights, const CutSide& side) {
  require_nonnegative(g, weights);
  FlowNetwork net(g, weights);
  std::optional<DirectedCut> best;
  std::vector<VertexId> cut;
  for (auto [s, t] : candidate_pairs(g.vertex_count(), side)) {
    Rational value = net.run(s, t, nullptr, &cut);
    if (!best || value < best->value) best = DirectedCut{std::move(value), cut};
  }
  return *best;
}

std::optional<DirectedCut> find_cut_below(const Digraph& g, std::span<const Rational> weights,
                                          const Rational& threshold, const CutSide& side) {
  require_nonnegative(g, weights);
  if (threshold.sign() <= 0) {
    // Every cut value is >= 0; still validate the side constraint.
    (void)candidate_pairs(g.vertex_count(), side);
    return std::nullopt;
  }
  FlowNetwork net(g, weights);
  std::vector<VertexId> cut;
  for (auto [s, t] : candidate_pairs(g.vertex_count(), side)) {
    Rational value = net.run(s, t, &threshold, &cut);
    if (value < threshold) return DirectedCut{std::move(value), cut};
  }
  return std::nullopt;
}

std::vector<DirectedCut> violated_cuts(const Digraph& g, std::span<const Rational> weights,
                                       const Rational& threshold, const CutSide& side) {
  require_nonnegative(g, weights);
  std::vector<DirectedCut> found;
  if (threshold.sign() <= 0) return found;
  FlowNetwork net(g, weights);
  std::vector<VertexId> cut;
  for (auto [s, t] : candidate_pairs(g.vertex_count(), side)) {
    Rational value = net.run(s, t, &threshold, &cut);
    if (value >= threshold) continue;
    bool seen = false;
    for (const DirectedCut& c : found) seen = seen || c.source_side == cut;
    if (!seen) found.push_back(DirectedCut{std::move(value), cut});
  }
  return found;
}

DirectedCut min_directed_cut_enumerated(const Digraph& g, std::span<const Rational> weights,
                                        const CutSide& side, std::size_t max_n) {
  const std::size_t n = g.vertex_count();
  if (weights.size() != g.edge_count()) throw Error(ErrorKind::BadParams, "weight vector size mismatch");
  if (n > max_n || n >= 63) {
    throw Error(ErrorKind::TooLargeToEnumerate,
                std::to_string(n) + " vertices exceeds enumeration bound " + std::to_string(max_n));
  }
  if (n < 2) throw Error(ErrorKind::BadParams, "directed cut needs at least two vertices");
  std::optional<DirectedCut> best;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    if (side.must_contain && !((mask >> *side.must_contain) & 1U)) continue;
    if (side.must_avoid && ((mask >> *side.must_avoid) & 1U)) continue;
    Rational value;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      if (((mask >> ed.tail) & 1U) && !((mask >> ed.head) & 1U)) value += weights[e];
    }
    if (!best || value < best->value) {
      std::vector<VertexId> members;
      for (VertexId v = 0; v < n; ++v) if ((mask >> v) & 1U) members.push_back(v);
      best = DirectedCut{std::move(value), std::move(members)};
    }
  }
  if (!best) throw Error(ErrorKind::BadParams, "no admissible cut");
  return *best;
}

}  // namespace saatsp
