#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "saatsp/digraph.hpp"

namespace saatsp {

/// Component id per vertex (ids are 0..count-1 in order of first appearance).
struct Components {
  std::vector<std::size_t> id;
  std::size_t count = 0;
};

/// Strongly connected components of g, ignoring edges with `(*removed)[e] == true`.
Components strongly_connected_components(const Digraph& g,
                                         const std::vector<bool>* removed = nullptr);

bool is_strongly_connected(const Digraph& g);
/// Strong connectivity of g - E(removed).
bool is_strongly_connected_without(const Digraph& g, const EdgeSet& removed);

/// Complete digraph on V(g) whose cost(v,w) is the shortest v,w dipath cost in g.
/// Edges are emitted in (tail, head) lexicographic order; see complete_edge_id.
/// Throws NotStronglyConnected if some ordered pair has no dipath.
Digraph metric_completion(const Digraph& g);

/// EdgeId of (u, v) in a complete digraph on n vertices built by metric_completion.
EdgeId complete_edge_id(std::size_t n, VertexId u, VertexId v);

/// Restriction on the vertex set U of a directed cut delta^out(U).
struct CutSide {
  std::optional<VertexId> must_contain;
  std::optional<VertexId> must_avoid;
};

struct DirectedCut {
  Rational value;
  std::vector<VertexId> source_side;  // U, sorted
};

/// Minimum over nonempty proper U (respecting `side`) of w(delta^out(U)).
/// Runs one max-flow per candidate (s, t) pair; weights must be nonnegative.
/// Throws NegativeWeight if some w_e < 0, BadParams if no admissible U exists.
DirectedCut min_directed_cut(const Digraph& g, std::span<const Rational> weights,
                             const CutSide& side = {});

/// Some admissible U with w(delta^out(U)) < threshold, if one exists.
/// Same preconditions as min_directed_cut; max-flows stop early once they reach threshold.
std::optional<DirectedCut> find_cut_below(const Digraph& g, std::span<const Rational> weights,
                                          const Rational& threshold, const CutSide& side = {});

/// Distinct cuts below threshold found by the candidate (s, t) max-flows, one per pair at most.
std::vector<DirectedCut> violated_cuts(const Digraph& g, std::span<const Rational> weights,
                                       const Rational& threshold, const CutSide& side = {});

/// Exhaustive minimum over all admissible U; any weight signs. Throws
/// TooLargeToEnumerate when n > max_n.
DirectedCut min_directed_cut_enumerated(const Digraph& g, std::span<const Rational> weights,
                                        const CutSide& side, std::size_t max_n);

/// Maximum s-t flow value with capacities `weights` (Edmonds-Karp, exact).
/// When `limit` is given, augmentation stops once the flow reaches it.
/// `source_side` receives the vertices reachable from s in the final residual graph.
Rational max_flow(const Digraph& g, std::span<const Rational> weights, VertexId s, VertexId t,
                  const Rational* limit = nullptr, std::vector<VertexId>* source_side = nullptr);

}  // namespace saatsp
