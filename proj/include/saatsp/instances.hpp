#pragma once

#include <cstddef>
#include <vector>

#include "saatsp/digraph.hpp"

namespace saatsp {

/// Partition of E into edge-disjoint dicycles plus a witness set F of cycle
/// indices whose individual removal keeps the digraph strongly connected.
struct Decomposition {
  std::vector<std::vector<EdgeId>> cycles;  // each an ordered closed diwalk
  std::vector<std::size_t> witness;         // F, sorted ascending

  bool in_witness(std::size_t j) const;
  /// Cycle index of every edge; `edge_count` must cover all cycle edges.
  std::vector<std::size_t> cycle_of_edges(std::size_t edge_count) const;
};

/// Throws InvalidDecomposition unless cycles are vertex-simple closed diwalks that
/// partition E(g), F is nonempty, and G - E(C_j) is strongly connected for j in F.
void validate_decomposition(const Digraph& g, const Decomposition& d);

struct GoodInstance {
  Digraph graph;
  Decomposition decomposition;
};

/// Three rows of l+1 vertices (bottom, middle, top; left to right, so vertex
/// (row, col) = row*(l+1)+col), unit costs. Edge order: the thick outer dicycle
/// walked from the bottom-left corner (bottom row rightward, right column up, top
/// row leftward, left column down; 2l+4 edges), then for k = 1..l the thin pair
/// (mid k-1 -> mid k, mid k -> mid k-1). Cycle 0 is thick, cycle k the k-th thin
/// 2-cycle, F = {1..l}. The witness property is verified before returning.
GoodInstance ladder(std::size_t length);

/// Image of a vertex after splitting.
enum class SplitRole { Whole, Upper, Lower };

struct SplitCycle {
  EdgeSet solid;   // E(C_j)
  EdgeSet dashed;  // D(C_j)
};

struct SplitInstance {
  Digraph graph;
  EdgeSet solid;
  EdgeSet dashed;
  std::vector<SplitCycle> cycles;
  std::vector<EdgeId> origin;          // solid edge of graph -> edge of the source digraph
  std::vector<std::size_t> witness;    // F, inherited
  std::vector<VertexId> vertex_origin; // vertex of graph -> vertex of the source digraph
  std::vector<SplitRole> vertex_role;
  std::vector<std::size_t> cycle_of_edge;

  bool in_witness(std::size_t j) const;
};

/// Splits every in/out-degree-2 vertex v (on cycles C_i, C_j with i < j) into
/// v^u (entered by C_i, left by C_j) and v^b (entered by C_j, left by C_i), joined
/// by dashed zero-cost edges (v^b, v^u) in C_i and (v^u, v^b) in C_j.
/// Solid edges keep the source edge ids (origin is the identity); dashed edges
/// follow in vertex order. Images of a split vertex get consecutive ids (u, b).
SplitInstance split(const Digraph& g, const Decomposition& d);

/// D(C_j) together with the solid edges of every other cycle. Throws NotFractional if j not in F.
EdgeSet tour(const SplitInstance& s, std::size_t j);

/// True iff `edges` is one dicycle through every vertex of g.
bool is_hamiltonian_cycle(const Digraph& g, const EdgeSet& edges);

/// Solid dipath in the split ladder from the image of the middle-right vertex up
/// the right column, along the top row and down to the image of the middle-left
/// vertex. Returned in walk order (first tail = q, last head = p).
std::vector<EdgeId> ladder_split_return_path(const SplitInstance& s, std::size_t length);

enum class PqTag { ExternalSplitting, InternalConnected };

struct PqDecomposition {
  std::vector<std::vector<EdgeId>> cycles;
  std::vector<PqTag> tags;
  VertexId p = 0;
  VertexId q = 0;
};

/// Throws InvalidDecomposition unless the cycles partition E(g), every external
/// cycle leaves exactly two strong components separating p from q, and every
/// internal cycle leaves g strongly connected.
void validate_pq_decomposition(const Digraph& g, const PqDecomposition& d);

struct CgkGInstance {
  Digraph graph;
  PqDecomposition decomposition;
};

/// Recursive CGK digraph G_k. Vertex order: p, the r copies of G_{k-1}, q.
/// Edge order: copy edges in copy order, then the p->q dipath, then the q->p dipath.
/// Throws BadParams if r < 3.
CgkGInstance cgk_G(int k, int r);

/// L_k = G_k - {p, q} + (u_r, u_1) + (v_1, v_r), with F = all cycles.
/// Edge order: copy edges, u_1->..->u_r, (u_r, u_1), v_r->..->v_1, (v_1, v_r).
/// Throws BadParams if k < 2 or r < 3.
GoodInstance cgk_L(int k, int r);

}  // namespace saatsp
