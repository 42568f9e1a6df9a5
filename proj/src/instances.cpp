#include "saatsp/instances.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <memory>
#include <string>

#include "saatsp/errors.hpp"
#include "saatsp/graph_algorithms.hpp"

namespace saatsp {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidDecomposition, msg); }

// Edge partition check shared by both decomposition kinds; returns the cycle of every edge.
std::vector<std::size_t> check_partition(const Digraph& g, const std::vector<std::vector<EdgeId>>& cycles) {
  const std::size_t unset = cycles.size();
  std::vector<std::size_t> owner(g.edge_count(), unset);
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    const auto& c = cycles[j];
    if (c.empty()) invalid("cycle " + std::to_string(j) + " is empty");
    std::vector<bool> visited(g.vertex_count(), false);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const EdgeId e = c[i];
      if (e >= g.edge_count()) invalid("cycle " + std::to_string(j) + " names a missing edge");
      if (owner[e] != unset) invalid("edge " + std::to_string(e) + " lies on two cycles");
      owner[e] = j;
      const Edge& ed = g.edge(e);
      const Edge& next = g.edge(c[(i + 1) % c.size()]);
      if (ed.head != next.tail) invalid("cycle " + std::to_string(j) + " is not a closed diwalk");
      if (visited[ed.tail]) invalid("cycle " + std::to_string(j) + " repeats a vertex");
      visited[ed.tail] = true;
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (owner[e] == unset) invalid("edge " + std::to_string(e) + " is on no cycle");
  }
  return owner;
}

// Orders an edge set forming one dicycle as a closed walk starting at `first`.
std::vector<EdgeId> walk_from(const Digraph& g, EdgeId first, const std::vector<EdgeId>& edges) {
  std::map<VertexId, EdgeId> by_tail;
  for (EdgeId e : edges) by_tail[g.edge(e).tail] = e;
  std::vector<EdgeId> walk{first};
  while (walk.size() < edges.size()) {
    auto it = by_tail.find(g.edge(walk.back()).head);
    if (it == by_tail.end()) break;
    walk.push_back(it->second);
  }
  return walk;
}

}  // namespace

bool Decomposition::in_witness(std::size_t j) const {
  return std::binary_search(witness.begin(), witness.end(), j);
}

std::vector<std::size_t> Decomposition::cycle_of_edges(std::size_t edge_count) const {
  std::vector<std::size_t> owner(edge_count, cycles.size());
  for (std::size_t j = 0; j < cycles.size(); ++j) {
    for (EdgeId e : cycles[j]) owner.at(e) = j;
  }
  return owner;
}

void validate_decomposition(const Digraph& g, const Decomposition& d) {
  check_partition(g, d.cycles);
  if (d.witness.empty()) invalid("witness set F is empty");
  if (!std::is_sorted(d.witness.begin(), d.witness.end()) ||
      std::adjacent_find(d.witness.begin(), d.witness.end()) != d.witness.end()) {
    invalid("witness set F must be sorted and duplicate-free");
  }
  for (std::size_t j : d.witness) {
    if (j >= d.cycles.size()) invalid("witness index " + std::to_string(j) + " out of range");
    if (!is_strongly_connected_without(g, EdgeSet(d.cycles[j]))) {
      invalid("removing cycle " + std::to_string(j) + " disconnects the digraph");
    }
  }
}

GoodInstance ladder(std::size_t length) {
  if (length < 1) throw Error(ErrorKind::BadParams, "ladder length must be >= 1");
  const std::size_t w = length + 1;
  auto at = [w](std::size_t row, std::size_t col) { return static_cast<VertexId>(row * w + col); };
  GoodInstance inst{Digraph(3 * w), {}};
  Digraph& g = inst.graph;
  std::vector<EdgeId> thick;
  for (std::size_t c = 0; c < length; ++c) thick.push_back(g.add_edge(at(0, c), at(0, c + 1), 1));
  thick.push_back(g.add_edge(at(0, length), at(1, length), 1));
  thick.push_back(g.add_edge(at(1, length), at(2, length), 1));
  for (std::size_t c = length; c > 0; --c) thick.push_back(g.add_edge(at(2, c), at(2, c - 1), 1));
  thick.push_back(g.add_edge(at(2, 0), at(1, 0), 1));
  thick.push_back(g.add_edge(at(1, 0), at(0, 0), 1));
  inst.decomposition.cycles.push_back(thick);
  for (std::size_t k = 1; k <= length; ++k) {
    EdgeId right = g.add_edge(at(1, k - 1), at(1, k), 1);
    EdgeId left = g.add_edge(at(1, k), at(1, k - 1), 1);
    inst.decomposition.cycles.push_back({right, left});
    inst.decomposition.witness.push_back(k);
  }
  validate_decomposition(g, inst.decomposition);
  return inst;
}

bool SplitInstance::in_witness(std::size_t j) const {
  return std::binary_search(witness.begin(), witness.end(), j);
}

SplitInstance split(const Digraph& g, const Decomposition& d) {
  const std::vector<std::size_t> owner = check_partition(g, d.cycles);
  const std::size_t n = g.vertex_count();

  struct Junction {
    std::size_t i, j;  // i < j
  };
  std::vector<std::optional<Junction>> junction(n);
  std::vector<VertexId> upper(n), lower(n);
  SplitInstance s;
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v) {
    const auto ins = g.in_edges(v);
    const auto outs = g.out_edges(v);
    if (ins.size() > 2 || outs.size() > 2) {
      throw Error(ErrorKind::DegreeTooHigh, "vertex " + std::to_string(v) + " has degree above 2");
    }
    if (ins.size() == 2 || outs.size() == 2) {
      if (ins.size() != 2 || outs.size() != 2) {
        throw Error(ErrorKind::AmbiguousCycles, "vertex " + std::to_string(v) + " has unequal in/out degree");
      }
      std::size_t a = owner[ins[0]];
      std::size_t b = owner[ins[1]];
      std::size_t c = owner[outs[0]];
      std::size_t e = owner[outs[1]];
      if (a == b || std::minmax(a, b) != std::minmax(c, e)) {
        throw Error(ErrorKind::AmbiguousCycles,
                    "vertex " + std::to_string(v) + " is not on exactly two cycles");
      }
      junction[v] = Junction{std::min(a, b), std::max(a, b)};
      upper[v] = next++;
      lower[v] = next++;
      s.vertex_origin.insert(s.vertex_origin.end(), {v, v});
      s.vertex_role.insert(s.vertex_role.end(), {SplitRole::Upper, SplitRole::Lower});
    } else {
      upper[v] = lower[v] = next++;
      s.vertex_origin.push_back(v);
      s.vertex_role.push_back(SplitRole::Whole);
    }
  }

  s.graph = Digraph(next);
  s.cycles.resize(d.cycles.size());
  std::vector<EdgeId> solid_ids, dashed_ids;
  std::vector<std::vector<EdgeId>> solid_of(d.cycles.size()), dashed_of(d.cycles.size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const std::size_t c = owner[e];
    // C_i leaves through v^b and enters v^u; C_j leaves through v^u and enters v^b.
    VertexId tail = upper[ed.tail];
    if (const auto& jn = junction[ed.tail]) tail = c == jn->i ? lower[ed.tail] : upper[ed.tail];
    VertexId head = upper[ed.head];
    if (const auto& jn = junction[ed.head]) head = c == jn->i ? upper[ed.head] : lower[ed.head];
    EdgeId id = s.graph.add_edge(tail, head, ed.cost);
    solid_ids.push_back(id);
    solid_of[c].push_back(id);
    s.origin.push_back(e);
    s.cycle_of_edge.push_back(c);
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!junction[v]) continue;
    EdgeId e0 = s.graph.add_edge(lower[v], upper[v], 0);
    EdgeId e1 = s.graph.add_edge(upper[v], lower[v], 0);
    dashed_ids.insert(dashed_ids.end(), {e0, e1});
    dashed_of[junction[v]->i].push_back(e0);
    dashed_of[junction[v]->j].push_back(e1);
    s.cycle_of_edge.insert(s.cycle_of_edge.end(), {junction[v]->i, junction[v]->j});
  }
  s.solid = EdgeSet(solid_ids);
  s.dashed = EdgeSet(dashed_ids);
  for (std::size_t c = 0; c < d.cycles.size(); ++c) {
    s.cycles[c] = SplitCycle{EdgeSet(solid_of[c]), EdgeSet(dashed_of[c])};
  }
  s.witness = d.witness;
  return s;
}

EdgeSet tour(const SplitInstance& s, std::size_t j) {
  if (!s.in_witness(j)) throw Error(ErrorKind::NotFractional, "cycle " + std::to_string(j) + " is not in F");
  EdgeSet out = s.cycles[j].dashed;
  for (std::size_t i = 0; i < s.cycles.size(); ++i) {
    if (i != j) out = out.united(s.cycles[i].solid);
  }
  return out;
}

bool is_hamiltonian_cycle(const Digraph& g, const EdgeSet& edges) {
  const std::size_t n = g.vertex_count();
  if (edges.size() != n || n == 0) return false;
  std::vector<std::optional<EdgeId>> out(n);
  std::vector<int> indeg(n, 0);
  for (EdgeId e : edges) {
    if (e >= g.edge_count()) return false;
    const Edge& ed = g.edge(e);
    if (out[ed.tail]) return false;
    out[ed.tail] = e;
    if (++indeg[ed.head] > 1) return false;
  }
  VertexId v = 0;
  for (std::size_t steps = 0; steps < n; ++steps) {
    v = g.edge(*out[v]).head;
    if (v == 0 && steps + 1 < n) return false;
  }
  return v == 0;
}

std::vector<EdgeId> ladder_split_return_path(const SplitInstance& s, std::size_t length) {
  // In ladder order the thick cycle edges length+1 .. 2*length+2 run from the
  // middle-right vertex up, along the top row and down to the middle-left vertex.
  if (s.origin.size() != 4 * length + 4) {
    throw Error(ErrorKind::BadParams, "split instance is not a ladder of length " + std::to_string(length));
  }
  std::vector<EdgeId> path;
  for (EdgeId e = 0; e < s.origin.size(); ++e) {
    if (s.origin[e] >= length + 1 && s.origin[e] <= 2 * length + 2) path.push_back(e);
  }
  std::sort(path.begin(), path.end(), [&](EdgeId a, EdgeId b) { return s.origin[a] < s.origin[b]; });
  return path;
}

void validate_pq_decomposition(const Digraph& g, const PqDecomposition& d) {
  check_partition(g, d.cycles);
  if (d.tags.size() != d.cycles.size()) invalid("one tag per cycle required");
  for (std::size_t j = 0; j < d.cycles.size(); ++j) {
    std::vector<bool> mask(g.edge_count(), false);
    for (EdgeId e : d.cycles[j]) mask[e] = true;
    const Components comp = strongly_connected_components(g, &mask);
    if (d.tags[j] == PqTag::InternalConnected) {
      if (comp.count != 1) invalid("internal cycle " + std::to_string(j) + " disconnects the digraph");
    } else if (comp.count != 2 || comp.id[d.p] == comp.id[d.q]) {
      invalid("external cycle " + std::to_string(j) + " does not separate p from q");
    }
  }
}

namespace {

// G_k with the bookkeeping needed to assemble decompositions one and two levels up.
struct CgkBlock {
  Digraph graph;
  VertexId p = 0, q = 0;
  std::vector<EdgeId> forward;   // p -> u_1 -> ... -> u_r -> q
  std::vector<EdgeId> backward;  // q -> v_r -> ... -> v_1 -> p
  std::vector<VertexId> vertex_offset;  // per copy of G_{k-1}
  std::vector<EdgeId> edge_offset;
  std::shared_ptr<const CgkBlock> child;
  PqDecomposition decomposition;
};

std::vector<EdgeId> shifted(const std::vector<EdgeId>& ids, EdgeId by) {
  std::vector<EdgeId> out;
  out.reserve(ids.size());
  for (EdgeId e : ids) out.push_back(e + by);
  return out;
}

void append(std::vector<EdgeId>& to, const std::vector<EdgeId>& from) { to.insert(to.end(), from.begin(), from.end()); }

// Decompositions of the r^2 copies of G_{k-2} inside the block, tagged internal.
void add_grandchild_cycles(const CgkBlock& b, std::vector<std::vector<EdgeId>>& cycles,
                           std::vector<PqTag>& tags, EdgeId extra_offset) {
  const CgkBlock& child = *b.child;
  if (!child.child) return;
  for (EdgeId co : b.edge_offset) {
    for (EdgeId go : child.edge_offset) {
      for (const auto& c : child.child->decomposition.cycles) {
        cycles.push_back(shifted(c, co + go + extra_offset));
        tags.push_back(PqTag::InternalConnected);
      }
    }
  }
}

std::shared_ptr<const CgkBlock> build_block(int k, int r) {
  auto b = std::make_shared<CgkBlock>();
  if (k == 0) {
    b->graph = Digraph(1);
    return b;
  }
  auto child = build_block(k - 1, r);
  const std::size_t cn = child->graph.vertex_count();
  const std::size_t cm = child->graph.edge_count();
  const auto rr = static_cast<std::size_t>(r);
  Digraph g(2 + rr * cn);
  b->p = 0;
  b->q = static_cast<VertexId>(g.vertex_count() - 1);
  for (std::size_t i = 0; i < rr; ++i) {
    const auto vo = static_cast<VertexId>(1 + i * cn);
    b->vertex_offset.push_back(vo);
    b->edge_offset.push_back(static_cast<EdgeId>(g.edge_count()));
    for (const Edge& e : child->graph.edges()) g.add_edge(e.tail + vo, e.head + vo, e.cost);
  }
  (void)cm;
  mpz_class cost_z;
  mpz_ui_pow_ui(cost_z.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(k - 1));
  const Rational cost(cost_z);
  auto u = [&](std::size_t i) { return b->vertex_offset[i - 1] + child->p; };
  auto v = [&](std::size_t i) { return b->vertex_offset[i - 1] + child->q; };
  b->forward.push_back(g.add_edge(b->p, u(1), cost));
  for (std::size_t i = 1; i < rr; ++i) b->forward.push_back(g.add_edge(u(i), u(i + 1), cost));
  b->forward.push_back(g.add_edge(u(rr), b->q, cost));
  b->backward.push_back(g.add_edge(b->q, v(rr), cost));
  for (std::size_t i = rr - 1; i >= 1; --i) b->backward.push_back(g.add_edge(v(i + 1), v(i), cost));
  b->backward.push_back(g.add_edge(v(1), b->p, cost));
  b->graph = std::move(g);
  b->child = child;

  // A^(i), B^(i): the forward and backward paths of copy i.
  auto A = [&](std::size_t i) { return shifted(child->forward, b->edge_offset[i - 1]); };
  auto B = [&](std::size_t i) { return shifted(child->backward, b->edge_offset[i - 1]); };
  auto& cycles = b->decomposition.cycles;
  std::vector<EdgeId> c0{b->forward[0]};
  append(c0, A(1));
  c0.push_back(b->backward[rr]);
  cycles.push_back(walk_from(b->graph, b->forward[0], c0));
  for (std::size_t i = 1; i < rr; ++i) {
    std::vector<EdgeId> c{b->forward[i], b->backward[rr - i]};
    append(c, B(i));
    append(c, A(i + 1));
    cycles.push_back(walk_from(b->graph, b->forward[i], c));
  }
  std::vector<EdgeId> cr{b->forward[rr], b->backward[0]};
  append(cr, B(rr));
  cycles.push_back(walk_from(b->graph, b->forward[rr], cr));
  b->decomposition.tags.assign(cycles.size(), PqTag::ExternalSplitting);
  add_grandchild_cycles(*b, cycles, b->decomposition.tags, 0);
  b->decomposition.p = b->p;
  b->decomposition.q = b->q;
  return b;
}

void check_cgk_params(int k, int r, int min_k) {
  if (r < 3) throw Error(ErrorKind::BadParams, "CGK construction needs r >= 3");
  if (k < min_k) throw Error(ErrorKind::BadParams, "CGK construction needs k >= " + std::to_string(min_k));
  if (k > 8) throw Error(ErrorKind::BadParams, "CGK level above 8 is not supported");
}

}  // namespace

CgkGInstance cgk_G(int k, int r) {
  check_cgk_params(k, r, 0);
  auto b = build_block(k, r);
  CgkGInstance out{b->graph, b->decomposition};
  validate_pq_decomposition(out.graph, out.decomposition);
  return out;
}

GoodInstance cgk_L(int k, int r) {
  check_cgk_params(k, r, 2);
  auto b = build_block(k, r);
  const CgkBlock& child = *b->child;
  const auto rr = static_cast<std::size_t>(r);
  const std::size_t copy_edges = rr * child.graph.edge_count();

  GoodInstance inst{Digraph(b->graph.vertex_count() - 2), {}};
  Digraph& g = inst.graph;
  for (EdgeId e = 0; e < copy_edges; ++e) {
    const Edge& ed = b->graph.edge(e);
    g.add_edge(ed.tail - 1, ed.head - 1, ed.cost);
  }
  const Rational cost = b->graph.edge(b->forward[0]).cost;
  auto u = [&](std::size_t i) { return b->vertex_offset[i - 1] + child.p - 1; };
  auto v = [&](std::size_t i) { return b->vertex_offset[i - 1] + child.q - 1; };
  std::vector<EdgeId> fwd(rr + 1), bwd(rr + 1);  // fwd[i] = (u_i, u_{i+1}), bwd[i] = (v_{i+1}, v_i)
  for (std::size_t i = 1; i < rr; ++i) fwd[i] = g.add_edge(u(i), u(i + 1), cost);
  fwd[rr] = g.add_edge(u(rr), u(1), cost);
  for (std::size_t i = rr - 1; i >= 1; --i) bwd[i] = g.add_edge(v(i + 1), v(i), cost);
  bwd[rr] = g.add_edge(v(1), v(rr), cost);

  auto A = [&](std::size_t i) { return shifted(child.forward, b->edge_offset[i - 1]); };
  auto B = [&](std::size_t i) { return shifted(child.backward, b->edge_offset[i - 1]); };
  auto& cycles = inst.decomposition.cycles;
  for (std::size_t i = 1; i <= rr; ++i) {
    std::vector<EdgeId> c{fwd[i], bwd[i]};
    append(c, B(i));
    append(c, A(i == rr ? 1 : i + 1));
    cycles.push_back(walk_from(g, fwd[i], c));
  }
  std::vector<PqTag> tags;
  add_grandchild_cycles(*b, cycles, tags, 0);
  for (std::size_t j = 0; j < cycles.size(); ++j) inst.decomposition.witness.push_back(j);
  validate_decomposition(g, inst.decomposition);
  return inst;
}

}  // namespace saatsp
