#include "saatsp/digraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "saatsp/errors.hpp"

namespace saatsp {

EdgeSet::EdgeSet(std::initializer_list<EdgeId> ids) : EdgeSet(std::vector<EdgeId>(ids)) {}

EdgeSet::EdgeSet(std::vector<EdgeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool EdgeSet::contains(EdgeId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

bool EdgeSet::subset_of(const EdgeSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

bool EdgeSet::intersects(const EdgeSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

EdgeSet EdgeSet::with(EdgeId e) const {
  EdgeSet out;
  out.ids_.reserve(ids_.size() + 1);
  auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
  out.ids_.assign(ids_.begin(), it);
  if (it == ids_.end() || *it != e) out.ids_.push_back(e);
  out.ids_.insert(out.ids_.end(), it, ids_.end());
  return out;
}

EdgeSet EdgeSet::without(EdgeId e) const {
  EdgeSet out;
  out.ids_.reserve(ids_.size());
  for (EdgeId x : ids_) if (x != e) out.ids_.push_back(x);
  return out;
}

EdgeSet EdgeSet::united(const EdgeSet& other) const {
  EdgeSet out;
  out.ids_.reserve(ids_.size() + other.ids_.size());
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out.ids_));
  return out;
}

bool operator<(const EdgeSet& a, const EdgeSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.ids_ < b.ids_;
}

std::size_t EdgeSet::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL ^ ids_.size();
  for (EdgeId e : ids_) {
    h ^= e + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string EdgeSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids_[i]);
  }
  return s + "}";
}

EdgeId Digraph::add_edge(VertexId tail, VertexId head, Rational cost) {
  if (tail >= n_ || head >= n_) throw Error(ErrorKind::BadParams, "edge endpoint out of range");
  if (tail == head) throw Error(ErrorKind::BadParams, "self-loop at vertex " + std::to_string(tail));
  if (cost.sign() < 0) throw Error(ErrorKind::BadParams, "negative edge cost");
  edges_.push_back(Edge{tail, head, std::move(cost)});
  return static_cast<EdgeId>(edges_.size() - 1);
}

std::vector<EdgeId> Digraph::out_edges(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edges_.size(); ++e) if (edges_[e].tail == v) out.push_back(e);
  return out;
}

std::vector<EdgeId> Digraph::in_edges(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edges_.size(); ++e) if (edges_[e].head == v) out.push_back(e);
  return out;
}

std::size_t Digraph::out_degree(VertexId v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.tail == v; }));
}

std::size_t Digraph::in_degree(VertexId v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.head == v; }));
}

std::vector<Rational> Digraph::costs() const {
  std::vector<Rational> c;
  c.reserve(edges_.size());
  for (const Edge& e : edges_) c.push_back(e.cost);
  return c;
}

Rational Digraph::total_cost() const {
  Rational sum;
  for (const Edge& e : edges_) sum += e.cost;
  return sum;
}

Rational Digraph::cost_of(std::span<const EdgeId> set) const {
  Rational sum;
  for (EdgeId e : set) sum += edges_.at(e).cost;
  return sum;
}

Digraph Digraph::without_edges(const EdgeSet& removed, std::vector<EdgeId>* kept) const {
  Digraph out(n_);
  if (kept) kept->clear();
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (removed.contains(e)) continue;
    out.edges_.push_back(edges_[e]);
    if (kept) kept->push_back(e);
  }
  return out;
}

bool operator==(const Digraph& a, const Digraph& b) {
  if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.tail != y.tail || x.head != y.head || x.cost != y.cost) return false;
  }
  return true;
}

void write_digraph(std::ostream& os, const Digraph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    os << e.tail << ' ' << e.head << ' ' << e.cost.to_string() << '\n';
  }
}

std::string digraph_to_text(const Digraph& g) {
  std::ostringstream os;
  write_digraph(os, g);
  return os.str();
}

Digraph read_digraph(std::istream& is) {
  long long n = -1;
  long long m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw Error(ErrorKind::ParseError, "bad digraph header");
  Digraph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    long long tail = -1;
    long long head = -1;
    std::string cost;
    if (!(is >> tail >> head >> cost)) {
      throw Error(ErrorKind::ParseError, "truncated edge list at edge " + std::to_string(i));
    }
    if (tail < 0 || head < 0 || tail >= n || head >= n) {
      throw Error(ErrorKind::ParseError, "edge endpoint out of range at edge " + std::to_string(i));
    }
    g.add_edge(static_cast<VertexId>(tail), static_cast<VertexId>(head), Rational::parse(cost));
  }
  return g;
}

Digraph digraph_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_digraph(is);
}

}  // namespace saatsp
