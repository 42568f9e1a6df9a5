#include "saatsp/oracles.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include "saatsp/errors.hpp"

namespace saatsp {

namespace {

using CostMatrix = std::vector<std::vector<Rational>>;

CostMatrix complete_costs(const Digraph& g, std::size_t max_n) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw Error(ErrorKind::BadParams, "empty digraph");
  if (n > max_n || n > 30) {
    throw Error(ErrorKind::TooLarge, std::to_string(n) + " vertices exceeds oracle bound " + std::to_string(max_n));
  }
  std::vector<std::vector<std::optional<Rational>>> best(n, std::vector<std::optional<Rational>>(n));
  for (const Edge& e : g.edges()) {
    auto& b = best[e.tail][e.head];
    if (!b || e.cost < *b) b = e.cost;
  }
  CostMatrix c(n, std::vector<Rational>(n));
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (!best[u][v]) throw Error(ErrorKind::BadParams, "oracle needs a complete digraph");
      c[u][v] = *best[u][v];
    }
  }
  return c;
}

// Integer costs after scaling by the common denominator, when they fit comfortably in int64.
std::optional<std::vector<std::vector<std::int64_t>>> scaled_costs(const CostMatrix& c, mpz_class& scale) {
  scale = 1;
  for (const auto& row : c) {
    for (const Rational& x : row) scale = lcm(scale, x.denominator());
  }
  const std::size_t n = c.size();
  const mpz_class limit = mpz_class(1) << 60;
  std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      mpz_class s = c[u][v].numerator() * (scale / c[u][v].denominator());
      if (s * static_cast<long>(n + 1) >= limit) return std::nullopt;
      out[u][v] = s.get_si();
    }
  }
  return out;
}

// Minimum-cost Hamiltonian dipath from `start` through all vertices, closed back to
// `start` when `end` is empty, otherwise ending at `end`.
template <class T, class Cost>
TourResult held_karp(std::size_t n, VertexId start, std::optional<VertexId> end, const Cost& cost,
                     const CostMatrix& exact) {
  // Bit i of a mask stands for others[i].
  std::vector<VertexId> others;
  for (VertexId v = 0; v < n; ++v) if (v != start) others.push_back(v);
  const std::size_t k = others.size();
  const std::size_t masks = std::size_t{1} << k;
  std::vector<T> dp(masks * k);
  std::vector<std::uint8_t> reached(masks * k, 0);
  std::vector<std::uint8_t> parent(masks * k, 0xFF);
  for (std::size_t i = 0; i < k; ++i) {
    dp[(std::size_t{1} << i) * k + i] = cost(start, others[i]);
    reached[(std::size_t{1} << i) * k + i] = 1;
  }
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t at = mask * k + i;
      if (!reached[at]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if ((mask >> j) & 1U) continue;
        const std::size_t next = (mask | (std::size_t{1} << j)) * k + j;
        T cand = dp[at] + cost(others[i], others[j]);
        if (!reached[next] || cand < dp[next]) {
          dp[next] = std::move(cand);
          reached[next] = 1;
          parent[next] = static_cast<std::uint8_t>(i);
        }
      }
    }
  }
  const std::size_t full = masks - 1;
  std::size_t last = k;
  T best{};
  for (std::size_t i = 0; i < k; ++i) {
    if (end && others[i] != *end) continue;
    T total = dp[full * k + i];
    if (!end) total = total + cost(others[i], start);
    if (last == k || total < best) {
      best = std::move(total);
      last = i;
    }
  }
  TourResult r;
  std::vector<VertexId> rev;
  std::size_t mask = full;
  for (std::size_t i = last; i != 0xFF;) {
    rev.push_back(others[i]);
    const std::size_t p = parent[mask * k + i];
    mask &= ~(std::size_t{1} << i);
    i = p;
  }
  r.order.push_back(start);
  r.order.insert(r.order.end(), rev.rbegin(), rev.rend());
  for (std::size_t i = 0; i + 1 < r.order.size(); ++i) r.cost += exact[r.order[i]][r.order[i + 1]];
  if (!end) r.cost += exact[r.order.back()][start];
  return r;
}

TourResult solve(const Digraph& g, VertexId start, std::optional<VertexId> end, std::size_t max_n) {
  const CostMatrix c = complete_costs(g, max_n);
  const std::size_t n = c.size();
  if (n == 1) return TourResult{Rational(), {0}};
  mpz_class scale;
  if (auto ints = scaled_costs(c, scale)) {
    auto cost = [&](VertexId u, VertexId v) { return (*ints)[u][v]; };
    return held_karp<std::int64_t>(n, start, end, cost, c);
  }
  auto cost = [&](VertexId u, VertexId v) { return c[u][v]; };
  return held_karp<Rational>(n, start, end, cost, c);
}

}  // namespace

TourResult held_karp_cycle(const Digraph& g, std::size_t max_n) {
  return solve(g, 0, std::nullopt, max_n);
}

TourResult held_karp_path(const Digraph& g, VertexId p, VertexId q, std::size_t max_n) {
  if (p == q || p >= g.vertex_count() || q >= g.vertex_count()) {
    throw Error(ErrorKind::BadParams, "path oracle needs distinct in-range endpoints");
  }
  return solve(g, p, q, max_n);
}

}  // namespace saatsp
