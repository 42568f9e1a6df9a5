#pragma once

#include <cstddef>
#include <vector>

#include "saatsp/digraph.hpp"

namespace saatsp {

inline constexpr std::size_t kDefaultMaxOracleN = 18;

struct TourResult {
  Rational cost;
  std::vector<VertexId> order;  // each vertex once; cycles start at 0, paths at p
};

/// Exact minimum Hamiltonian dicycle by subset dynamic programming.
/// Throws BadParams if g is not complete, TooLarge if n > max_n.
TourResult held_karp_cycle(const Digraph& g, std::size_t max_n = kDefaultMaxOracleN);

/// Exact minimum Hamiltonian dipath from p to q.
TourResult held_karp_path(const Digraph& g, VertexId p, VertexId q, std::size_t max_n = kDefaultMaxOracleN);

}  // namespace saatsp
