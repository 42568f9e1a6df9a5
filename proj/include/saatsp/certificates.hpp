#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "saatsp/instances.hpp"
#include "saatsp/moment.hpp"

namespace saatsp {

/// f^Delta(S): number of cycles j in F - Delta with E(C_j) meeting S.
std::size_t fractional_hits(const Decomposition& d, const std::vector<std::size_t>& cycle_of_edge,
                            const std::vector<std::size_t>& delta, const EdgeSet& s);

/// Dense vector y_S = (t+2 - f^Delta(S)) / (t+2) over all |S| <= t+1.
/// Throws BadParams unless Delta is a subset of F.
MomentVector y_balanced(const Digraph& g, const Decomposition& d, const std::vector<std::size_t>& delta,
                        std::size_t t);

/// Sparse vector on a split instance:
///   S without dashed edges            -> (t+2 - f^Delta(S)) / (t+2), counting solid hits;
///   S inside tour(i) for i in F-Delta -> 1 / (t+2);
///   otherwise                         -> 0.
/// Throws WitnessTooSmall if |F| - |Delta| < t+2, NoGoodTours if some tour(j), j in F-Delta,
/// is not Hamiltonian, BadParams unless Delta is a subset of F.
MomentVector z_dfj(const SplitInstance& s, const std::vector<std::size_t>& delta, std::size_t t);

struct RestrictedPath {
  MomentVector z;
  Digraph graph;  // G' = G minus the internal vertices of the path
  VertexId p = 0;
  VertexId q = 0;
  std::vector<EdgeId> edge_origin;      // edge of G' -> edge of G
  std::vector<VertexId> vertex_origin;  // vertex of G' -> vertex of G
};

/// Restricts z to G' = G - internal(Q) where Q (in walk order) runs from q to p.
/// Throws NotUnitPath if Q is not a dipath or some z_e on it differs from 1.
RestrictedPath restrict_path(const MomentVector& z, const Digraph& g, std::span<const EdgeId> path);

/// sum over e of c_e * y_{e}.
Rational objective_value(const MomentVector& y, std::span<const Rational> costs);

}  // namespace saatsp
