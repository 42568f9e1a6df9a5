#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "saatsp/digraph.hpp"
#include "saatsp/graph_algorithms.hpp"
#include "saatsp/moment.hpp"

namespace saatsp {

inline constexpr std::size_t kDefaultMaxEnumN = 22;

enum class Relaxation { Dfj, Balanced, Path };
enum class CutMode { Enumerated, Separated };

enum class Family { CutIn, CutOut, DegreeIn, DegreeOut, Balance, LowerBound, UpperBound };

std::string relaxation_name(Relaxation r);
Relaxation parse_relaxation(const std::string& s);
std::string cut_mode_name(CutMode m);
CutMode parse_cut_mode(const std::string& s);
std::string family_name(Family f);

/// Which constraint a row came from: the vertex, edge, or vertex set S it is indexed by.
struct ConstraintTag {
  Family family;
  std::uint32_t index = 0;            // vertex for degree/balance, edge for bounds
  std::vector<VertexId> vertices;     // S for cut families

  std::string to_string() const;
};

/// sum of coef*x_e >= rhs. Terms are sorted by edge and nonzero.
struct LinearConstraint {
  std::vector<std::pair<EdgeId, Rational>> terms;
  Rational rhs;
  ConstraintTag tag;

  bool positive() const { return rhs.sign() > 0; }
  Rational lhs(std::span<const Rational> x) const;
};

/// An implicit cut family: x(delta^out(U)) >= 1 for every nonempty proper U allowed by `side`.
/// CutIn families index by S = V - U, CutOut families by S = U.
struct CutFamily {
  Family family;
  CutSide side;
};

struct BuildOptions {
  CutMode cut_mode = CutMode::Separated;
  std::size_t max_enum_n = kDefaultMaxEnumN;
};

class ConstraintSystem {
 public:
  Relaxation kind;
  Digraph graph;
  CutMode cut_mode = CutMode::Separated;
  std::size_t max_enum_n = kDefaultMaxEnumN;
  std::optional<VertexId> source;  // p for the path system
  std::optional<VertexId> sink;    // q
  /// Explicit rows. In enumerated mode these include every cut row; in separated
  /// mode cut rows are served by `cuts` only.
  std::vector<LinearConstraint> constraints;
  std::vector<CutFamily> cuts;

  std::size_t edge_count() const { return graph.edge_count(); }
};

/// Throws BadParams for fewer than 2 vertices, TooLargeToEnumerate if enumerated
/// mode is asked for more than max_enum_n vertices.
ConstraintSystem build_dfj(const Digraph& g, const BuildOptions& opt = {});
ConstraintSystem build_balanced(const Digraph& g, const BuildOptions& opt = {});
/// Throws BadParams if p == q or either is out of range.
ConstraintSystem build_path(const Digraph& g, VertexId p, VertexId q, const BuildOptions& opt = {});
ConstraintSystem build_system(Relaxation kind, const Digraph& g, const BuildOptions& opt = {},
                              std::optional<VertexId> p = {}, std::optional<VertexId> q = {});

struct RowViolation {
  ConstraintTag tag;
  Rational lhs;
  Rational rhs;
};

struct RowCheckStats {
  std::map<Family, std::size_t> checked;  // rows evaluated (min-cut queries for separated cut families)
  std::size_t cut_fallbacks = 0;          // separated queries answered by enumeration (negative weights)
};

/// Checks every row in homogenized form: sum a_e w_e >= b * scale.
/// With w = x and scale = 1 this is plain LP feasibility. At most `max_violations`
/// violations are appended; the return value counts all of them.
std::size_t check_rows(const ConstraintSystem& cs, std::span<const Rational> w, const Rational& scale,
                       RowCheckStats& stats, std::vector<RowViolation>& out, std::size_t max_violations);

/// Violations of x against cs (empty iff feasible).
std::vector<RowViolation> point_violations(const ConstraintSystem& cs, std::span<const Rational> x,
                                           std::size_t max_violations = 16);
bool is_feasible_point(const ConstraintSystem& cs, std::span<const Rational> x);

struct LpResult {
  Rational value;
  std::vector<Rational> x;
  std::size_t rounds = 0;     // cutting-plane rounds
  std::size_t cut_rows = 0;   // cut rows in the final model
};

/// Exact minimum of objective.x over cs (bounded-variable simplex, Bland's rule).
/// Cut rows are added lazily: scanned from the explicit list in enumerated mode,
/// separated by min cut otherwise. Throws Infeasible or Unbounded.
LpResult solve_lp_exact(const ConstraintSystem& cs, std::span<const Rational> objective);

/// EdgeId in `host` of every edge of g, matching (tail, head); for a metric
/// completion host this is complete_edge_id. Throws BadParams on a missing or repeated image.
std::vector<EdgeId> embed_edges(const Digraph& g, const Digraph& host);

/// y'_S = y_{pre-image of S} when S lies inside the image of `embedding`, else 0.
/// Throws SupportViolation if some positive row of `host_cs` has all of its support
/// outside the image (for cut families: some admissible U has no image edge leaving it).
MomentVector extend_by_zeros(const MomentVector& y, std::span<const EdgeId> embedding,
                             const ConstraintSystem& host_cs);

/// CPLEX LP text. Coefficients are written as decimals (lossy); every row is
/// preceded by a comment carrying the exact fractions. Requires enumerated mode.
void write_lp(std::ostream& os, const ConstraintSystem& cs, std::span<const Rational> objective);

}  // namespace saatsp
