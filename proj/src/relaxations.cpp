#include "saatsp/relaxations.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "saatsp/errors.hpp"
#include "saatsp/simplex.hpp"

namespace saatsp {

std::string relaxation_name(Relaxation r) {
  switch (r) {
    case Relaxation::Dfj: return "dfj";
    case Relaxation::Balanced: return "balanced";
    case Relaxation::Path: return "path";
  }
  return "?";
}

Relaxation parse_relaxation(const std::string& s) {
  if (s == "dfj") return Relaxation::Dfj;
  if (s == "balanced") return Relaxation::Balanced;
  if (s == "path") return Relaxation::Path;
  throw Error(ErrorKind::BadSpec, "unknown relaxation '" + s + "'");
}

std::string cut_mode_name(CutMode m) { return m == CutMode::Enumerated ? "enumerated" : "separated"; }

CutMode parse_cut_mode(const std::string& s) {
  if (s == "enumerated") return CutMode::Enumerated;
  if (s == "separated") return CutMode::Separated;
  throw Error(ErrorKind::BadSpec, "unknown cut mode '" + s + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::CutIn: return "cut-in";
    case Family::CutOut: return "cut-out";
    case Family::DegreeIn: return "degree-in";
    case Family::DegreeOut: return "degree-out";
    case Family::Balance: return "balance";
    case Family::LowerBound: return "lower-bound";
    case Family::UpperBound: return "upper-bound";
  }
  return "?";
}

std::string ConstraintTag::to_string() const {
  std::string s = family_name(family) + "(";
  if (family == Family::CutIn || family == Family::CutOut) {
    s += "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(vertices[i]);
    }
    s += "}";
  } else {
    s += std::to_string(index);
  }
  return s + ")";
}

Rational LinearConstraint::lhs(std::span<const Rational> x) const {
  Rational sum;
  for (const auto& [e, a] : terms) sum += a * x[e];
  return sum;
}

namespace {

LinearConstraint make_row(std::vector<std::pair<EdgeId, Rational>> terms, Rational rhs, ConstraintTag tag) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<EdgeId, Rational>> merged;
  for (auto& [e, a] : terms) {
    if (!merged.empty() && merged.back().first == e) {
      merged.back().second += a;
    } else {
      merged.emplace_back(e, std::move(a));
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.second.is_zero(); });
  return LinearConstraint{std::move(merged), std::move(rhs), std::move(tag)};
}

// Pushes sum(sign * x_e over edges) = value as a >= pair.
void add_equality(ConstraintSystem& cs, const std::vector<std::pair<EdgeId, Rational>>& terms,
                  const Rational& value, const ConstraintTag& tag) {
  cs.constraints.push_back(make_row(terms, value, tag));
  std::vector<std::pair<EdgeId, Rational>> neg;
  for (const auto& [e, a] : terms) neg.emplace_back(e, -a);
  cs.constraints.push_back(make_row(neg, -value, tag));
}

std::vector<std::pair<EdgeId, Rational>> incident(const Digraph& g, VertexId v, bool incoming, int sign) {
  std::vector<std::pair<EdgeId, Rational>> terms;
  for (EdgeId e : incoming ? g.in_edges(v) : g.out_edges(v)) terms.emplace_back(e, Rational(sign));
  return terms;
}

LinearConstraint cut_row(const Digraph& g, Family family, const std::vector<bool>& in_u) {
  std::vector<std::pair<EdgeId, Rational>> terms;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (in_u[ed.tail] && !in_u[ed.head]) terms.emplace_back(e, Rational(1));
  }
  ConstraintTag tag{family, 0, {}};
  const bool s_is_u = family == Family::CutOut;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in_u[v] == s_is_u) tag.vertices.push_back(v);
  }
  return LinearConstraint{std::move(terms), Rational(1), std::move(tag)};
}

bool side_allows(const CutSide& side, const std::vector<bool>& in_u) {
  if (side.must_contain && !in_u[*side.must_contain]) return false;
  if (side.must_avoid && in_u[*side.must_avoid]) return false;
  return true;
}

void add_bounds_and_cuts(ConstraintSystem& cs) {
  const Digraph& g = cs.graph;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    cs.constraints.push_back(make_row({{e, Rational(1)}}, Rational(0), {Family::LowerBound, e, {}}));
    cs.constraints.push_back(make_row({{e, Rational(-1)}}, Rational(-1), {Family::UpperBound, e, {}}));
  }
  if (cs.cut_mode == CutMode::Separated) return;
  const std::size_t n = g.vertex_count();
  for (const CutFamily& fam : cs.cuts) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      // Rows are indexed by S; U = S for cut-out and V - S for cut-in.
      std::vector<bool> in_u(n);
      for (VertexId v = 0; v < n; ++v) {
        const bool in_s = (mask >> v) & 1U;
        in_u[v] = fam.family == Family::CutOut ? in_s : !in_s;
      }
      if (!side_allows(fam.side, in_u)) continue;
      cs.constraints.push_back(cut_row(g, fam.family, in_u));
    }
  }
}

ConstraintSystem start_system(Relaxation kind, const Digraph& g, const BuildOptions& opt) {
  if (g.vertex_count() < 2) throw Error(ErrorKind::BadParams, "relaxation needs at least two vertices");
  if (opt.cut_mode == CutMode::Enumerated && (g.vertex_count() > opt.max_enum_n || g.vertex_count() >= 63)) {
    throw Error(ErrorKind::TooLargeToEnumerate, std::to_string(g.vertex_count()) +
                                                    " vertices exceeds enumeration bound " +
                                                    std::to_string(opt.max_enum_n));
  }
  ConstraintSystem cs;
  cs.kind = kind;
  cs.graph = g;
  cs.cut_mode = opt.cut_mode;
  cs.max_enum_n = opt.max_enum_n;
  return cs;
}

}  // namespace

ConstraintSystem build_dfj(const Digraph& g, const BuildOptions& opt) {
  ConstraintSystem cs = start_system(Relaxation::Dfj, g, opt);
  cs.cuts = {{Family::CutIn, {}}, {Family::CutOut, {}}};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    add_equality(cs, incident(g, v, true, 1), Rational(1), {Family::DegreeIn, v, {}});
    add_equality(cs, incident(g, v, false, 1), Rational(1), {Family::DegreeOut, v, {}});
  }
  add_bounds_and_cuts(cs);
  return cs;
}

ConstraintSystem build_balanced(const Digraph& g, const BuildOptions& opt) {
  ConstraintSystem cs = start_system(Relaxation::Balanced, g, opt);
  cs.cuts = {{Family::CutIn, {}}, {Family::CutOut, {}}};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto terms = incident(g, v, false, 1);
    auto in = incident(g, v, true, -1);
    terms.insert(terms.end(), in.begin(), in.end());
    add_equality(cs, terms, Rational(0), {Family::Balance, v, {}});
  }
  add_bounds_and_cuts(cs);
  return cs;
}

ConstraintSystem build_path(const Digraph& g, VertexId p, VertexId q, const BuildOptions& opt) {
  if (p == q || p >= g.vertex_count() || q >= g.vertex_count()) {
    throw Error(ErrorKind::BadParams, "path relaxation needs distinct in-range endpoints");
  }
  ConstraintSystem cs = start_system(Relaxation::Path, g, opt);
  cs.source = p;
  cs.sink = q;
  CutSide in_side;
  in_side.must_contain = p;
  CutSide out_side;
  out_side.must_avoid = q;
  cs.cuts = {{Family::CutIn, in_side}, {Family::CutOut, out_side}};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    add_equality(cs, incident(g, v, true, 1), Rational(v == p ? 0 : 1), {Family::DegreeIn, v, {}});
    add_equality(cs, incident(g, v, false, 1), Rational(v == q ? 0 : 1), {Family::DegreeOut, v, {}});
  }
  add_bounds_and_cuts(cs);
  return cs;
}

ConstraintSystem build_system(Relaxation kind, const Digraph& g, const BuildOptions& opt,
                              std::optional<VertexId> p, std::optional<VertexId> q) {
  switch (kind) {
    case Relaxation::Dfj: return build_dfj(g, opt);
    case Relaxation::Balanced: return build_balanced(g, opt);
    case Relaxation::Path:
      if (!p || !q) throw Error(ErrorKind::BadParams, "path relaxation needs endpoints");
      return build_path(g, *p, *q, opt);
  }
  throw Error(ErrorKind::BadParams, "unknown relaxation");
}

std::size_t check_rows(const ConstraintSystem& cs, std::span<const Rational> w, const Rational& scale,
                       RowCheckStats& stats, std::vector<RowViolation>& out, std::size_t max_violations) {
  if (w.size() != cs.edge_count()) throw Error(ErrorKind::BadParams, "point size does not match the edge count");
  std::size_t violations = 0;
  auto report = [&](ConstraintTag tag, Rational lhs, Rational rhs) {
    ++violations;
    if (out.size() < max_violations) out.push_back(RowViolation{std::move(tag), std::move(lhs), std::move(rhs)});
  };
  for (const LinearConstraint& row : cs.constraints) {
    ++stats.checked[row.tag.family];
    Rational lhs = row.lhs(w);
    Rational rhs = row.rhs * scale;
    if (lhs < rhs) report(row.tag, std::move(lhs), std::move(rhs));
  }
  if (cs.cut_mode == CutMode::Enumerated) return violations;

  const bool negative = std::any_of(w.begin(), w.end(), [](const Rational& x) { return x.sign() < 0; });
  if (negative) {
    ++stats.cut_fallbacks;
    for (const CutFamily& fam : cs.cuts) {
      ++stats.checked[fam.family];
      DirectedCut cut = min_directed_cut_enumerated(cs.graph, w, fam.side, cs.max_enum_n);
      if (cut.value < scale) {
        std::vector<bool> in_u(cs.graph.vertex_count(), false);
        for (VertexId v : cut.source_side) in_u[v] = true;
        report(cut_row(cs.graph, fam.family, in_u).tag, cut.value, scale);
      }
    }
    return violations;
  }
  // Families with the same side constraint range over the same cuts: one query serves both.
  std::vector<std::pair<const CutSide*, std::optional<DirectedCut>>> answered;
  for (const CutFamily& fam : cs.cuts) {
    ++stats.checked[fam.family];
    if (scale.sign() <= 0) continue;
    const std::optional<DirectedCut>* cached = nullptr;
    for (const auto& [side, result] : answered) {
      if (side->must_contain == fam.side.must_contain && side->must_avoid == fam.side.must_avoid) cached = &result;
    }
    if (!cached) {
      answered.emplace_back(&fam.side, find_cut_below(cs.graph, w, scale, fam.side));
      cached = &answered.back().second;
    }
    if (const auto& cut = *cached) {
      std::vector<bool> in_u(cs.graph.vertex_count(), false);
      for (VertexId v : cut->source_side) in_u[v] = true;
      report(cut_row(cs.graph, fam.family, in_u).tag, cut->value, scale);
    }
  }
  return violations;
}

std::vector<RowViolation> point_violations(const ConstraintSystem& cs, std::span<const Rational> x,
                                           std::size_t max_violations) {
  RowCheckStats stats;
  std::vector<RowViolation> out;
  check_rows(cs, x, Rational(1), stats, out, max_violations);
  return out;
}

bool is_feasible_point(const ConstraintSystem& cs, std::span<const Rational> x) {
  return point_violations(cs, x, 1).empty();
}

LpResult solve_lp_exact(const ConstraintSystem& cs, std::span<const Rational> objective) {
  const std::size_t m = cs.edge_count();
  if (objective.size() != m) throw Error(ErrorKind::BadParams, "objective size does not match the edge count");
  LpProblem lp;
  lp.objective.assign(objective.begin(), objective.end());
  lp.lower.assign(m, Rational());
  lp.upper.assign(m, std::nullopt);
  std::vector<bool> has_lower(m, false);

  // Non-cut rows; bound rows become variable bounds, opposite pairs become equalities.
  std::map<std::string, std::size_t> row_index;
  auto key_of = [](const std::vector<std::pair<EdgeId, Rational>>& terms, const Rational& rhs) {
    std::string k;
    for (const auto& [e, a] : terms) k += std::to_string(e) + ":" + a.to_string() + " ";
    return k + ">=" + rhs.to_string();
  };
  std::vector<const LinearConstraint*> cut_pool;
  for (const LinearConstraint& row : cs.constraints) {
    const Family f = row.tag.family;
    if (f == Family::CutIn || f == Family::CutOut) {
      cut_pool.push_back(&row);
      continue;
    }
    if ((f == Family::LowerBound || f == Family::UpperBound) && row.terms.size() == 1) {
      const auto& [e, a] = row.terms.front();
      const Rational bound = row.rhs / a;
      if (a.sign() > 0) {
        if (!has_lower[e] || lp.lower[e] < bound) lp.lower[e] = bound;
        has_lower[e] = true;
      } else if (!lp.upper[e] || bound < *lp.upper[e]) {
        lp.upper[e] = bound;
      }
      continue;
    }
    std::vector<std::pair<EdgeId, Rational>> neg;
    for (const auto& [e, a] : row.terms) neg.emplace_back(e, -a);
    auto twin = row_index.find(key_of(neg, -row.rhs));
    if (twin != row_index.end()) {
      lp.rows[twin->second].equality = true;
      continue;
    }
    row_index.emplace(key_of(row.terms, row.rhs), lp.rows.size());
    LpProblem::Row r;
    for (const auto& [e, a] : row.terms) r.terms.emplace_back(e, a);
    r.rhs = row.rhs;
    lp.rows.push_back(std::move(r));
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!has_lower[e]) throw Error(ErrorKind::BadParams, "every variable needs a lower bound row");
  }

  LpResult result;
  std::set<std::vector<EdgeId>> added;
  auto add_cut = [&](const std::vector<std::pair<EdgeId, Rational>>& terms) {
    std::vector<EdgeId> support;
    for (const auto& t : terms) support.push_back(t.first);
    if (!added.insert(support).second) return false;
    LpProblem::Row r;
    for (const auto& [e, a] : terms) r.terms.emplace_back(e, a);
    r.rhs = Rational(1);
    lp.rows.push_back(std::move(r));
    return true;
  };

  while (true) {
    ++result.rounds;
    LpSolution sol = solve_simplex(lp);
    std::size_t new_cuts = 0;
    if (cs.cut_mode == CutMode::Enumerated) {
      std::vector<std::pair<Rational, const LinearConstraint*>> violated;
      for (const LinearConstraint* row : cut_pool) {
        Rational slack = row->lhs(sol.x) - row->rhs;
        if (slack.sign() < 0) violated.emplace_back(std::move(slack), row);
      }
      std::stable_sort(violated.begin(), violated.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (const auto& [slack, row] : violated) {
        if (new_cuts >= 64) break;
        if (add_cut(row->terms)) ++new_cuts;
      }
    } else {
      for (const CutFamily& fam : cs.cuts) {
        for (const DirectedCut& cut : violated_cuts(cs.graph, sol.x, Rational(1), fam.side)) {
          std::vector<bool> in_u(cs.graph.vertex_count(), false);
          for (VertexId v : cut.source_side) in_u[v] = true;
          if (add_cut(cut_row(cs.graph, fam.family, in_u).terms)) ++new_cuts;
        }
      }
    }
    if (new_cuts == 0) {
      result.value = std::move(sol.value);
      result.x = std::move(sol.x);
      result.cut_rows = added.size();
      return result;
    }
  }
}

std::vector<EdgeId> embed_edges(const Digraph& g, const Digraph& host) {
  if (g.vertex_count() != host.vertex_count()) {
    throw Error(ErrorKind::BadParams, "embedding needs the same vertex set");
  }
  std::map<std::pair<VertexId, VertexId>, EdgeId> by_ends;
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    by_ends.emplace(std::make_pair(host.edge(e).tail, host.edge(e).head), e);
  }
  std::vector<EdgeId> image;
  std::set<EdgeId> used;
  for (const Edge& ed : g.edges()) {
    auto it = by_ends.find({ed.tail, ed.head});
    if (it == by_ends.end()) throw Error(ErrorKind::BadParams, "host has no edge for an embedded edge");
    if (!used.insert(it->second).second) throw Error(ErrorKind::BadParams, "two edges share one host edge");
    image.push_back(it->second);
  }
  return image;
}

MomentVector extend_by_zeros(const MomentVector& y, std::span<const EdgeId> embedding,
                             const ConstraintSystem& host_cs) {
  if (embedding.size() != y.ground_size()) throw Error(ErrorKind::BadParams, "embedding size mismatch");
  const std::size_t hm = host_cs.edge_count();
  std::vector<bool> in_image(hm, false);
  for (EdgeId e : embedding) {
    if (e >= hm) throw Error(ErrorKind::BadParams, "embedding leaves the host edge set");
    if (in_image[e]) throw Error(ErrorKind::BadParams, "embedding is not injective");
    in_image[e] = true;
  }
  for (const LinearConstraint& row : host_cs.constraints) {
    if (!row.positive()) continue;
    const bool touches = std::any_of(row.terms.begin(), row.terms.end(),
                                     [&](const auto& t) { return in_image[t.first]; });
    if (!touches) {
      throw Error(ErrorKind::SupportViolation,
                  "positive row " + row.tag.to_string() + " is supported only on zeroed edges");
    }
  }
  if (host_cs.cut_mode == CutMode::Separated) {
    std::vector<Rational> w(hm);
    for (std::size_t e = 0; e < hm; ++e) w[e] = Rational(in_image[e] ? 1 : 0);
    for (const CutFamily& fam : host_cs.cuts) {
      DirectedCut cut = min_directed_cut(host_cs.graph, w, fam.side);
      if (cut.value.is_zero()) {
        std::vector<bool> in_u(host_cs.graph.vertex_count(), false);
        for (VertexId v : cut.source_side) in_u[v] = true;
        throw Error(ErrorKind::SupportViolation,
                    "positive row " + cut_row(host_cs.graph, fam.family, in_u).tag.to_string() +
                        " is supported only on zeroed edges");
      }
    }
  }
  MomentVector out(y.level(), hm, true);
  for (const auto& [s, v] : y.entries()) {
    std::vector<EdgeId> mapped;
    for (EdgeId e : s) mapped.push_back(embedding[e]);
    out.set(EdgeSet(std::move(mapped)), v);
  }
  return out;
}

void write_lp(std::ostream& os, const ConstraintSystem& cs, std::span<const Rational> objective) {
  if (cs.cut_mode != CutMode::Enumerated) {
    throw Error(ErrorKind::BadParams, "LP export needs enumerated cut mode");
  }
  auto var = [](EdgeId e) { return "x" + std::to_string(e); };
  auto render = [&](const std::vector<std::pair<EdgeId, Rational>>& terms, bool exact) {
    std::string s;
    for (const auto& [e, a] : terms) {
      const Rational mag = a.sign() < 0 ? -a : a;
      s += (a.sign() < 0 ? " - " : " + ") + (exact ? mag.to_string() : mag.to_decimal(12)) + " " + var(e);
    }
    return s.empty() ? std::string(" 0 x0") : s;
  };
  std::vector<std::pair<EdgeId, Rational>> obj;
  for (std::size_t e = 0; e < objective.size(); ++e) {
    if (!objective[e].is_zero()) obj.emplace_back(static_cast<EdgeId>(e), objective[e]);
  }
  os << "\\ " << relaxation_name(cs.kind) << " relaxation, " << cs.graph.vertex_count() << " vertices, "
     << cs.edge_count() << " edges\n";
  os << "\\ decimal coefficients are lossy; exact fractions follow each \\ exact: marker\n";
  os << "\\ exact:" << render(obj, true) << "\n";
  os << "Minimize\n obj:" << render(obj, false) << "\n";
  os << "Subject To\n";
  std::size_t i = 0;
  for (const LinearConstraint& row : cs.constraints) {
    if (row.tag.family == Family::LowerBound || row.tag.family == Family::UpperBound) continue;
    os << "\\ " << row.tag.to_string() << " exact:" << render(row.terms, true) << " >= " << row.rhs.to_string()
       << "\n";
    os << " c" << i++ << ":" << render(row.terms, false) << " >= " << row.rhs.to_decimal(12) << "\n";
  }
  os << "Bounds\n";
  for (EdgeId e = 0; e < cs.edge_count(); ++e) os << " 0 <= " << var(e) << " <= 1\n";
  os << "End\n";
}

}  // namespace saatsp
