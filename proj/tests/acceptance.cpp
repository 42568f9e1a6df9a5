// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "identities.hpp"
#include "saatsp/certificates.hpp"
#include "saatsp/errors.hpp"
#include "saatsp/graph_algorithms.hpp"
#include "saatsp/instances.hpp"
#include "saatsp/oracles.hpp"
#include "saatsp/relaxations.hpp"
#include "saatsp/report.hpp"
#include "saatsp/sa_lift.hpp"

namespace {

using namespace saatsp;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

CheckOptions check_options() {
  CheckOptions c;
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

std::string lt(std::size_t l, std::size_t t) { return "l=" + std::to_string(l) + " t=" + std::to_string(t); }

Outcome balanced_feasibility() {
  Outcome o;
  for (std::size_t l = 2; l <= 4; ++l) {
    const GoodInstance inst = ladder(l);
    const ConstraintSystem cs = build_balanced(inst.graph);
    for (std::size_t t = 0; t <= 2; ++t) {
      const SaVerdict v = check_direct(y_balanced(inst.graph, inst.decomposition, {}, t), cs, t, check_options());
      o.require(v.feasible, "y^0_t on ladder " + lt(l, t) + " (" + std::to_string(v.pairs) + " pairs)");
    }
  }
  const GoodInstance l3 = ladder(3);
  const ConstraintSystem cs = build_balanced(l3.graph);
  for (std::size_t j : l3.decomposition.witness) {
    for (std::size_t t = 0; t <= 1; ++t) {
      const SaVerdict v = check_direct(y_balanced(l3.graph, l3.decomposition, {j}, t), cs, t, check_options());
      o.require(v.feasible, "y^{" + std::to_string(j) + "}_t on ladder " + lt(3, t));
    }
  }
  return o;
}

Outcome dfj_feasibility() {
  Outcome o;
  const GoodInstance l4 = ladder(4);
  const SplitInstance s = split(l4.graph, l4.decomposition);
  const ConstraintSystem cs = build_dfj(s.graph);
  for (std::size_t t = 0; t <= 2; ++t) {
    const SaVerdict v = check_direct(z_dfj(s, {}, t), cs, t, check_options());
    o.require(v.feasible, "z^0_t on ladder-split " + lt(4, t) + " (" + std::to_string(v.pairs) + " pairs, " +
                              std::to_string(v.cut_fallbacks) + " enumeration fallbacks)");
  }
  return o;
}

Outcome checker_equivalence() {
  Outcome o;
  std::size_t cases = 0, agreed = 0;
  auto compare = [&](const MomentVector& y, const ConstraintSystem& cs, std::size_t t, bool expect_feasible,
                     const std::string& what) {
    const SaVerdict d = check_direct(y, cs, t, check_options());
    const SaVerdict r = check_recursive(y, cs, t);
    ++cases;
    agreed += d.feasible == r.feasible;
    if (d.feasible != r.feasible || d.feasible != expect_feasible) {
      o.require(false, what + ": direct " + (d.feasible ? "feasible" : "infeasible") + ", recursive " +
                           (r.feasible ? "feasible" : "infeasible"));
    }
    return d.feasible;
  };
  for (std::size_t l = 2; l <= 3; ++l) {
    const GoodInstance inst = ladder(l);
    const ConstraintSystem cs = build_balanced(inst.graph);
    for (std::size_t t = 0; t <= 1; ++t) {
      compare(y_balanced(inst.graph, inst.decomposition, {}, t), cs, t, true, "y^0_t ladder " + lt(l, t));
    }
  }
  for (std::size_t l = 3; l <= 4; ++l) {
    const GoodInstance inst = ladder(l);
    const SplitInstance s = split(inst.graph, inst.decomposition);
    const ConstraintSystem cs = build_dfj(s.graph);
    for (std::size_t t = 0; t <= 1; ++t) compare(z_dfj(s, {}, t), cs, t, true, "z^0_t ladder-split " + lt(l, t));
  }
  std::size_t tours = 0;
  for (std::size_t l = 2; l <= 6; ++l) {
    const GoodInstance inst = ladder(l);
    const SplitInstance s = split(inst.graph, inst.decomposition);
    const ConstraintSystem cs = build_dfj(s.graph);
    const std::size_t t = l <= 3 ? 2 : 1;
    for (std::size_t j : s.witness) {
      compare(indicator_lift(tour(s, j), s.graph.edge_count(), t), cs, t, true,
              "lifted tour(" + std::to_string(j) + ") ladder-split " + lt(l, t));
      ++tours;
    }
  }
  o.require(tours == 20, std::to_string(tours) + " lifted 0/1 tour points");

  std::mt19937 rng(2024);
  std::size_t perturbed = 0;
  for (std::size_t l = 2; l <= 3 && perturbed < 20; ++l) {
    const GoodInstance inst = ladder(l);
    const ConstraintSystem cs = build_balanced(inst.graph);
    const MomentVector base = y_balanced(inst.graph, inst.decomposition, {}, 1);
    std::vector<EdgeSet> keys;
    for (const auto& [k, v] : base.entries()) keys.push_back(k);
    for (int trial = 0; trial < 10; ++trial) {
      MomentVector y = base;
      const EdgeSet& k = keys[rng() % keys.size()];
      const long sign = rng() % 2 ? 1 : -1;
      y.set(k, y.get(k) + Rational(sign, 100));
      if (!compare(y, cs, 1, false, "perturbed y^0_1 at " + k.to_string() + " ladder " + lt(l, 1))) ++perturbed;
    }
  }
  o.require(perturbed == 20, std::to_string(perturbed) + " perturbed infeasible vectors");
  o.require(agreed == cases, "agreement " + std::to_string(agreed) + "/" + std::to_string(cases));
  return o;
}

Outcome ladder_optimum() {
  Outcome o;
  for (long l = 2; l <= 4; ++l) {
    const TourResult r = held_karp_cycle(metric_completion(ladder(static_cast<std::size_t>(l)).graph));
    o.require(r.cost == Rational(4 * l + 2), "l=" + std::to_string(l) + ": oracle " + r.cost.to_string() +
                                                  ", 4l+2 = " + std::to_string(4 * l + 2));
  }
  return o;
}

Outcome ratio_formulas() {
  Outcome o;
  const Rational eps(1, 2);
  struct Case {
    long l, t;
  };
  std::vector<Case> cases{{2, 0}, {3, 1}, {4, 1}, {4, 2}};
  for (long t = 0; t <= 1; ++t) {
    const Rational need = Rational(2 * (2 * t + 3)) / eps;
    const mpz_class ceil_l = (need.numerator() + need.denominator() - 1) / need.denominator();
    cases.push_back({ceil_l.get_si(), t});
  }
  for (const Case& c : cases) {
    RatioOptions opt;
    opt.t = static_cast<std::size_t>(c.t);
    opt.check = check_options();
    const RatioReport r = ratio_report(parse_instance_spec("ladder:" + std::to_string(c.l)), opt);
    const Rational expect = Rational(4 * c.l + 2) / (Rational(2 * c.l + 4) + Rational(2 * c.l * (c.t + 1), c.t + 2));
    const std::string at = lt(static_cast<std::size_t>(c.l), static_cast<std::size_t>(c.t));
    o.require(r.ratio == expect, at + ": ratio " + r.ratio.to_string() + " (" + r.opt_source + " opt " +
                                     r.opt.to_string() + ", certificate " + r.frac.to_string() + ")");
    o.require(r.verdict && r.verdict->feasible, at + ": certificate verified at level t");
    if (c.l >= 12) {
      const Rational bound = Rational(1) + (Rational(1) - eps) / Rational(2 * c.t + 3);
      o.require(r.ratio >= bound, at + ": ratio >= 1 + (1-eps)/(2t+3) = " + bound.to_string() + " with eps = 1/2");
      o.require(r.opt_source == "proven-lower-bound", at + ": OPT is the proven lower bound 4l+2");
    }
  }
  return o;
}

Outcome cgk_instance() {
  Outcome o;
  const GoodInstance l = cgk_L(2, 3);
  bool valid = true;
  try {
    validate_decomposition(l.graph, l.decomposition);
  } catch (const Error&) {
    valid = false;
  }
  o.require(valid && l.decomposition.witness.size() == l.decomposition.cycles.size(),
            "good decomposition with F = all " + std::to_string(l.decomposition.cycles.size()) + " cycles");
  const ConstraintSystem cs = build_balanced(l.graph);
  for (std::size_t t = 0; t <= 1; ++t) {
    const MomentVector y = y_balanced(l.graph, l.decomposition, {}, t);
    bool uniform = true;
    for (EdgeId e = 0; e < l.graph.edge_count(); ++e) {
      uniform = uniform && y.get({e}) == Rational(static_cast<long>(t + 1), static_cast<long>(t + 2));
    }
    const SaVerdict v = check_direct(y, cs, t, check_options());
    o.require(uniform && v.feasible, "uniform (t+1)/(t+2) certificate feasible at t=" + std::to_string(t));
  }
  const Rational opt = held_karp_cycle(metric_completion(l.graph)).cost;
  o.require(opt >= Rational(18), "oracle optimum " + opt.to_string() + " >= 18");
  const Rational total = l.graph.total_cost();
  o.require(total <= Rational(48), "total edge cost " + total.to_string() + " <= 48");
  return o;
}

Outcome path_pipeline() {
  Outcome o;
  const long l = 4;
  const BuiltInstance inst = build_instance(parse_instance_spec("ladder-split:4"));
  const auto path = ladder_split_return_path(*inst.split, l);
  for (long t = 0; t <= 1; ++t) {
    const RestrictedPath r = restrict_path(z_dfj(*inst.split, {}, static_cast<std::size_t>(t)), inst.graph, path);
    const SaVerdict v = check_direct(r.z, build_path(r.graph, r.p, r.q), static_cast<std::size_t>(t), check_options());
    o.require(v.feasible, "restricted z^0_t feasible for the path system at t=" + std::to_string(t));
    const Rational opt = held_karp_path(metric_completion(r.graph), r.p, r.q).cost;
    o.require(opt >= Rational(3 * l), "path oracle " + opt.to_string() + " >= 3l = " + std::to_string(3 * l));
    const Rational frac = objective_value(r.z, r.graph.costs());
    const Rational expect = Rational(3 * l) / (Rational(2 * l * (t + 1), t + 2) + Rational(l + 2));
    o.require(opt / frac == expect, "ratio " + (opt / frac).to_string() + " = 3l/(2l(t+1)/(t+2)+l+2) = " +
                                        expect.to_string());
  }
  return o;
}

Outcome algebraic_identities() {
  Outcome o;
  const Rational amount(1, 1000);
  const GoodInstance l3 = ladder(3);
  testing::BalancedIdentities bal(l3.graph, l3.decomposition);
  const auto& f3 = l3.decomposition.witness;
  for (std::size_t mask = 0; mask < (std::size_t{1} << f3.size()); ++mask) {
    std::vector<std::size_t> delta;
    for (std::size_t i = 0; i < f3.size(); ++i)
      if (mask >> i & 1) delta.push_back(f3[i]);
    for (std::size_t t = 0; t <= 1; ++t) {
      testing::IdentityTally tally;
      bal.check(delta, t, tally);
      std::vector<std::vector<std::size_t>> bases{delta};
      for (std::size_t j : f3)
        if (std::find(delta.begin(), delta.end(), j) == delta.end()) bases.push_back(testing::with_index(delta, j));
      const auto [tried, caught] = testing::mutation_sweep(bal, l3.graph.edge_count(), delta, t, bases, amount);
      o.require(tally.failed == 0 && caught == tried,
                "ladder(3) Delta mask " + std::to_string(mask) + " t=" + std::to_string(t) + ": " +
                    std::to_string(tally.checked) + " instances hold, " + std::to_string(caught) + "/" +
                    std::to_string(tried) + " mutations caught" +
                    (tally.failed ? " (first failure: " + tally.first_failure + ")" : ""));
    }
  }
  const GoodInstance l4 = ladder(4);
  const SplitInstance s = split(l4.graph, l4.decomposition);
  testing::DfjIdentities dfj(s);
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> configs{{{}, 0}, {{}, 1}};
  for (std::size_t j : s.witness) configs.push_back({{j}, 0});
  for (const auto& [delta, t] : configs) {
    testing::IdentityTally tally;
    dfj.check(delta, t, tally);
    std::vector<std::vector<std::size_t>> bases;
    for (std::size_t j : s.witness)
      if (std::find(delta.begin(), delta.end(), j) == delta.end()) bases.push_back(testing::with_index(delta, j));
    const auto [tried, caught] = testing::mutation_sweep(dfj, s.graph.edge_count(), delta, t, bases, amount);
    std::string d = "{";
    for (std::size_t j : delta) d += std::to_string(j);
    d += "}";
    o.require(tally.failed == 0 && caught == tried,
              "ladder-split(4) Delta " + d + " t=" + std::to_string(t) + ": " + std::to_string(tally.checked) +
                  " instances hold, " + std::to_string(caught) + "/" + std::to_string(tried) + " mutations caught" +
                  (tally.failed ? " (first failure: " + tally.first_failure + ")" : ""));
  }
  return o;
}

Outcome zero_extension() {
  Outcome o;
  const GoodInstance l2 = ladder(2);
  const Digraph h = metric_completion(l2.graph);
  const ConstraintSystem host = build_balanced(h);
  const MomentVector ext = extend_by_zeros(y_balanced(l2.graph, l2.decomposition, {}, 1), embed_edges(l2.graph, h), host);
  const SaVerdict v = check_direct(ext, host, 1, check_options());
  o.require(v.feasible, "extended y^0_1 passes the level-1 balanced check on the completion (" +
                            std::to_string(h.edge_count()) + " edges)");
  Digraph complete(3);
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b)
      if (a != b) complete.add_edge(a, b, 1);
  Digraph sub(3);
  sub.add_edge(0, 1, 1);
  sub.add_edge(1, 0, 1);
  MomentVector y(0, 2, true);
  y.set({}, 1);
  y.set({0}, 1);
  y.set({1}, 1);
  bool raised = false;
  try {
    extend_by_zeros(y, embed_edges(sub, complete), build_dfj(complete));
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::SupportViolation;
  }
  o.require(raised, "vertex 2 has no image edge: SupportViolation raised");
  return o;
}

Outcome lp_sanity() {
  Outcome o;
  for (std::size_t l = 1; l <= 3; ++l) {
    const GoodInstance inst = ladder(l);
    const Digraph h = metric_completion(inst.graph);
    const Rational bal = solve_lp_exact(build_balanced(h), h.costs()).value;
    const Rational dfj = solve_lp_exact(build_dfj(h), h.costs()).value;
    const Rational opt = held_karp_cycle(h).cost;
    const Rational cert = objective_value(y_balanced(inst.graph, inst.decomposition, {}, 0), inst.graph.costs());
    const std::string at = "ladder(" + std::to_string(l) + "): LP " + bal.to_string() + " <= certificate " +
                           cert.to_string();
    if (l == 1) {
      o.require(bal <= cert, at);
      o.notes.push_back("note certificate " + cert.to_string() + " exceeds OPT " + opt.to_string() +
                        " at l=1 since 3l+4 > 4l+2; upper bound checked for l >= 2");
    } else {
      o.require(bal <= cert && cert <= opt, at + " <= OPT " + opt.to_string());
    }
    o.require(dfj == bal, "ladder(" + std::to_string(l) + "): DFJ " + dfj.to_string() + " = balanced " +
                              bal.to_string());
  }
  const GoodInstance c = cgk_L(2, 3);
  const Digraph h = metric_completion(c.graph);
  const Rational bal = solve_lp_exact(build_balanced(h), h.costs()).value;
  const Rational dfj = solve_lp_exact(build_dfj(h), h.costs()).value;
  const Rational opt = held_karp_cycle(h).cost;
  const Rational cert = objective_value(y_balanced(c.graph, c.decomposition, {}, 0), c.graph.costs());
  o.require(bal <= cert && cert <= opt, "cgk_L(2,3): LP " + bal.to_string() + " <= certificate " + cert.to_string() +
                                            " <= OPT " + opt.to_string());
  o.require(dfj == bal, "cgk_L(2,3): DFJ " + dfj.to_string() + " = balanced " + bal.to_string());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "balanced feasibility of y^0_t on ladders", 300, balanced_feasibility},
      {2, "DFJ feasibility of z^0_t on ladder-split(4)", 900, dfj_feasibility},
      {3, "direct and recursive checkers agree", 0, checker_equivalence},
      {4, "ladder integer optimum 4l+2", 0, ladder_optimum},
      {5, "balanced ladder ratio formula", 0, ratio_formulas},
      {6, "CGK instance L_2 with r=3", 1200, cgk_instance},
      {7, "path pipeline on ladder-split(4)", 0, path_pipeline},
      {8, "algebraic identities and mutation test", 0, algebraic_identities},
      {9, "zero-extension", 0, zero_extension},
      {10, "level-0 LP sanity", 0, lp_sanity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) {
      std::ostringstream lim;
      lim << std::fixed << std::setprecision(1) << "runtime " << secs << " s within " << c.limit_s << " s";
      out.require(secs < c.limit_s, lim.str());
    }
    for (const std::string& n : out.notes) std::cout << "      " << n << "\n";
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << " s)\n"
              << std::flush;
    failures += !out.pass;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
