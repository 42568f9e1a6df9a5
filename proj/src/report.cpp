#include "saatsp/report.hpp"

#include <algorithm>
#include <charconv>

#include "saatsp/errors.hpp"
#include "saatsp/graph_algorithms.hpp"

namespace saatsp {

namespace {

int parse_int(std::string_view s, const std::string& whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::BadSpec, "bad number in instance spec '" + whole + "'");
  }
  return value;
}

Rational power(long base, long exp) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return Rational(z);
}

Rational ratio_of(long num, long den) { return Rational(num, den); }

}  // namespace

InstanceSpec parse_instance_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::BadSpec, "instance spec needs 'family:params', got '" + text + "'");
  const std::string family = text.substr(0, colon);
  const std::string params = text.substr(colon + 1);
  InstanceSpec spec;
  spec.text = text;
  if (family == "ladder" || family == "ladder-split") {
    spec.family = family == "ladder" ? InstanceFamily::Ladder : InstanceFamily::LadderSplit;
    spec.a = parse_int(params, text);
    if (spec.a < 1 || spec.a > 200) throw Error(ErrorKind::BadSpec, "ladder length must be in 1..200");
    return spec;
  }
  if (family == "cgk-G" || family == "cgk-L") {
    const auto comma = params.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::BadSpec, "CGK spec needs 'k,r', got '" + text + "'");
    spec.family = family == "cgk-G" ? InstanceFamily::CgkG : InstanceFamily::CgkL;
    spec.a = parse_int(std::string_view(params).substr(0, comma), text);
    spec.b = parse_int(std::string_view(params).substr(comma + 1), text);
    const int min_k = spec.family == InstanceFamily::CgkG ? 0 : 2;
    if (spec.a < min_k || spec.a > 8) {
      throw Error(ErrorKind::BadSpec, "CGK level k must be in " + std::to_string(min_k) + "..8");
    }
    if (spec.b < 3 || spec.b > 50) throw Error(ErrorKind::BadSpec, "CGK branching r must be in 3..50");
    return spec;
  }
  throw Error(ErrorKind::BadSpec, "unknown instance family '" + family + "'");
}

BuiltInstance build_instance(const InstanceSpec& spec) {
  BuiltInstance b{spec, {}, {}, {}, {}};
  switch (spec.family) {
    case InstanceFamily::Ladder: {
      GoodInstance l = ladder(static_cast<std::size_t>(spec.a));
      b.graph = std::move(l.graph);
      b.decomposition = std::move(l.decomposition);
      break;
    }
    case InstanceFamily::LadderSplit: {
      GoodInstance l = ladder(static_cast<std::size_t>(spec.a));
      b.split = split(l.graph, l.decomposition);
      b.graph = b.split->graph;
      b.decomposition = std::move(l.decomposition);
      break;
    }
    case InstanceFamily::CgkG: {
      CgkGInstance g = cgk_G(spec.a, spec.b);
      b.graph = std::move(g.graph);
      b.pq = std::move(g.decomposition);
      break;
    }
    case InstanceFamily::CgkL: {
      GoodInstance l = cgk_L(spec.a, spec.b);
      b.graph = std::move(l.graph);
      b.decomposition = std::move(l.decomposition);
      break;
    }
  }
  return b;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    const int v = parse_int(item, text);
    if (v < 0) throw Error(ErrorKind::BadSpec, "negative index in '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
    start = end + 1;
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(ErrorKind::BadSpec, "repeated index in '" + text + "'");
  }
  return out;
}

Certificate make_certificate(const BuiltInstance& inst, Relaxation relax, std::size_t t,
                             const std::vector<std::size_t>& delta, const BuildOptions& build) {
  const std::string level = std::to_string(t);
  Certificate c;
  auto identity = [](std::size_t m) {
    std::vector<EdgeId> id(m);
    for (std::size_t e = 0; e < m; ++e) id[e] = static_cast<EdgeId>(e);
    return id;
  };
  switch (inst.spec.family) {
    case InstanceFamily::Ladder:
    case InstanceFamily::CgkL:
      if (relax != Relaxation::Balanced) {
        throw Error(ErrorKind::BadSpec, inst.spec.text + " carries a certificate for the balanced relaxation only");
      }
      c.description = "y_balanced(t=" + level + ")";
      c.y = y_balanced(inst.graph, *inst.decomposition, delta, t);
      c.system = build_balanced(inst.graph, build);
      c.edge_origin = identity(inst.graph.edge_count());
      return c;
    case InstanceFamily::LadderSplit: {
      MomentVector z = z_dfj(*inst.split, delta, t);
      if (relax != Relaxation::Path) {
        c.description = "z_dfj(t=" + level + ")";
        c.y = std::move(z);
        c.system = build_system(relax, inst.graph, build);
        c.edge_origin = identity(inst.graph.edge_count());
        return c;
      }
      const auto path = ladder_split_return_path(*inst.split, static_cast<std::size_t>(inst.spec.a));
      RestrictedPath r = restrict_path(z, inst.graph, path);
      c.description = "z_dfj(t=" + level + ") restricted along the return path";
      c.y = std::move(r.z);
      c.system = build_path(r.graph, r.p, r.q, build);
      c.p = r.p;
      c.q = r.q;
      c.edge_origin = std::move(r.edge_origin);
      return c;
    }
    case InstanceFamily::CgkG:
      throw Error(ErrorKind::BadSpec, "cgk-G instances carry no certificate; use cgk-L");
  }
  throw Error(ErrorKind::BadSpec, "unsupported instance");
}

RatioReport ratio_report(const InstanceSpec& spec, const RatioOptions& opt) {
  const BuiltInstance inst = build_instance(spec);
  const Certificate cert = make_certificate(inst, opt.relax, opt.t, opt.delta, opt.build);
  RatioReport r;
  r.instance = spec.text;
  r.relaxation = relaxation_name(opt.relax);
  r.level = opt.t;
  r.delta = opt.delta;
  const Digraph& g = cert.system.graph;
  r.transcript.push_back("instance " + spec.text + ": " + std::to_string(inst.graph.vertex_count()) +
                         " vertices, " + std::to_string(inst.graph.edge_count()) + " edges");
  r.transcript.push_back("certificate " + cert.description + " on " + std::to_string(g.vertex_count()) +
                         " vertices, " + std::to_string(g.edge_count()) + " edges");

  if (opt.verify) {
    r.verdict = check_direct(cert.y, cert.system, opt.t, opt.check);
    r.transcript.push_back(std::string("level-") + std::to_string(opt.t) + " check (" +
                           check_method_name(r.verdict->method) + "): " +
                           (r.verdict->feasible ? "feasible" : "INFEASIBLE") + " over " +
                           std::to_string(r.verdict->pairs) + " (S,Q) pairs");
  } else {
    r.transcript.push_back("SA check skipped");
  }

  const Digraph completion = metric_completion(g);
  BuildOptions host_build;
  host_build.cut_mode = CutMode::Separated;
  const ConstraintSystem host = build_system(opt.relax, completion, host_build, cert.p, cert.q);
  const MomentVector extended = extend_by_zeros(cert.y, embed_edges(g, completion), host);
  r.frac = objective_value(extended, completion.costs());
  r.transcript.push_back("zero-extension to the metric completion (" + std::to_string(completion.edge_count()) +
                         " edges): support check passed, objective " + r.frac.to_string());

  const long t = static_cast<long>(opt.t);
  switch (spec.family) {
    case InstanceFamily::Ladder:
    case InstanceFamily::LadderSplit: {
      const long l = spec.a;
      if (opt.relax == Relaxation::Path) {
        if (completion.vertex_count() <= opt.max_oracle_n) {
          r.opt = held_karp_path(completion, *cert.p, *cert.q, opt.max_oracle_n).cost;
          r.opt_source = "oracle";
        } else {
          r.opt = Rational(3 * l);
          r.opt_source = "proven-lower-bound";
        }
        r.bound = Rational(1) + ratio_of(2, 3 * t + 4) - ratio_of(2, l);
        r.epsilon = ratio_of(2 * (3 * t + 4), l);
      } else {
        const std::size_t unsplit_n = 3 * static_cast<std::size_t>(l + 1);
        if (completion.vertex_count() <= opt.max_oracle_n) {
          r.opt = held_karp_cycle(completion, opt.max_oracle_n).cost;
          r.opt_source = "oracle";
        } else if (unsplit_n <= opt.max_oracle_n) {
          // Contracting the zero-cost dashed edges maps tours of the split digraph onto
          // Eulerian subdigraphs of the ladder of equal cost, and conversely.
          r.opt = held_karp_cycle(metric_completion(ladder(static_cast<std::size_t>(l)).graph), opt.max_oracle_n).cost;
          r.opt_source = "oracle-contracted";
        } else {
          r.opt = Rational(4 * l + 2);
          r.opt_source = "proven-lower-bound";
        }
        r.bound = Rational(1) + ratio_of(1, 2 * t + 3) - ratio_of(2, l);
        r.epsilon = ratio_of(2 * (2 * t + 3), l);
      }
      break;
    }
    case InstanceFamily::CgkL: {
      const long k = spec.a;
      const long rr = spec.b;
      if (completion.vertex_count() <= opt.max_oracle_n) {
        r.opt = held_karp_cycle(completion, opt.max_oracle_n).cost;
        r.opt_source = "oracle";
      } else {
        r.opt = Rational((2 * k - 1) * (rr - 1)) * power(rr, k - 1);
        r.opt_source = "proven-lower-bound";
      }
      r.bound = Rational((2 * k - 1) * (rr - 1) * (t + 2), (t + 1) * 2 * k * (rr + 1));
      break;
    }
    case InstanceFamily::CgkG:
      throw Error(ErrorKind::BadSpec, "cgk-G instances carry no certificate; use cgk-L");
  }
  r.transcript.push_back("integer optimum " + r.opt.to_string() + " (" + r.opt_source + ")");
  r.ratio = r.opt / r.frac;
  r.meets_bound = r.ratio >= r.bound;
  r.transcript.push_back("ratio " + r.ratio.to_string() + (r.meets_bound ? " >= " : " < ") + "bound " +
                         r.bound.to_string());
  return r;
}

LpResult completion_lp(const BuiltInstance& inst, Relaxation relax, const BuildOptions& build) {
  if (inst.spec.family == InstanceFamily::CgkG) {
    throw Error(ErrorKind::BadSpec, "cgk-G instances are not ATSP instances; use cgk-L");
  }
  if (relax == Relaxation::Path) {
    if (inst.spec.family != InstanceFamily::LadderSplit) {
      throw Error(ErrorKind::BadSpec, "the path relaxation is defined on ladder-split instances");
    }
    const Certificate cert = make_certificate(inst, relax, 0, {}, build);
    const Digraph h = metric_completion(cert.system.graph);
    const ConstraintSystem cs = build_path(h, *cert.p, *cert.q, build);
    return solve_lp_exact(cs, h.costs());
  }
  const Digraph h = metric_completion(inst.graph);
  const ConstraintSystem cs = build_system(relax, h, build);
  return solve_lp_exact(cs, h.costs());
}

}  // namespace saatsp
