#include "saatsp/json_io.hpp"

#include <string>

#include "saatsp/errors.hpp"

namespace saatsp {

namespace {

Json ids(const EdgeSet& s) { return Json(s.ids()); }

std::string key_of(const EdgeSet& s) {
  std::string k;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) k += ",";
    k += std::to_string(s[i]);
  }
  return k;
}

EdgeSet set_of_key(const std::string& key) {
  std::vector<EdgeId> out;
  std::size_t start = 0;
  while (start < key.size()) {
    std::size_t end = key.find(',', start);
    if (end == std::string::npos) end = key.size();
    const std::string item = key.substr(start, end - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::ParseError, "bad edge set key '" + key + "'");
    }
    out.push_back(static_cast<EdgeId>(std::stoul(item)));
    start = end + 1;
  }
  EdgeSet s(out);
  if (s.size() != out.size()) throw Error(ErrorKind::ParseError, "repeated edge in key '" + key + "'");
  return s;
}

}  // namespace

Json to_json(const Decomposition& d) {
  return Json{{"cycles", d.cycles}, {"witness", d.witness}};
}

Json to_json(const SplitInstance& s) {
  Json cycles = Json::array();
  for (const SplitCycle& c : s.cycles) cycles.push_back(Json{{"solid", ids(c.solid)}, {"dashed", ids(c.dashed)}});
  return Json{{"solid", ids(s.solid)},
              {"dashed", ids(s.dashed)},
              {"cycles", cycles},
              {"origin", s.origin},
              {"witness", s.witness},
              {"vertex_origin", s.vertex_origin}};
}

Json to_json(const PqDecomposition& d) {
  Json tags = Json::array();
  for (PqTag t : d.tags) tags.push_back(t == PqTag::ExternalSplitting ? "external-splitting" : "internal-connected");
  return Json{{"p", d.p}, {"q", d.q}, {"cycles", d.cycles}, {"tags", tags}};
}

Json decomposition_sidecar(const BuiltInstance& inst) {
  Json j{{"instance", inst.spec.text}};
  switch (inst.spec.family) {
    case InstanceFamily::Ladder:
    case InstanceFamily::CgkL:
      j["kind"] = "good";
      j["decomposition"] = to_json(*inst.decomposition);
      break;
    case InstanceFamily::LadderSplit:
      j["kind"] = "split";
      j["split"] = to_json(*inst.split);
      break;
    case InstanceFamily::CgkG:
      j["kind"] = "pq-good";
      j["decomposition"] = to_json(*inst.pq);
      break;
  }
  return j;
}

Json to_json(const MomentVector& y) {
  Json entries = Json::object();
  for (const auto& [s, v] : y.entries()) entries[key_of(s)] = v.to_string();
  return Json{{"level", y.level()}, {"ground_size", y.ground_size()}, {"sparse", y.sparse()}, {"entries", entries}};
}

MomentVector moment_from_json(const Json& j) {
  try {
    MomentVector y(j.at("level").get<std::size_t>(), j.at("ground_size").get<std::size_t>(),
                   j.at("sparse").get<bool>());
    for (const auto& [k, v] : j.at("entries").items()) y.set(set_of_key(k), Rational::parse(v.get<std::string>()));
    return y;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("moment vector JSON: ") + e.what());
  }
}

Json to_json(const SaVerdict& v) {
  Json checked = Json::object();
  for (const auto& [f, c] : v.checked) checked[family_name(f)] = c;
  Json viol = Json::array();
  for (const SaViolation& x : v.violations) {
    viol.push_back(Json{{"constraint", x.tag.to_string()},
                        {"S", ids(x.s)},
                        {"Q", ids(x.q)},
                        {"lhs", x.lhs.to_string()},
                        {"rhs", x.rhs.to_string()}});
  }
  Json j{{"feasible", v.feasible},
         {"method", check_method_name(v.method)},
         {"level", v.level},
         {"pairs", v.pairs},
         {"checked", checked},
         {"cut_fallbacks", v.cut_fallbacks},
         {"violation_count", v.violation_count},
         {"violations", viol}};
  if (v.method == CheckMethod::Recursive) j["memo_hits"] = v.memo_hits;
  return j;
}

Json to_json(const RatioReport& r) {
  Json j{{"instance", r.instance},
         {"relaxation", r.relaxation},
         {"level", r.level},
         {"delta", r.delta},
         {"opt", r.opt.to_string()},
         {"opt_source", r.opt_source},
         {"frac", r.frac.to_string()},
         {"ratio", r.ratio.to_string()},
         {"ratio_approx", r.ratio.to_decimal(6)},
         {"bound", r.bound.to_string()},
         {"bound_approx", r.bound.to_decimal(6)},
         {"meets_bound", r.meets_bound}};
  if (r.epsilon) j["epsilon"] = r.epsilon->to_string();
  j["verdict"] = r.verdict ? to_json(*r.verdict) : Json(nullptr);
  j["transcript"] = r.transcript;
  return j;
}

}  // namespace saatsp
