// Command-line front end: gen, verify, ratio, lp, export-lp.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "saatsp/errors.hpp"
#include "saatsp/graph_algorithms.hpp"
#include "saatsp/json_io.hpp"
#include "saatsp/report.hpp"

namespace {

using namespace saatsp;

struct RunConfig {
  std::string instance;
  std::string relax = "balanced";
  std::size_t t = 0;
  std::string delta;
  std::string checker = "direct";
  std::string cut_mode = "separated";
  std::size_t threads = 1;
  std::string out;
  bool timing = false;
  bool no_verify = false;
};

std::size_t max_enum_from_env() {
  const char* v = std::getenv("SA_ATSP_MAX_ENUM_N");
  if (!v || !*v) return kDefaultMaxEnumN;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n < 2 || n > 62) throw Error(ErrorKind::BadSpec, "SA_ATSP_MAX_ENUM_N must be an integer in 2..62");
  return n;
}

BuildOptions build_options(const RunConfig& cfg) {
  BuildOptions b;
  b.cut_mode = parse_cut_mode(cfg.cut_mode);
  b.max_enum_n = max_enum_from_env();
  return b;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::BadSpec, "cannot write " + path);
  f << text;
}

int cmd_gen(const RunConfig& cfg) {
  const BuiltInstance inst = build_instance(parse_instance_spec(cfg.instance));
  const std::string graph = digraph_to_text(inst.graph);
  const std::string sidecar = decomposition_sidecar(inst).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << graph << "\n" << sidecar;
  } else {
    emit(graph, cfg.out + ".graph");
    emit(sidecar, cfg.out + ".decomposition.json");
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const BuiltInstance inst = build_instance(parse_instance_spec(cfg.instance));
  const Relaxation relax = parse_relaxation(cfg.relax);
  const Certificate cert = make_certificate(inst, relax, cfg.t, parse_index_list(cfg.delta), build_options(cfg));
  CheckOptions check;
  check.threads = cfg.threads;
  Json j{{"instance", cfg.instance}, {"relaxation", cfg.relax}, {"level", cfg.t}, {"certificate", cert.description}};
  bool ok = true;
  std::optional<bool> direct_ok, recursive_ok;
  if (cfg.checker == "direct" || cfg.checker == "both") {
    SaVerdict v = check_direct(cert.y, cert.system, cfg.t, check);
    direct_ok = v.feasible;
    j["direct"] = to_json(v);
  }
  if (cfg.checker == "recursive" || cfg.checker == "both") {
    SaVerdict v = check_recursive(cert.y, cert.system, cfg.t, check);
    recursive_ok = v.feasible;
    j["recursive"] = to_json(v);
  }
  if (direct_ok && recursive_ok) j["agree"] = *direct_ok == *recursive_ok;
  ok = direct_ok.value_or(true) && recursive_ok.value_or(true);
  j["feasible"] = ok;
  emit(j.dump(2) + "\n", cfg.out);
  return ok ? 0 : 1;
}

int cmd_ratio(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  RatioOptions opt;
  opt.relax = parse_relaxation(cfg.relax);
  opt.t = cfg.t;
  opt.delta = parse_index_list(cfg.delta);
  opt.build = build_options(cfg);
  opt.check.threads = cfg.threads;
  opt.verify = !cfg.no_verify;
  const RatioReport r = ratio_report(parse_instance_spec(cfg.instance), opt);
  Json j = to_json(r);
  if (cfg.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    j["wall_time_ms"] = ms.count();
  }
  emit(j.dump(2) + "\n", cfg.out);
  return r.verdict && !r.verdict->feasible ? 1 : 0;
}

int cmd_lp(const RunConfig& cfg) {
  const BuiltInstance inst = build_instance(parse_instance_spec(cfg.instance));
  const LpResult lp = completion_lp(inst, parse_relaxation(cfg.relax), build_options(cfg));
  Json x = Json::array();
  for (const Rational& v : lp.x) x.push_back(v.to_string());
  Json j{{"instance", cfg.instance},
         {"relaxation", cfg.relax},
         {"value", lp.value.to_string()},
         {"value_approx", lp.value.to_decimal(6)},
         {"rounds", lp.rounds},
         {"cut_rows", lp.cut_rows},
         {"x", x}};
  emit(j.dump(2) + "\n", cfg.out);
  return 0;
}

int cmd_export_lp(const RunConfig& cfg) {
  const BuiltInstance inst = build_instance(parse_instance_spec(cfg.instance));
  const Relaxation relax = parse_relaxation(cfg.relax);
  BuildOptions b = build_options(cfg);
  b.cut_mode = CutMode::Enumerated;
  Digraph h;
  ConstraintSystem cs;
  if (relax == Relaxation::Path) {
    const Certificate cert = make_certificate(inst, relax, 0, {}, b);
    h = metric_completion(cert.system.graph);
    cs = build_path(h, *cert.p, *cert.q, b);
  } else {
    h = metric_completion(inst.graph);
    cs = build_system(relax, h, b);
  }
  std::ostringstream os;
  write_lp(os, cs, h.costs());
  emit(os.str(), cfg.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sherali-Adams certificates and integrality ratios for ATSP relaxations"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance, "ladder:L, ladder-split:L, cgk-G:K,R or cgk-L:K,R")->required();
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
  };
  auto add_relax = [&](CLI::App* sub) {
    sub->add_option("--relax", cfg.relax, "dfj, balanced or path")
        ->check(CLI::IsMember({"dfj", "balanced", "path"}));
    sub->add_option("--cut-mode", cfg.cut_mode, "enumerated or separated")
        ->check(CLI::IsMember({"enumerated", "separated"}));
  };
  auto add_level = [&](CLI::App* sub) {
    sub->add_option("--t", cfg.t, "Sherali-Adams level");
    sub->add_option("--delta", cfg.delta, "comma list of witness cycle indices promoted to integral");
    sub->add_option("--threads", cfg.threads, "worker threads for the direct checker")->check(CLI::Range(1, 256));
  };

  CLI::App* gen = app.add_subcommand("gen", "emit a digraph and its decomposition");
  add_instance(gen);
  CLI::App* verify = app.add_subcommand("verify", "check a certificate at level t");
  add_instance(verify);
  add_relax(verify);
  add_level(verify);
  verify->add_option("--checker", cfg.checker, "direct, recursive or both")
      ->check(CLI::IsMember({"direct", "recursive", "both"}));
  CLI::App* ratio = app.add_subcommand("ratio", "integrality ratio report");
  add_instance(ratio);
  add_relax(ratio);
  add_level(ratio);
  ratio->add_flag("--timing", cfg.timing, "add wall_time_ms to the report");
  ratio->add_flag("--no-verify", cfg.no_verify, "skip the SA feasibility check");
  CLI::App* lp = app.add_subcommand("lp", "exact level-0 LP optimum on the metric completion");
  add_instance(lp);
  add_relax(lp);
  CLI::App* export_lp = app.add_subcommand("export-lp", "write the completion LP in CPLEX LP format");
  add_instance(export_lp);
  add_relax(export_lp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (ratio->parsed()) return cmd_ratio(cfg);
    if (lp->parsed()) return cmd_lp(cfg);
    if (export_lp->parsed()) return cmd_export_lp(cfg);
  } catch (const saatsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
