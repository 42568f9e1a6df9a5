#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "saatsp/certificates.hpp"
#include "saatsp/instances.hpp"
#include "saatsp/oracles.hpp"
#include "saatsp/relaxations.hpp"
#include "saatsp/sa_lift.hpp"

namespace saatsp {

enum class InstanceFamily { Ladder, LadderSplit, CgkG, CgkL };

/// `ladder:l`, `ladder-split:l`, `cgk-G:k,r` or `cgk-L:k,r`.
struct InstanceSpec {
  InstanceFamily family;
  int a = 0;  // l or k
  int b = 0;  // r
  std::string text;
};

/// Throws BadSpec on anything malformed or outside the constructors' ranges.
InstanceSpec parse_instance_spec(const std::string& text);

struct BuiltInstance {
  InstanceSpec spec;
  Digraph graph;
  std::optional<Decomposition> decomposition;  // ladder, cgk-L, and the source of ladder-split
  std::optional<SplitInstance> split;
  std::optional<PqDecomposition> pq;           // cgk-G
};

BuiltInstance build_instance(const InstanceSpec& spec);

/// Comma-separated cycle indices; empty string means the empty set.
std::vector<std::size_t> parse_index_list(const std::string& text);

/// A closed-form certificate together with the system it is claimed feasible for.
struct Certificate {
  std::string description;
  MomentVector y;
  ConstraintSystem system;
  std::optional<VertexId> p, q;  // path endpoints in system.graph
  std::vector<EdgeId> edge_origin;  // system edge -> instance edge (identity unless restricted)
};

/// ladder / cgk-L with balanced: y^Delta_t. ladder-split with dfj or balanced: z^Delta_t.
/// ladder-split with path: z^Delta_t restricted along the return path. Other pairs throw BadSpec.
Certificate make_certificate(const BuiltInstance& inst, Relaxation relax, std::size_t t,
                             const std::vector<std::size_t>& delta, const BuildOptions& build);

struct RatioOptions {
  Relaxation relax = Relaxation::Balanced;
  std::size_t t = 0;
  std::vector<std::size_t> delta;
  BuildOptions build;
  CheckOptions check;
  bool verify = true;
  std::size_t max_oracle_n = kDefaultMaxOracleN;
};

struct RatioReport {
  std::string instance;
  std::string relaxation;
  std::size_t level = 0;
  std::vector<std::size_t> delta;
  Rational opt;
  std::string opt_source;  // "oracle", "oracle-contracted" or "proven-lower-bound"
  Rational frac;
  Rational ratio;
  Rational bound;
  std::optional<Rational> epsilon;
  bool meets_bound = false;
  std::optional<SaVerdict> verdict;
  std::vector<std::string> transcript;
};

/// Integer optimum (oracle when small enough), certificate objective on the metric
/// completion after zero-extension, their ratio, the SA verdict on the instance's own
/// system, and the closed-form lower bound for the family.
RatioReport ratio_report(const InstanceSpec& spec, const RatioOptions& opt);

/// Level-0 LP optimum on the metric completion of the instance (path: of G').
LpResult completion_lp(const BuiltInstance& inst, Relaxation relax, const BuildOptions& build);

}  // namespace saatsp
