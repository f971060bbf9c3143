#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynpath/engine.hpp"
#include "dynpath/trace.hpp"
#include "json.hpp"

namespace dynpath {

using Json = nlohmann::json;
using BoolGrid = std::vector<std::vector<bool>>;

// ---------------------------------------------------------------------------
// Random traces

struct RandomTraceSpec {
  Problem problem = Problem::kSssp;
  Mode mode = Mode::kIncremental;
  std::size_t n = 8;
  std::size_t ops = 100;  // updates plus queries
  bool directed = true;
  Weight max_weight = 50;
  double query_rate = 1.0;      // chance of a query after each update
  bool weight_updates = false;  // setw instead of edge insertions / deletions
};

// Source 0; st problems get a random target. Decremental traces start from a
// random graph large enough to absorb every deletion.
UpdateTrace random_trace(const RandomTraceSpec& spec, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Source-problem instances

// Pair tables of a 4-partite graph on parts A, B, C, D, each of size n. Table
// indices follow the pair name: ab[a][b], bc[b][c], ca[c][a], ad[a][d],
// bd[b][d], cd[c][d]. nullopt marks a missing edge.
enum class Pair { kAB, kBC, kCA, kAD, kBD, kCD };

struct FourPartiteInstance {
  using Table = std::vector<std::vector<std::optional<Weight>>>;

  std::size_t n = 0;
  Weight w_bound = 1;  // genuine weights lie in [0, w_bound - 1]
  std::array<Table, 6> pairs;
  bool completed = false;

  explicit FourPartiteInstance(std::size_t n = 0, Weight w_bound = 1);
  const Table& table(Pair p) const { return pairs[static_cast<int>(p)]; }
  Table& table(Pair p) { return pairs[static_cast<int>(p)]; }
  // Sum of the six pair weights, or nullopt when a pair is missing.
  std::optional<Weight> clique_weight(std::size_t a, std::size_t b, std::size_t c,
                                      std::size_t d) const;
  // Missing edges get weight 6 * w_bound + 1.
  void complete();
  Weight completion_weight() const { return 6 * w_bound + 1; }
};

FourPartiteInstance random_four_partite(std::size_t n, double density, Weight max_weight,
                                        std::uint64_t seed);

struct OMv3Query {
  std::vector<bool> u, v, w;
};
struct OMv3Instance {
  std::size_t n = 0;
  BoolGrid a;
  std::vector<OMv3Query> queries;
};
OMv3Instance random_omv3(std::size_t n, std::size_t queries, double density, std::uint64_t seed);

// Matrices for the 3-product MW3(A, C, D)[k][l][i] = min j with
// A[k][j] & C[l][j] & D[i][j].
struct MinWitness3Instance {
  std::size_t n = 0;
  BoolGrid a, c, d;
};
MinWitness3Instance random_min_witness3(std::size_t n, double density, std::uint64_t seed);

// MW(A, B)[i][j] = min k with A[i][k] & B[k][j].
struct MinWitnessInstance {
  std::size_t n = 0;
  BoolGrid a, b;
};
MinWitnessInstance random_min_witness(std::size_t n, double density, std::uint64_t seed);

Json to_json(const FourPartiteInstance& inst);
Json to_json(const OMv3Instance& inst);
Json to_json(const MinWitness3Instance& inst);
Json to_json(const MinWitnessInstance& inst);
FourPartiteInstance four_partite_from_json(const Json& j);
OMv3Instance omv3_from_json(const Json& j);
MinWitness3Instance min_witness3_from_json(const Json& j);
MinWitnessInstance min_witness_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Brute-force oracles

// Minimum clique weight, or nullopt when the instance has no 4-clique.
std::optional<Weight> oracle_min_weight_4clique(const FourPartiteInstance& inst);
bool oracle_detect_4clique(const FourPartiteInstance& inst);
// Lightest clique through a and d.
std::optional<Weight> oracle_min_clique_through(const FourPartiteInstance& inst, std::size_t a,
                                                std::size_t d);
// Lexicographically least (b, c) completing a clique through a and d.
std::optional<std::pair<std::size_t, std::size_t>> oracle_first_clique_through(
    const FourPartiteInstance& inst, std::size_t a, std::size_t d);

std::vector<bool> oracle_omv3(const OMv3Instance& inst);
// Lexicographically least (j, l) satisfying query q's clause at coordinate k.
std::optional<std::pair<std::size_t, std::size_t>> oracle_omv3_clause(const OMv3Instance& inst,
                                                                      std::size_t q, std::size_t k);

using Witness3Table = std::vector<std::vector<std::vector<std::optional<std::int64_t>>>>;
using WitnessTable2 = std::vector<std::vector<std::optional<std::int64_t>>>;
Witness3Table oracle_min_witness3(const MinWitness3Instance& inst);  // [k][l][i]
WitnessTable2 oracle_min_witness(const MinWitnessInstance& inst);    // [i][j]

// ---------------------------------------------------------------------------
// Reduction bundles

// What one query of a generated trace must decode to. For scalar problems
// `targets` is empty and `expect` has one entry; for array problems there is
// one entry per target vertex. nullopt means the query fails its threshold.
struct QueryCheck {
  std::size_t query = 0;  // index among the trace's queries
  std::int64_t i = 0;     // outer loop index (row of D, OMv3 query number, ...)
  std::int64_t k = 0;     // inner loop index
  Weight threshold = 0;
  Weight base = 0;
  std::vector<Vertex> targets;
  std::vector<std::optional<Weight>> expect;

  bool operator==(const QueryCheck&) const = default;
};

// One outer iteration of a generator: ops [begin, end). Weight-dynamic
// bundles retire used edges to `retire` within pass `pass`.
struct Round {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::int64_t pass = 0;
  Weight retire = 0;

  bool operator==(const Round&) const = default;
};

struct ReductionBundle {
  std::string reduction;
  Mode mode = Mode::kIncremental;
  UpdateTrace trace;
  Json params;  // n and the construction constants
  Json oracle;  // source-problem answer
  std::vector<QueryCheck> checks;
  std::vector<Round> rounds;
};

// Reduction names: mw4c-stsp, 4c-nwstsp, 4c-stbp, 4c-stea, omv3-stbp,
// omv3-nwstsp, omv3-stea, mw3p-nwsssp, mw-ssbp.
const std::vector<std::string>& reduction_names();

// Edge-weighted st shortest paths from minimum-weight 4-clique. The instance
// must be completed; weights are scaled by 4 inside the generator.
ReductionBundle gen_mw4c_to_stsp(const FourPartiteInstance& inst, Mode mode,
                                 bool undirected = false);
ReductionBundle gen_4c_to_nwstsp(const FourPartiteInstance& inst, Mode mode);
ReductionBundle gen_4c_to_stbp(const FourPartiteInstance& inst, Mode mode);
ReductionBundle gen_4c_to_stea(const FourPartiteInstance& inst, Mode mode);
ReductionBundle gen_omv3_to_stbp(const OMv3Instance& inst, Mode mode);
ReductionBundle gen_omv3_to_nwstsp(const OMv3Instance& inst, Mode mode);
// Incremental traces accept more than n queries: every n queries start a new
// pass with all weights raised by 10.
ReductionBundle gen_omv3_to_stea(const OMv3Instance& inst, Mode mode);
ReductionBundle gen_mw3p_to_nwsssp(const MinWitness3Instance& inst, Mode mode);
ReductionBundle gen_mw_to_ssbp(const MinWitnessInstance& inst, Mode mode);

// Builds the reduction's random instance (fixed densities) and generates.
ReductionBundle generate_random_bundle(const std::string& reduction, std::size_t n, Mode mode,
                                       std::uint64_t seed);
// Instance JSON in the format of to_json for the reduction's source problem.
ReductionBundle generate_bundle(const std::string& reduction, const Json& instance, Mode mode);

// Per-target decoded values of one query answer (nullopt: threshold failed).
std::vector<std::optional<Weight>> decode_query(const ReductionBundle& b, const QueryCheck& c,
                                                const Answer& a);
// Source-problem answer, in the same format as `oracle`.
Json decode(const ReductionBundle& b, const TraceResult& r);

// Counters read off the trace itself: updates, per-round update maxima and,
// for weight-dynamic bundles, per-edge change and activation counts per pass.
Json audit_counters(const ReductionBundle& b);

struct VerifyReport {
  bool pass = false;
  std::optional<std::size_t> first_mismatch;  // query index
  std::vector<std::string> failures;
  Json decoded;
  Json counters;
  Json engine_counters;

  std::string text() const;
  Json summary() const;
};

VerifyReport verify_bundle(const ReductionBundle& b, Engine& engine);

// Directory with trace.jsonl and expected.json.
void save_bundle(const ReductionBundle& b, const std::string& dir);
ReductionBundle load_bundle(const std::string& dir);

}  // namespace dynpath
