#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dynpath/trace.hpp"

namespace dynpath {

class IncompatibleEngine : public Error {
 public:
  using Error::Error;
};

struct EngineParams {
  double dyadic_t = 0.5;
  double dyadic_g = -1;  // negative: the structure's default
  double batch_t = 0.5;
};

// Keys: dyadic.t, dyadic.g, batch.t. Throws BadParameter on unknown keys or
// unparsable values.
EngineParams parse_engine_params(const std::map<std::string, std::string>& kv);

// A replay target: reset once per trace, then ops in order.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual std::string name() const = 0;
  virtual bool supports(const TraceHeader& h) const = 0;
  // May read the trace's ops for static parameters (e.g. the weight universe)
  // but answers only from updates applied so far.
  virtual void reset(const UpdateTrace& t) = 0;
  virtual void apply(const UpdateOp& op) = 0;
  virtual Answer query(QueryKind k) = 0;
  virtual std::map<std::string, std::uint64_t> counters() const { return {}; }
};

// Registered names:
//   recompute             every problem and mode, static recomputation per query
//   recompute-off-by-one  recompute with every weight raised by one (fault injection)
//   ssea-dynamic          ssea / stea, incremental or decremental edge updates
//   stbp-threshold        stbp, incremental or decremental
//   ssbp-layered          ssbp / stbp, incremental or decremental
//   ssbp-dyadic           ssbp / stbp, incremental
//   ssbp-mst              ssbp / stbp on undirected graphs, recompute per query
//   nw-batched            nw_stsp / nw_sssp, incremental
//   reach-dynamic         st_reach, any mode
const std::vector<std::string>& engine_names();
// Throws BadParameter for an unknown name.
std::unique_ptr<Engine> make_engine(const std::string& name, const EngineParams& p = {});

// Throws IncompatibleEngine when the engine does not support the header.
TraceResult run_trace(Engine& e, const UpdateTrace& t);
TraceResult recompute_results(const UpdateTrace& t);

}  // namespace dynpath
