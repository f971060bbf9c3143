#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dynpath/codec.hpp"
#include "dynpath/harness.hpp"

using namespace dynpath;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct Options {
  std::string engine = "recompute";
  std::string trace;
  std::string out;
  std::vector<std::string> params;
  std::uint64_t seed = 1;
  std::size_t n = 0;
};

EngineParams engine_params(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> kv;
  for (const auto& s : kvs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw BadParameter("--param expects key=value, got " + s);
    kv[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return parse_engine_params(kv);
}

Mode parse_mode(const std::string& s) {
  if (s == "inc") return Mode::kIncremental;
  if (s == "dec") return Mode::kDecremental;
  if (auto m = mode_from_string(s)) return *m;
  throw BadParameter("unknown mode: " + s);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw BadParameter(path + ": " + e.what());
  }
}

// Writes to the file, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string join_counters(const std::map<std::string, std::uint64_t>& c) {
  std::string s;
  for (const auto& [k, v] : c) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
  return s;
}

std::size_t edge_total(const UpdateTrace& t) {
  std::size_t m = t.header.initial_edges.size();
  for (const auto& op : t.ops) m += std::holds_alternative<InsertEdge>(op) ? 1 : 0;
  return m;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_run(const Options& o) {
  auto engine = make_engine(o.engine, engine_params(o.params));
  const auto trace = load_trace_file(o.trace);
  const auto res = run_trace(*engine, trace);
  std::ostringstream out;
  save_result(res, out);
  emit(o.out, out.str());
  return kPass;
}

ReductionBundle build_bundle(const std::string& reduction, const std::string& instance, bool random,
                             const Options& o, Mode mode, bool undirected) {
  if (random == !instance.empty()) throw BadParameter("give exactly one of --random or --instance");
  if (random) {
    if (o.n == 0) throw BadParameter("--random needs --n");
    if (reduction == "mw4c-stsp" && undirected) {
      auto inst = random_four_partite(o.n, 0.6, 20, o.seed);
      inst.complete();
      return gen_mw4c_to_stsp(inst, mode, true);
    }
    return generate_random_bundle(reduction, o.n, mode, o.seed);
  }
  Json j = read_json_file(instance);
  if (undirected) j["undirected"] = true;
  return generate_bundle(reduction, j, mode);
}

int cmd_gen(const Options& o, const std::string& reduction, const std::string& instance, bool random,
            const std::string& mode, bool undirected) {
  if (o.out.empty()) throw BadParameter("gen needs --out DIR");
  const auto b = build_bundle(reduction, instance, random, o, parse_mode(mode), undirected);
  save_bundle(b, o.out);
  std::cout << b.reduction << ": " << b.trace.update_count() << " updates, " << b.trace.query_count()
            << " queries -> " << o.out << "\n";
  return kPass;
}

int cmd_verify(const Options& o, const std::string& dir, std::size_t sparsify_factor,
               const std::string& json_out) {
  auto b = load_bundle(dir);
  if (sparsify_factor > 1) b.trace = sparsify_trace(b.trace, sparsify_factor * b.trace.header.n);
  auto engine = make_engine(o.engine, engine_params(o.params));
  const auto rep = verify_bundle(b, *engine);
  std::cout << rep.text();
  if (!json_out.empty()) emit(json_out, rep.summary().dump(1) + "\n");
  return rep.pass ? kPass : kMismatch;
}

int cmd_oracle(const Options& o, const std::string& reduction, const std::string& instance, bool random) {
  if (!o.trace.empty()) {
    std::ostringstream out;
    save_result(recompute_results(load_trace_file(o.trace)), out);
    emit(o.out, out.str());
    return kPass;
  }
  if (reduction.empty()) throw BadParameter("oracle needs --trace or a reduction name");
  const auto b = build_bundle(reduction, instance, random, o, Mode::kIncremental, false);
  emit(o.out, b.oracle.dump() + "\n");
  return kPass;
}

// Each bench row: one engine over one seeded random trace (or bundle).
struct BenchRow {
  std::string engine;
  std::string workload;
  std::size_t n, m, ops;
  double wall_ms;
  std::string counters;
};

std::vector<std::pair<std::string, RandomTraceSpec>> engine_workloads(std::size_t n) {
  std::vector<std::pair<std::string, RandomTraceSpec>> w;
  auto add = [&](const std::string& engine, Problem p, Mode m, bool directed) {
    RandomTraceSpec s;
    s.problem = p;
    s.mode = m;
    s.n = n;
    s.ops = 8 * n;
    s.directed = directed;
    s.max_weight = static_cast<Weight>(4 * n);
    w.emplace_back(engine, s);
  };
  for (Mode m : {Mode::kIncremental, Mode::kDecremental}) {
    add("ssea-dynamic", Problem::kSsea, m, true);
    add("stbp-threshold", Problem::kStbp, m, true);
    add("ssbp-layered", Problem::kSsbp, m, true);
    add("reach-dynamic", Problem::kStReach, m, true);
    add("recompute", Problem::kSssp, m, true);
  }
  add("ssbp-dyadic", Problem::kSsbp, Mode::kIncremental, true);
  add("ssbp-mst", Problem::kSsbp, Mode::kFully, false);
  add("nw-batched", Problem::kNwSssp, Mode::kIncremental, false);
  add("nw-batched", Problem::kNwStsp, Mode::kIncremental, false);
  return w;
}

int cmd_bench(const Options& o, const std::string& suite) {
  const std::size_t n = o.n ? o.n : 32;
  const auto params = engine_params(o.params);
  std::vector<BenchRow> rows;
  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  if (suite == "engines") {
    for (auto& [engine, spec] : engine_workloads(n)) {
      const auto t = random_trace(spec, o.seed);
      auto e = make_engine(engine, params);
      const auto t0 = clock::now();
      run_trace(*e, t);
      rows.push_back({engine, to_string(spec.problem) + ":" + to_string(spec.mode), t.header.n,
                      edge_total(t), t.ops.size(), ms_since(t0), join_counters(e->counters())});
    }
  } else if (suite == "reductions") {
    for (const auto& name : reduction_names()) {
      for (Mode mode : {Mode::kIncremental, Mode::kDecremental}) {
        const auto b = generate_random_bundle(name, n, mode, o.seed);
        auto e = make_engine("recompute");
        const auto t0 = clock::now();
        const auto rep = verify_bundle(b, *e);
        std::map<std::string, std::uint64_t> c;
        for (const auto& [k, v] : rep.counters.items()) c[k] = v.get<std::uint64_t>();
        c["pass"] = rep.pass ? 1 : 0;
        rows.push_back({"recompute", name + ":" + to_string(mode), b.trace.header.n, edge_total(b.trace),
                        b.trace.ops.size(), ms_since(t0), join_counters(c)});
      }
    }
  } else if (suite == "codec") {
    std::mt19937_64 rng(o.seed);
    for (std::size_t size : {n / 2, n, 2 * n}) {
      if (size == 0) continue;
      PathWeightCodec codec(size);
      IntMatrix labels(size, size, kNegInf);
      std::uniform_int_distribution<Weight> lab(1, static_cast<Weight>(codec.range()));
      std::bernoulli_distribution arc(0.3);
      std::size_t m = 0;
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
          if (i != j && arc(rng)) {
            labels(i, j) = lab(rng);
            ++m;
          }
        }
      }
      const auto t0 = clock::now();
      codec_widest(labels, 0, codec);
      rows.push_back({"codec-widest", "random-labels", size, m, m, ms_since(t0),
                      join_counters({{"nodes", codec.node_count()}, {"max_alloc_per_concat", codec.max_allocated()}})});
    }
  } else {
    throw BadParameter("unknown bench suite: " + suite + " (engines, reductions, codec)");
  }

  std::ostringstream csv;
  csv << "engine,workload,n,m,ops,wall_ms,counters\n";
  for (const auto& r : rows) {
    csv << r.engine << "," << r.workload << "," << r.n << "," << r.m << "," << r.ops << "," << std::fixed
        << std::setprecision(3) << r.wall_ms << "," << r.counters << "\n";
  }
  emit(o.out, csv.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynpath: partially dynamic path problems, engines and reduction harness"};
  app.require_subcommand(1);
  Options o;

  auto engine_opts = [&](CLI::App* c) {
    c->add_option("--engine", o.engine, "engine name")->capture_default_str();
    c->add_option("--param", o.params, "engine parameter key=value (dyadic.t, dyadic.g, batch.t)");
  };

  auto* run = app.add_subcommand("run", "replay a trace through an engine");
  engine_opts(run);
  run->add_option("--trace", o.trace, "trace JSONL")->required();
  run->add_option("--out", o.out, "result JSONL (default stdout)");

  std::string reduction, instance, mode = "inc";
  bool random = false, undirected = false;
  auto* gen = app.add_subcommand("gen", "generate a reduction bundle");
  gen->add_option("reduction", reduction, "reduction name")->required();
  gen->add_option("--instance", instance, "source instance JSON");
  gen->add_flag("--random", random, "random instance from --n and --seed");
  gen->add_option("--n", o.n, "part size");
  gen->add_option("--seed", o.seed, "random seed")->capture_default_str();
  gen->add_option("--mode", mode, "inc or dec")->capture_default_str();
  gen->add_flag("--undirected", undirected, "undirected graph (mw4c-stsp only)");
  gen->add_option("--out", o.out, "bundle directory")->required();

  std::string bundle_dir, json_out;
  std::size_t sparsify = 1;
  auto* verify = app.add_subcommand("verify", "replay a bundle and check it against its oracle");
  engine_opts(verify);
  verify->add_option("bundle", bundle_dir, "bundle directory")->required();
  verify->add_option("--json", json_out, "write the JSON summary here");
  verify->add_option("--sparsify", sparsify, "pad the trace to this many times its vertex count");

  std::string suite = "engines";
  auto* bench = app.add_subcommand("bench", "desk-scale benchmark, CSV output");
  engine_opts(bench);
  bench->add_option("suite", suite, "engines, reductions or codec")->capture_default_str();
  bench->add_option("--n", o.n, "vertex count / part size (default 32)");
  bench->add_option("--seed", o.seed, "random seed")->capture_default_str();
  bench->add_option("--out", o.out, "CSV file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "brute-force answer for a trace or a source instance");
  oracle->add_option("reduction", reduction, "reduction name (source instance mode)");
  oracle->add_option("--trace", o.trace, "trace JSONL: emit statically recomputed results");
  oracle->add_option("--instance", instance, "source instance JSON");
  oracle->add_flag("--random", random, "random instance from --n and --seed");
  oracle->add_option("--n", o.n, "part size");
  oracle->add_option("--seed", o.seed, "random seed")->capture_default_str();
  oracle->add_option("--out", o.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*gen) return cmd_gen(o, reduction, instance, random, mode, undirected);
    if (*verify) return cmd_verify(o, bundle_dir, sparsify, json_out);
    if (*bench) return cmd_bench(o, suite);
    if (*oracle) return cmd_oracle(o, reduction, instance, random);
  } catch (const IncompatibleEngine& e) {
    std::cerr << "incompatible engine: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
