// Command-line driver: gen, run, verify, bench.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dynmincut/dynmincut.hpp"

namespace {

using namespace dynmincut;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct EngineFlags {
  std::string mode = "theorem1";
  std::size_t copies = 0;
  std::uint64_t seed = 0;
  double cp = 800.0;
  double cb = 1.0;
  bool report_edges = false;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "theorem1 (eager + packing) or theorem2 (lazy)")
        ->check(CLI::IsMember({"theorem1", "theorem2"}));
    app->add_option("--copies", copies, "independent copies; 0 picks ceil(5 log2 n)");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--cp", cp, "center sampling constant")->check(CLI::PositiveNumber);
    app->add_option("--cb", cb, "lazy relabel budget constant")->check(CLI::PositiveNumber);
    app->add_flag("--report-edges", report_edges, "print cut edges for every query");
  }

  EngineConfig config() const {
    EngineConfig c;
    c.mode = mode == "theorem2" ? EngineMode::theorem2 : EngineMode::theorem1;
    c.copies = copies;
    c.seed = seed;
    c.c_p = cp;
    c.c_b = cb;
    c.report_edges = report_edges;
    return c;
  }
};

UpdateStream load(const std::string& path) {
  if (path == "-") return parse_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_stream(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fully dynamic minimum cut"};
  app.require_subcommand(1);

  // gen
  GenOptions gen;
  std::string gen_model = "erdos-insert-delete";
  std::string gen_out = "-";
  auto* gen_cmd = app.add_subcommand("gen", "write a deterministic update stream");
  gen_cmd->add_option("--n", gen.n, "vertex count")->required();
  gen_cmd->add_option("--steps", gen.steps, "update events, warm-up included");
  gen_cmd->add_option("--seed", gen.seed, "seed");
  gen_cmd->add_option("--model", gen_model)
      ->check(CLI::IsMember({"erdos-insert-delete", "sliding-window", "dense-regular"}));
  gen_cmd->add_option("--query-every", gen.query_every, "emit a query after every k updates; 0 disables");
  gen_cmd->add_flag("--cut-queries", gen.cut_queries, "emit '?e' instead of '?'");
  gen_cmd->add_option("--degree", gen.degree, "dense-regular degree (even, below n)");
  gen_cmd->add_option("--window", gen.window, "sliding-window edge budget");
  gen_cmd->add_option("-o,--output", gen_out, "output file, '-' for stdout");

  // run
  EngineFlags run_flags;
  std::string run_in = "-";
  bool run_timing = false;
  auto* run_cmd = app.add_subcommand("run", "replay a stream and answer its queries");
  run_cmd->add_option("stream", run_in, "stream file, '-' for stdin");
  run_flags.attach(run_cmd);
  run_cmd->add_flag("--timing", run_timing, "append wall-clock stats (output no longer reproducible)");

  // verify
  EngineFlags ver_flags;
  std::string ver_in = "-";
  std::string ver_oracle = "brute-force";
  bool ver_quiet = false;
  auto* ver_cmd = app.add_subcommand("verify", "replay a stream against an exact static oracle");
  ver_cmd->add_option("stream", ver_in, "stream file, '-' for stdin");
  ver_flags.attach(ver_cmd);
  ver_cmd->add_option("--oracle", ver_oracle)->check(CLI::IsMember({"brute-force", "stoer-wagner"}));
  ver_cmd->add_flag("-q,--quiet", ver_quiet, "only print the summary");

  // bench
  BenchOptions bench;
  std::string bench_mode = "theorem2";
  std::string bench_model = "dense-regular";
  auto* bench_cmd = app.add_subcommand("bench", "time update and query cost on generated streams");
  bench_cmd->add_option("--sizes", bench.sizes, "vertex counts")->delimiter(',');
  bench_cmd->add_option("--degrees", bench.degrees, "dense-regular degrees")->delimiter(',');
  bench_cmd->add_option("--mode", bench_mode)->check(CLI::IsMember({"theorem1", "theorem2"}));
  bench_cmd->add_option("--model", bench_model)
      ->check(CLI::IsMember({"erdos-insert-delete", "sliding-window", "dense-regular"}));
  bench_cmd->add_option("--repetitions", bench.repetitions)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--steps", bench.steps);
  bench_cmd->add_option("--query-every", bench.query_every);
  bench_cmd->add_option("--copies", bench.copies);
  bench_cmd->add_option("--cp", bench.c_p)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cb", bench.c_b)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) {
      gen.model = *parse_model(gen_model);
      const std::string text = render_stream(generate_stream(gen));
      if (gen_out == "-") {
        std::cout << text;
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot write " + gen_out);
        out << text;
      }
      return kOk;
    }
    if (*run_cmd) {
      const UpdateStream s = load(run_in);
      RunOptions ro;
      ro.engine = run_flags.config();
      ro.timing = run_timing;
      run_stream(s, ro, std::cout);
      return kOk;
    }
    if (*ver_cmd) {
      const UpdateStream s = load(ver_in);
      VerifyOptions vo;
      vo.engine = ver_flags.config();
      vo.oracle = ver_oracle == "stoer-wagner" ? OracleKind::stoer_wagner : OracleKind::brute_force;
      const VerifyReport rep = verify_stream(s, vo);
      if (ver_quiet) {
        std::cout << "# queries=" << rep.records.size() << "\n# mismatches=" << rep.mismatches
                  << "\n# underestimates=" << rep.underestimates << '\n';
      } else {
        print_report(rep, std::cout);
      }
      return rep.passed() ? kOk : kVerifyFailed;
    }
    if (*bench_cmd) {
      bench.mode = bench_mode == "theorem1" ? EngineMode::theorem1 : EngineMode::theorem2;
      bench.model = *parse_model(bench_model);
      print_bench(run_bench(bench), bench, std::cout);
      return kOk;
    }
  } catch (const StreamError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
