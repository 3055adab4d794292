#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmincut/engine.hpp"
#include "dynmincut/generators.hpp"
#include "dynmincut/graph.hpp"
#include "dynmincut/static_mincut.hpp"
#include "dynmincut/stream.hpp"

namespace dynmincut {

namespace detail {

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string format_cut_line(Weight value, const std::vector<EdgeKey>* edges) {
  std::string line = std::to_string(value);
  if (edges) {
    for (const auto& e : *edges) line += " " + std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return line;
}

inline bool has_cut_queries(const UpdateStream& s) {
  return std::any_of(s.events.begin(), s.events.end(),
                     [](const StreamEvent& e) { return e.kind == StreamEvent::Kind::query_cut; });
}

// Applies an update to the engine, converting graph errors into line-numbered
// stream errors.
inline void apply_event(Engine& eng, const StreamEvent& ev) {
  try {
    eng.update(ev.edge, ev.sign());
  } catch (const GraphError& err) {
    throw StreamError(ev.line, err.what());
  }
}

}  // namespace detail

/// True iff deleting `cut` from g leaves it disconnected. `cut` must be a
/// subset of g's edges.
inline bool disconnects(const DynamicGraph& g, const std::vector<EdgeKey>& cut) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return false;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (VertexId y : g.neighbors(x)) {
      if (seen[y] || std::binary_search(cut.begin(), cut.end(), EdgeKey::of(x, y))) continue;
      seen[y] = true;
      ++reached;
      stack.push_back(y);
    }
  }
  return reached < n;
}

struct RunOptions {
  EngineConfig engine;
  bool timing = false;  // append wall-clock statistics (non-deterministic)
};

struct RunSummary {
  std::size_t updates = 0;
  std::size_t queries = 0;
  std::vector<Weight> answers;
};

/// Replays `stream`, writing one line per query and a trailing '#' stats block.
inline RunSummary run_stream(const UpdateStream& stream, const RunOptions& opts, std::ostream& out) {
  EngineConfig cfg = opts.engine;
  cfg.report_edges = cfg.report_edges || detail::has_cut_queries(stream);
  Engine eng(stream.n, cfg);
  RunSummary sum;
  using Clock = std::chrono::steady_clock;
  Clock::duration update_time{};
  Clock::duration query_time{};
  for (const auto& ev : stream.events) {
    if (ev.is_update()) {
      const auto t0 = Clock::now();
      detail::apply_event(eng, ev);
      update_time += Clock::now() - t0;
      ++sum.updates;
      continue;
    }
    const auto t0 = Clock::now();
    const bool want_edges = ev.kind == StreamEvent::Kind::query_cut || opts.engine.report_edges;
    if (want_edges) {
      const CutResult cut = eng.query_cut();
      out << detail::format_cut_line(cut.value, &cut.cut_edges) << '\n';
      sum.answers.push_back(cut.value);
    } else {
      const Weight v = eng.query_value();
      out << v << '\n';
      sum.answers.push_back(v);
    }
    query_time += Clock::now() - t0;
    ++sum.queries;
  }

  out << "# n=" << stream.n << '\n';
  out << "# mode=" << to_string(eng.config().mode) << '\n';
  out << "# copies=" << eng.copies() << '\n';
  out << "# instances_per_copy=" << eng.levels() << '\n';
  out << "# updates=" << sum.updates << '\n';
  out << "# queries=" << sum.queries << '\n';
  out << "# queue_occupancy=" << detail::fixed6(eng.queue_occupancy()) << '\n';
  for (std::size_t i = 0; i < eng.levels(); ++i) {
    out << "# completeness_tau_" << (std::size_t{1} << i) << '=' << detail::fixed6(eng.completeness_rate(i)) << '\n';
  }
  if (opts.timing) {
    const double us = std::chrono::duration<double, std::micro>(update_time).count();
    const double qs = std::chrono::duration<double, std::micro>(query_time).count();
    out << "# updates_per_sec=" << detail::fixed3(us > 0 ? 1e6 * static_cast<double>(sum.updates) / us : 0.0) << '\n';
    out << "# mean_query_us=" << detail::fixed3(sum.queries ? qs / static_cast<double>(sum.queries) : 0.0) << '\n';
  }
  return sum;
}

enum class OracleKind { brute_force, stoer_wagner };

struct VerifyOptions {
  EngineConfig engine;
  OracleKind oracle = OracleKind::brute_force;
};

struct VerifyRecord {
  std::size_t line = 0;
  Weight engine = 0;
  Weight oracle = 0;
  bool cut_checked = false;
  bool cut_valid = true;

  bool ok() const { return engine == oracle && cut_valid; }
};

struct VerifyReport {
  std::vector<VerifyRecord> records;
  std::size_t mismatches = 0;
  std::size_t underestimates = 0;  // engine < oracle: must never happen

  bool passed() const { return mismatches == 0; }
};

/// Replays `stream` through the engine and an exact static oracle, comparing
/// every query. A '?e' query also checks that the reported edges are a cut of
/// the reported size.
inline VerifyReport verify_stream(const UpdateStream& stream, const VerifyOptions& opts) {
  if (opts.oracle == OracleKind::brute_force && stream.n > kMaxBruteForceVertices) {
    throw std::invalid_argument("brute-force oracle supports at most " + std::to_string(kMaxBruteForceVertices) +
                                " vertices; rerun with --oracle stoer-wagner");
  }
  EngineConfig cfg = opts.engine;
  cfg.report_edges = cfg.report_edges || detail::has_cut_queries(stream);
  Engine eng(stream.n, cfg);
  VerifyReport rep;
  for (const auto& ev : stream.events) {
    if (ev.is_update()) {
      detail::apply_event(eng, ev);
      continue;
    }
    VerifyRecord r;
    r.line = ev.line;
    if (ev.kind == StreamEvent::Kind::query_cut) {
      const CutResult cut = eng.query_cut();
      r.engine = cut.value;
      r.cut_checked = true;
      r.cut_valid = static_cast<Weight>(cut.cut_edges.size()) == cut.value &&
                    (stream.n < 2 || disconnects(eng.graph(), cut.cut_edges));
    } else {
      r.engine = eng.query_value();
    }
    if (stream.n < 2) {
      r.oracle = 0;
    } else {
      const WeightedGraph g = to_weighted(eng.graph());
      r.oracle = opts.oracle == OracleKind::brute_force ? brute_force_mincut(g).value : stoer_wagner(g).value;
    }
    if (!r.ok()) ++rep.mismatches;
    if (r.engine < r.oracle) ++rep.underestimates;
    rep.records.push_back(r);
  }
  return rep;
}

inline void print_report(const VerifyReport& rep, std::ostream& out) {
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    out << "query " << i << " line " << r.line << " engine=" << r.engine << " oracle=" << r.oracle;
    if (r.cut_checked) out << " cut=" << (r.cut_valid ? "valid" : "INVALID");
    out << (r.ok() ? " ok" : " MISMATCH") << '\n';
  }
  out << "# queries=" << rep.records.size() << '\n';
  out << "# mismatches=" << rep.mismatches << '\n';
  out << "# underestimates=" << rep.underestimates << '\n';
}

struct BenchOptions {
  std::vector<std::size_t> sizes{64, 128, 256};
  std::vector<std::size_t> degrees{};  // dense-regular only; empty: model default
  EngineMode mode = EngineMode::theorem2;
  StreamModel model = StreamModel::dense_regular;
  std::size_t steps = 2000;
  std::size_t query_every = 100;
  std::size_t repetitions = 1;
  std::size_t copies = 0;
  double c_p = 800.0;
  double c_b = 1.0;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t degree = 0;  // 0 when not applicable
  EngineMode mode = EngineMode::theorem2;
  std::size_t updates = 0;
  std::size_t warmup = 0;  // leading updates left out of the update timings
  std::size_t queries = 0;
  double update_mean_us = 0;
  double update_median_us = 0;
  double query_mean_us = 0;
  double query_median_us = 0;
  Weight value_sum = 0;
  std::uint64_t value_hash = 0;
};

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  return (*std::max_element(v.begin(), mid) + hi) / 2.0;
}

inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

/// Times one configuration: the same stream is replayed `repetitions` times.
inline BenchRow bench_one(std::size_t n, std::size_t degree, const BenchOptions& o) {
  GenOptions g;
  g.n = n;
  g.steps = o.steps;
  g.seed = o.seed;
  g.model = o.model;
  g.query_every = o.query_every;
  g.degree = degree;
  const UpdateStream stream = generate_stream(g);

  BenchRow row;
  // Dense-regular warm-up builds the graph from scratch; only churn is timed.
  if (o.model == StreamModel::dense_regular) {
    row.warmup = std::min(o.steps, n * (degree == 0 ? default_regular_degree(n) : degree) / 2);
  }
  row.n = n;
  row.degree = degree;
  row.mode = o.mode;
  std::vector<double> update_us;
  std::vector<double> query_us;
  std::vector<double> rep_update_means;
  std::vector<double> rep_query_means;
  using Clock = std::chrono::steady_clock;
  for (std::size_t rep = 0; rep < std::max<std::size_t>(1, o.repetitions); ++rep) {
    EngineConfig cfg;
    cfg.mode = o.mode;
    cfg.copies = o.copies;
    cfg.c_p = o.c_p;
    cfg.c_b = o.c_b;
    cfg.seed = o.seed;
    Engine eng(n, cfg);
    std::vector<double> up;
    std::vector<double> qu;
    Weight sum = 0;
    std::uint64_t hash = 1469598103934665603ULL;
    std::size_t seen = 0;
    for (const auto& ev : stream.events) {
      const auto t0 = Clock::now();
      if (ev.is_update()) {
        eng.update(ev.edge, ev.sign());
        const double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
        if (seen++ >= row.warmup) up.push_back(us);
      } else {
        const Weight v = eng.query_value();
        qu.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
        sum += v;
        hash = (hash ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
      }
    }
    row.updates = seen;
    row.queries = qu.size();
    row.value_sum = sum;
    row.value_hash = hash;
    rep_update_means.push_back(detail::mean(up));
    rep_query_means.push_back(detail::mean(qu));
    update_us.insert(update_us.end(), up.begin(), up.end());
    query_us.insert(query_us.end(), qu.begin(), qu.end());
  }
  row.update_mean_us = detail::mean(rep_update_means);
  row.query_mean_us = detail::mean(rep_query_means);
  row.update_median_us = detail::median(update_us);
  row.query_median_us = detail::median(query_us);
  return row;
}

inline std::vector<BenchRow> run_bench(const BenchOptions& o) {
  std::vector<BenchRow> rows;
  for (std::size_t n : o.sizes) {
    if (o.model == StreamModel::dense_regular && !o.degrees.empty()) {
      for (std::size_t d : o.degrees) rows.push_back(bench_one(n, d, o));
    } else {
      rows.push_back(bench_one(n, 0, o));
    }
  }
  return rows;
}

inline void print_bench(const std::vector<BenchRow>& rows, const BenchOptions& o, std::ostream& out) {
  out << "# model=" << to_string(o.model) << " repetitions=" << o.repetitions << " steps=" << o.steps
      << " query_every=" << o.query_every << " seed=" << o.seed << '\n';
  for (const auto& r : rows) {
    out << "n=" << r.n << " degree=" << r.degree << " mode=" << to_string(r.mode) << " updates=" << r.updates
        << " warmup=" << r.warmup << " queries=" << r.queries << " value_sum=" << r.value_sum << " value_hash=" << r.value_hash
        << " update_mean_us=" << detail::fixed3(r.update_mean_us)
        << " update_median_us=" << detail::fixed3(r.update_median_us)
        << " query_mean_us=" << detail::fixed3(r.query_mean_us)
        << " query_median_us=" << detail::fixed3(r.query_median_us) << '\n';
  }
}

}  // namespace dynmincut
