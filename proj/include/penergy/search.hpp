#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "penergy/bounds.hpp"
#include "penergy/canon.hpp"
#include "penergy/error.hpp"
#include "penergy/families.hpp"
#include "penergy/graph.hpp"
#include "penergy/graph6.hpp"
#include "penergy/spectra.hpp"

namespace penergy {

inline constexpr int kMaxEnumeratedConnected = 9;
inline constexpr int kMaxEnumeratedTrees = 10;

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace detail {

using Rows = std::vector<std::uint32_t>;

inline Rows rows_from_graph6(const std::string& text) {
  return CanonicalLabeler::adjacency_rows(decode_graph6(text));
}

// Canonical graph6 strings of all graphs obtained from each seed by adding
// one new vertex joined to a neighbour set drawn from `subsets`.
template <typename SubsetSource>
std::set<std::string> extend_by_vertex(const std::set<std::string>& seeds, SubsetSource subsets) {
  std::set<std::string> out;
  for (const std::string& seed : seeds) {
    const Rows base = rows_from_graph6(seed);
    const int k = static_cast<int>(base.size());
    for (std::uint32_t mask : subsets(k)) {
      Rows rows = base;
      rows.push_back(mask);
      for (int v = 0; v < k; ++v) {
        if ((mask >> v) & 1U) rows[static_cast<std::size_t>(v)] |= std::uint32_t{1} << k;
      }
      out.insert(rows_graph6(CanonicalLabeler(std::move(rows)).canonical_rows()));
    }
  }
  return out;
}

}  // namespace detail

/// Canonical graph6 strings of the connected graphs on n vertices, one per
/// isomorphism class, in sorted order. Every connected graph on n vertices
/// arises from a connected graph on n-1 vertices by adding a vertex (delete
/// a leaf of a spanning tree), so levels are grown from the single vertex.
inline std::vector<std::string> enumerate_connected_graph6(int n) {
  if (n < 1 || n > kMaxEnumeratedConnected) {
    throw Error(Errc::invalid_parameter, "internal enumeration supports 1 <= n <= " +
                                             std::to_string(kMaxEnumeratedConnected) + "; use a graph6 stream");
  }
  std::set<std::string> level{encode_graph6(Graph(1))};
  for (int k = 2; k <= n; ++k) {
    level = detail::extend_by_vertex(level, [](int order) {
      std::vector<std::uint32_t> masks;
      for (std::uint32_t m = 1; m < (std::uint32_t{1} << order); ++m) masks.push_back(m);
      return masks;
    });
  }
  return {level.begin(), level.end()};
}

inline std::vector<Graph> enumerate_connected(int n) {
  std::vector<Graph> out;
  for (const auto& s : enumerate_connected_graph6(n)) out.push_back(decode_graph6(s));
  return out;
}

/// Free trees on n vertices, grown by attaching one leaf at a time.
inline std::vector<std::string> enumerate_trees_graph6(int n) {
  if (n < 1 || n > kMaxEnumeratedTrees) {
    throw Error(Errc::invalid_parameter, "tree enumeration supports 1 <= n <= " + std::to_string(kMaxEnumeratedTrees));
  }
  std::set<std::string> level{encode_graph6(Graph(1))};
  for (int k = 2; k <= n; ++k) {
    level = detail::extend_by_vertex(level, [](int order) {
      std::vector<std::uint32_t> masks;
      for (int v = 0; v < order; ++v) masks.push_back(std::uint32_t{1} << v);
      return masks;
    });
  }
  return {level.begin(), level.end()};
}

inline std::vector<Graph> enumerate_trees(int n) {
  std::vector<Graph> out;
  for (const auto& s : enumerate_trees_graph6(n)) out.push_back(decode_graph6(s));
  return out;
}

// ---------------------------------------------------------------------------
// Inequality scans
// ---------------------------------------------------------------------------

enum class ConjectureKind { hong, sq_monotone, path_lower, tree_extremal, even_floor };

inline std::string_view to_string(ConjectureKind k) {
  switch (k) {
    case ConjectureKind::hong: return "hong";
    case ConjectureKind::sq_monotone: return "sq_monotone";
    case ConjectureKind::path_lower: return "path_lower";
    case ConjectureKind::tree_extremal: return "tree_extremal";
    case ConjectureKind::even_floor: return "even_floor";
  }
  return "unknown";
}

inline ConjectureKind parse_conjecture_kind(std::string_view s) {
  for (auto k : {ConjectureKind::hong, ConjectureKind::sq_monotone, ConjectureKind::path_lower,
                 ConjectureKind::tree_extremal, ConjectureKind::even_floor}) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::invalid_parameter, "unknown scan kind '" + std::string(s) + "'");
}

enum class Source { internal_enumeration, graph6_stream };

struct ConjectureSpec {
  ConjectureKind kind = ConjectureKind::hong;
  std::vector<double> p_values{2.0};
  int n = 1;
  Source source = Source::internal_enumeration;
};

/// One checked instance. For sq_monotone, `edge` is the added non-edge,
/// `value` the energy after adding it and `reference` the energy before.
struct Instance {
  std::string graph6;
  double p = 2.0;
  std::optional<Edge> edge;
  double value = 0.0;
  double reference = 0.0;
  double margin = 0.0;
};

inline bool instance_key_less(const Instance& a, const Instance& b) {
  const Edge none{-1, -1};
  return std::tie(a.graph6, a.p, a.edge ? *a.edge : none) < std::tie(b.graph6, b.p, b.edge ? *b.edge : none);
}

/// A margin below this is a violation; within it, the instance is tight.
inline double margin_tolerance(double reference) { return 1e-7 * (1.0 + std::abs(reference)); }

struct VerificationReport {
  ConjectureSpec spec;
  std::size_t graphs_checked = 0;
  std::size_t graphs_skipped = 0;  // disconnected / non-tree / malformed stream entries
  std::size_t instances = 0;
  std::size_t tight = 0;
  std::vector<Instance> violations;  // sorted by (graph6, p, edge)
  std::optional<Instance> min_instance;
  std::vector<Instance> rows;  // every instance, input order; filled on request
  double seconds = 0.0;
  int jobs = 1;

  bool clean() const { return violations.empty(); }
};

struct VerifyOptions {
  int jobs = 1;
  bool full = false;
  Graph6Reader::Mode mode = Graph6Reader::Mode::strict;
  std::size_t batch = 4096;
};

namespace detail {

inline void validate(const ConjectureSpec& spec) {
  if (spec.p_values.empty()) throw Error(Errc::invalid_parameter, "p list is empty");
  if (spec.n < 1) throw Error(Errc::invalid_parameter, "n must be >= 1");
  for (double p : spec.p_values) {
    check_exponent(p);
    if (spec.kind == ConjectureKind::even_floor && (p != std::floor(p) || static_cast<long>(p) % 2 != 0 || p < 4)) {
      throw Error(Errc::invalid_parameter, "even_floor needs p = 2k with k >= 2");
    }
  }
}

// Per-order reference energies, computed once per scan.
class References {
 public:
  explicit References(const std::vector<double>& p_values) : p_values_(p_values) {}

  struct Row {
    std::vector<double> path_plus;   // E_p^+(P_n)
    std::vector<double> path_total;  // E_p(P_n)
    std::vector<double> star_total;  // E_p(S_n)
  };

  const Row& at(int n) {
    auto it = rows_.find(n);
    if (it != rows_.end()) return it->second;
    Row r;
    const Spectrum path = eigenvalues(make_family(Family::path, {n}));
    const Spectrum star = eigenvalues(make_family(Family::star, {n}));
    for (double p : p_values_) {
      r.path_plus.push_back(path_positive_energy(n, p));
      r.path_total.push_back(p_energy(path, p).e_total);
      r.star_total.push_back(p_energy(star, p).e_total);
    }
    return rows_.emplace(n, std::move(r)).first->second;
  }

 private:
  std::vector<double> p_values_;
  std::map<int, Row> rows_;
};

struct GraphResult {
  bool skipped = false;
  std::vector<Instance> instances;
};

inline GraphResult evaluate(const ConjectureSpec& spec, const Graph& g, const std::string& g6,
                            const References::Row& ref) {
  GraphResult out;
  const int n = g.order();
  const auto needs_connected = spec.kind != ConjectureKind::sq_monotone && spec.kind != ConjectureKind::tree_extremal;
  if (n == 0 || (needs_connected && !is_connected(g)) || (spec.kind == ConjectureKind::tree_extremal && !is_tree(g))) {
    out.skipped = true;
    return out;
  }
  auto push = [&](double p, std::optional<Edge> e, double value, double reference, double margin) {
    out.instances.push_back({g6, p, e, value, reference, margin});
  };
  const Spectrum s = eigenvalues(g);
  switch (spec.kind) {
    case ConjectureKind::hong: {
      const HongCheck h = hong_extension_check(s);
      push(2.0, std::nullopt, std::min(h.s_plus, h.s_minus), n - 1.0, h.margin);
      break;
    }
    case ConjectureKind::path_lower:
      for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
        const double v = p_energy(s, spec.p_values[i]).e_plus;
        push(spec.p_values[i], std::nullopt, v, ref.path_plus[i], v - ref.path_plus[i]);
      }
      break;
    case ConjectureKind::even_floor:
      for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
        const double v = p_energy(s, spec.p_values[i]).e_total;
        push(spec.p_values[i], std::nullopt, v, ref.path_total[i], v - ref.path_total[i]);
      }
      break;
    case ConjectureKind::sq_monotone: {
      std::vector<double> before;
      for (double p : spec.p_values) before.push_back(p_energy(s, p).e_plus);
      for (const Edge& e : g.non_edges()) {
        const Spectrum added = eigenvalues(g.add_edge(e));
        for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
          const double after = p_energy(added, spec.p_values[i]).e_plus;
          push(spec.p_values[i], e, after, before[i], after - before[i]);
        }
      }
      break;
    }
    case ConjectureKind::tree_extremal:
      // p <= 2: E_p(S_n) <= E_p(T) <= E_p(P_n); p > 2: the reverse.
      for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
        const double p = spec.p_values[i];
        const double v = p_energy(s, p).e_total;
        const double lower = p <= 2.0 ? ref.star_total[i] : ref.path_total[i];
        const double upper = p <= 2.0 ? ref.path_total[i] : ref.star_total[i];
        if (v - lower <= upper - v) {
          push(p, std::nullopt, v, lower, v - lower);
        } else {
          push(p, std::nullopt, v, upper, upper - v);
        }
      }
      break;
  }
  return out;
}

class ReportBuilder {
 public:
  ReportBuilder(const ConjectureSpec& spec, const VerifyOptions& opt) : opt_(opt) {
    report_.spec = spec;
    report_.jobs = std::max(1, opt.jobs);
  }

  void add(GraphResult&& r) {
    if (r.skipped) {
      ++report_.graphs_skipped;
      return;
    }
    ++report_.graphs_checked;
    for (Instance& inst : r.instances) {
      ++report_.instances;
      const double tol = margin_tolerance(inst.reference);
      if (inst.margin < -tol) {
        report_.violations.push_back(inst);
      } else if (inst.margin <= tol) {
        ++report_.tight;
      }
      if (!report_.min_instance || inst.margin < report_.min_instance->margin ||
          (inst.margin == report_.min_instance->margin && instance_key_less(inst, *report_.min_instance))) {
        report_.min_instance = inst;
      }
      if (opt_.full) report_.rows.push_back(std::move(inst));
    }
  }

  void skip() { ++report_.graphs_skipped; }

  VerificationReport finish(double seconds) {
    std::sort(report_.violations.begin(), report_.violations.end(), instance_key_less);
    report_.seconds = seconds;
    return std::move(report_);
  }

 private:
  VerifyOptions opt_;
  VerificationReport report_;
};

// Evaluates a batch on `jobs` threads; results land in input order.
inline std::vector<GraphResult> evaluate_batch(const ConjectureSpec& spec, const std::vector<std::string>& batch,
                                               References& refs, int jobs) {
  std::vector<Graph> graphs;
  graphs.reserve(batch.size());
  for (const auto& s : batch) graphs.push_back(decode_graph6(s));
  // Reference rows are filled before the workers start; they only read.
  std::vector<const References::Row*> row_of;
  for (const Graph& g : graphs) row_of.push_back(g.order() > 0 ? &refs.at(g.order()) : nullptr);

  std::vector<GraphResult> results(batch.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < batch.size() && !failed; i = next++) {
      try {
        if (!row_of[i]) {
          results[i].skipped = true;
          continue;
        }
        results[i] = evaluate(spec, graphs[i], batch[i], *row_of[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const int count = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(batch.size(), 1)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace detail

/// Scans every input graph against the conjecture named by spec. Internal
/// enumeration uses connected graphs on spec.n vertices (trees for
/// tree_extremal); otherwise `input` supplies a graph6 stream.
inline VerificationReport verify(const ConjectureSpec& spec, std::istream* input = nullptr,
                                 const VerifyOptions& opt = {}) {
  detail::validate(spec);
  const auto start = std::chrono::steady_clock::now();
  detail::References refs(spec.p_values);
  detail::ReportBuilder builder(spec, opt);

  auto run_batch = [&](const std::vector<std::string>& batch) {
    for (auto& r : detail::evaluate_batch(spec, batch, refs, opt.jobs)) builder.add(std::move(r));
  };

  if (spec.source == Source::internal_enumeration) {
    const auto all = spec.kind == ConjectureKind::tree_extremal ? enumerate_trees_graph6(spec.n)
                                                                 : enumerate_connected_graph6(spec.n);
    run_batch(all);
  } else {
    if (!input) throw Error(Errc::invalid_parameter, "graph6 source selected without an input stream");
    Graph6Reader reader(*input, opt.mode);
    std::vector<std::string> batch;
    while (auto rec = reader.next()) {
      batch.push_back(std::move(rec->text));
      if (batch.size() >= opt.batch) {
        run_batch(batch);
        batch.clear();
      }
    }
    run_batch(batch);
    for (std::size_t i = 0; i < reader.skipped(); ++i) builder.skip();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return builder.finish(elapsed.count());
}

/// E_{2k}(G) >= E_{2k}(P_n) over every connected graph on n vertices.
inline VerificationReport even_energy_floor(int n, int k, int jobs = 1) {
  if (n < 2 || n > 8) throw Error(Errc::invalid_parameter, "even energy floor needs 2 <= n <= 8");
  if (k < 2) throw Error(Errc::invalid_parameter, "even energy floor needs k >= 2");
  ConjectureSpec spec{ConjectureKind::even_floor, {2.0 * k}, n, Source::internal_enumeration};
  return verify(spec, nullptr, {.jobs = jobs});
}

// ---------------------------------------------------------------------------
// Extremal trees
// ---------------------------------------------------------------------------

struct TreeExtremalReport {
  int n = 0;
  double p = 0.0;
  double t_p_min = 0.0;
  std::vector<std::string> argmin;  // every tree within tie tolerance of the minimum
  double t_p_max = 0.0;
  std::vector<std::string> argmax;
  std::size_t trees = 0;
};

inline double tie_tolerance(double v) { return 1e-9 * (1.0 + std::abs(v)); }

/// Minimum and maximum p-energy over all trees on n vertices.
inline TreeExtremalReport tree_extremal(int n, double p) {
  if (n < 2 || n > kMaxEnumeratedTrees) {
    throw Error(Errc::invalid_parameter, "tree extremal needs 2 <= n <= " + std::to_string(kMaxEnumeratedTrees));
  }
  check_exponent(p);
  TreeExtremalReport r;
  r.n = n;
  r.p = p;
  std::vector<std::pair<std::string, double>> energies;
  for (const auto& s : enumerate_trees_graph6(n)) {
    energies.emplace_back(s, p_energy(decode_graph6(s), p).e_total);
  }
  r.trees = energies.size();
  r.t_p_min = energies.front().second;
  r.t_p_max = energies.front().second;
  for (const auto& [s, e] : energies) {
    r.t_p_min = std::min(r.t_p_min, e);
    r.t_p_max = std::max(r.t_p_max, e);
  }
  for (const auto& [s, e] : energies) {
    if (e <= r.t_p_min + tie_tolerance(r.t_p_min)) r.argmin.push_back(s);
    if (e >= r.t_p_max - tie_tolerance(r.t_p_max)) r.argmax.push_back(s);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Randomized spectral property sampling
// ---------------------------------------------------------------------------

struct PropertySample {
  std::size_t samples = 0;
  std::size_t edge_interlacing_failures = 0;
  std::size_t vertex_interlacing_failures = 0;
  std::size_t lidskii_failures = 0;
  std::size_t perron_failures = 0;  // lambda_1(G) < theta_1(G - e)
  std::size_t trace_failures = 0;
  std::vector<std::string> failing_graph6;

  std::size_t failures() const {
    return edge_interlacing_failures + vertex_interlacing_failures + lidskii_failures + perron_failures +
           trace_failures;
  }
};

/// Draws G(n, 1/2) graphs with a removable edge and checks the edge and
/// vertex interlacing patterns, Lidskii majorization of theta - lambda by
/// (1, 0, ..., 0, -1), monotonicity of the spectral radius and the trace
/// identities sum(lambda) = 0, sum(lambda^2) = 2m.
inline PropertySample sample_spectral_properties(int n, std::size_t samples, std::uint64_t seed) {
  if (n < 3 || n > kMaxVertices) throw Error(Errc::invalid_parameter, "property sampling needs n >= 3");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  PropertySample out;
  while (out.samples < samples) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coin(rng)) edges.emplace_back(u, v);
      }
    }
    if (edges.empty()) continue;
    const Graph g(n, edges);
    const Edge e = edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
    const int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
    ++out.samples;

    const Spectrum lambda = eigenvalues(g);
    const Spectrum theta = eigenvalues(g.remove_edge(e));
    const Spectrum minus_v = eigenvalues(g.remove_vertex(v));
    bool bad = false;
    auto fail = [&](std::size_t& counter) {
      ++counter;
      bad = true;
    };
    if (!edge_interlaces(lambda, theta)) fail(out.edge_interlacing_failures);
    if (!vertex_interlaces(lambda, minus_v)) fail(out.vertex_interlacing_failures);
    if (!majorizes(single_edge_spectrum(lambda.size()), spectral_shift(lambda, theta))) fail(out.lidskii_failures);
    if (lambda[0] < theta[0] - interlacing_tolerance(lambda, theta)) fail(out.perron_failures);
    CompensatedSum trace;
    CompensatedSum trace2;
    for (double x : lambda.values) {
      trace += x;
      trace2 += x * x;
    }
    if (std::abs(trace.value()) > n * 1e-9 || std::abs(trace2.value() - 2.0 * g.size()) > n * 1e-8) {
      fail(out.trace_failures);
    }
    if (bad && out.failing_graph6.size() < 16) out.failing_graph6.push_back(encode_graph6(g));
  }
  return out;
}

}  // namespace penergy
