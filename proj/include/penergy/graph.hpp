#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "penergy/error.hpp"

namespace penergy {

/// Largest vertex count accepted anywhere in the library.
inline constexpr int kMaxVertices = 2048;

/// Undirected edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Mutating operations (add_edge, remove_edge, complement, remove_vertex)
/// return new graphs. The adjacency relation is stored as a dense symmetric
/// byte matrix; at the supported sizes this is at most 4 MiB.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw Error(Errc::oversize_n, "vertex count " + std::to_string(n) + " outside [0, " +
                                        std::to_string(kMaxVertices) + "]");
    }
    adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  }

  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (const Edge& e : edges) {
      check_edge(e);
      if (has_edge(e.u, e.v)) {
        throw Error(Errc::edge_present, "duplicate edge " + format_edge(e));
      }
      set(e.u, e.v, true);
    }
  }

  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const noexcept { return n_; }
  int size() const noexcept { return m_; }

  bool has_edge(int u, int v) const {
    return u != v && adj_[index(u, v)] != 0;
  }
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }

  int degree(int v) const {
    int d = 0;
    for (int w = 0; w < n_; ++w) d += adj_[index(v, w)];
    return d;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int w = 0; w < n_; ++w) {
      if (adj_[index(v, w)] != 0) out.push_back(w);
    }
    return out;
  }

  /// Edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (adj_[index(u, v)] != 0) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Vertex pairs that are not edges, in lexicographic order.
  std::vector<Edge> non_edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (adj_[index(u, v)] == 0) out.emplace_back(u, v);
      }
    }
    return out;
  }

  Graph add_edge(Edge e) const {
    check_edge(e);
    if (has_edge(e)) throw Error(Errc::edge_present, "edge " + format_edge(e) + " already present");
    Graph out = *this;
    out.set(e.u, e.v, true);
    return out;
  }

  Graph remove_edge(Edge e) const {
    check_edge(e);
    if (!has_edge(e)) throw Error(Errc::edge_absent, "edge " + format_edge(e) + " not in graph");
    Graph out = *this;
    out.set(e.u, e.v, false);
    return out;
  }

  /// Induced subgraph on all vertices except v; higher labels shift down by one.
  Graph remove_vertex(int v) const {
    check_vertex(v);
    Graph out(n_ - 1);
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        if (a == v || b == v || adj_[index(a, b)] == 0) continue;
        out.set(a < v ? a : a - 1, b < v ? b : b - 1, true);
      }
    }
    return out;
  }

  /// Image of this graph under the relabeling old vertex order[i] -> new vertex i.
  Graph relabel(std::span<const int> order) const {
    if (static_cast<int>(order.size()) != n_) {
      throw Error(Errc::length_mismatch, "relabeling has wrong length");
    }
    Graph out(n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (has_edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])) {
          out.set(i, j, true);
        }
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw Error(Errc::vertex_out_of_range,
                  "vertex " + std::to_string(v) + " not in [0, " + std::to_string(n_) + ")");
    }
  }

 private:
  friend Graph complement(const Graph& g);

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  void set(int u, int v, bool on) {
    const std::uint8_t bit = on ? 1 : 0;
    if (adj_[index(u, v)] == bit) return;
    adj_[index(u, v)] = bit;
    adj_[index(v, u)] = bit;
    m_ += on ? 1 : -1;
  }

  void check_edge(Edge e) const {
    if (e.u < 0 || e.v >= n_ || e.u == e.v) {
      throw Error(Errc::vertex_out_of_range,
                  "edge " + format_edge(e) + " invalid for order " + std::to_string(n_));
    }
  }

  static std::string format_edge(Edge e) {
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint8_t> adj_;
};

inline Graph complement(const Graph& g) {
  Graph out(g.order());
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (!g.has_edge(u, v)) out.set(u, v, true);
    }
  }
  return out;
}

inline Graph add_edge(const Graph& g, Edge e) { return g.add_edge(e); }
inline Graph remove_edge(const Graph& g, Edge e) { return g.remove_edge(e); }

/// True iff a traversal from vertex 0 reaches every vertex.
inline bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n == 0) throw Error(Errc::empty_graph, "connectivity of the null graph is undefined");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n; ++w) {
      if (!seen[static_cast<std::size_t>(w)] && g.has_edge(v, w)) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

inline bool is_tree(const Graph& g) {
  return g.order() >= 1 && g.size() == g.order() - 1 && is_connected(g);
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

enum class Family {
  empty,
  path,
  cycle,
  star,
  complete,
  double_star,
  double_star_complement,
  double_star_complement_plus,
};

inline Family parse_family(std::string_view name) {
  static constexpr std::pair<std::string_view, Family> kNames[] = {
      {"empty", Family::empty},
      {"path", Family::path},
      {"cycle", Family::cycle},
      {"star", Family::star},
      {"complete", Family::complete},
      {"double_star", Family::double_star},
      {"double_star_complement", Family::double_star_complement},
      {"snn", Family::double_star_complement},
      {"double_star_complement_plus", Family::double_star_complement_plus},
      {"snn_plus", Family::double_star_complement_plus},
  };
  for (const auto& [key, value] : kNames) {
    if (key == name) return value;
  }
  throw Error(Errc::invalid_parameter, "unknown family '" + std::string(name) + "'");
}

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::empty: return "empty";
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::star: return "star";
    case Family::complete: return "complete";
    case Family::double_star: return "double_star";
    case Family::double_star_complement: return "double_star_complement";
    case Family::double_star_complement_plus: return "double_star_complement_plus";
  }
  return "unknown";
}

namespace detail {

inline void require_params(std::span<const int> params, std::size_t count, std::string_view kind) {
  if (params.size() != count) {
    throw Error(Errc::invalid_parameter, std::string(kind) + " takes " + std::to_string(count) +
                                             " parameter(s), got " + std::to_string(params.size()));
  }
}

inline void require_min(int value, int lo, std::string_view what) {
  if (value < lo) {
    throw Error(Errc::invalid_parameter,
                std::string(what) + " must be >= " + std::to_string(lo) + ", got " + std::to_string(value));
  }
}

// Double star S_{n1,n2}: centers 0 and 1, leaves of center 0 at 2..n1,
// leaves of center 1 at n1+1..n1+n2-1, plus the center edge.
inline Graph double_star(int n1, int n2) {
  require_min(n1, 2, "n1");
  require_min(n2, 2, "n2");
  if (n1 + n2 > kMaxVertices) throw Error(Errc::oversize_n, "double star too large");
  std::vector<Edge> edges{{0, 1}};
  for (int v = 2; v <= n1; ++v) edges.emplace_back(0, v);
  for (int v = n1 + 1; v < n1 + n2; ++v) edges.emplace_back(1, v);
  return Graph(n1 + n2, edges);
}

}  // namespace detail

/// Builds a named family on its canonical labeling (see FORMATS.md).
inline Graph make_family(Family kind, std::span<const int> params) {
  using detail::require_min;
  using detail::require_params;
  const std::string_view name = family_name(kind);
  switch (kind) {
    case Family::empty: {
      require_params(params, 1, name);
      require_min(params[0], 0, "n");
      return Graph(params[0]);
    }
    case Family::path: {
      require_params(params, 1, name);
      require_min(params[0], 1, "n");
      const int n = params[0];
      std::vector<Edge> edges;
      for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      return Graph(n, edges);
    }
    case Family::cycle: {
      require_params(params, 1, name);
      require_min(params[0], 3, "n");
      const int n = params[0];
      std::vector<Edge> edges;
      for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
      return Graph(n, edges);
    }
    case Family::star: {
      require_params(params, 1, name);
      require_min(params[0], 1, "n");
      std::vector<Edge> edges;
      for (int v = 1; v < params[0]; ++v) edges.emplace_back(0, v);
      return Graph(params[0], edges);
    }
    case Family::complete: {
      require_params(params, 1, name);
      require_min(params[0], 1, "n");
      return complement(Graph(params[0]));
    }
    case Family::double_star:
      require_params(params, 2, name);
      return detail::double_star(params[0], params[1]);
    case Family::double_star_complement:
      require_params(params, 2, name);
      return complement(detail::double_star(params[0], params[1]));
    case Family::double_star_complement_plus:
      require_params(params, 2, name);
      return complement(detail::double_star(params[0], params[1])).add_edge({0, 1});
  }
  throw Error(Errc::invalid_parameter, "unknown family");
}

inline Graph make_family(Family kind, std::initializer_list<int> params) {
  return make_family(kind, std::span<const int>(params.begin(), params.size()));
}

}  // namespace penergy
