#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "penergy/error.hpp"
#include "penergy/graph.hpp"
#include "penergy/graph6.hpp"

namespace penergy {

inline constexpr int kMaxCanonicalOrder = 32;

namespace detail {

// Canonical labeling by individualization-refinement. Every leaf of the
// search tree is a vertex ordering; its certificate is the permuted
// adjacency matrix, and the canonical ordering is the one with the largest
// certificate. Automorphisms found at equal leaves prune sibling subtrees
// whose first vertex lies in an already explored orbit of the pointwise
// stabilizer of the current prefix.
class CanonicalLabeler {
 public:
  using Mask = std::uint32_t;
  using Cells = std::vector<std::vector<int>>;

  explicit CanonicalLabeler(const Graph& g) : CanonicalLabeler(adjacency_rows(g)) {}

  /// rows[v] holds bit w iff v ~ w.
  explicit CanonicalLabeler(std::vector<Mask> rows) : n_(static_cast<int>(rows.size())), rows_(std::move(rows)) {}

  static std::vector<Mask> adjacency_rows(const Graph& g) {
    if (g.order() > kMaxCanonicalOrder) {
      throw Error(Errc::oversize_n, "canonical labeling supports n <= " + std::to_string(kMaxCanonicalOrder));
    }
    std::vector<Mask> rows(static_cast<std::size_t>(g.order()), 0);
    for (const Edge& e : g.edges()) {
      rows[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
      rows[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
    return rows;
  }

  /// Permuted adjacency rows of the canonical form.
  const std::vector<Mask>& canonical_rows() {
    if (!have_leaf_) run();
    return best_cert_;
  }

  std::vector<int> run() {
    if (have_leaf_ || n_ == 0) return best_order_;
    Cells root(1);
    root[0].resize(static_cast<std::size_t>(n_));
    std::iota(root[0].begin(), root[0].end(), 0);
    refine(root);
    std::vector<int> prefix;
    search(root, prefix);
    return best_order_;
  }

 private:
  void refine(Cells& cells) const {
    for (;;) {
      std::vector<Mask> masks(cells.size(), 0);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (int v : cells[i]) masks[i] |= Mask{1} << v;
      }
      Cells next;
      next.reserve(cells.size());
      bool split = false;
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> keyed;
        keyed.reserve(cell.size());
        for (int v : cell) {
          std::vector<int> sig(masks.size());
          for (std::size_t j = 0; j < masks.size(); ++j) {
            sig[j] = std::popcount(rows_[static_cast<std::size_t>(v)] & masks[j]);
          }
          keyed.emplace_back(std::move(sig), v);
        }
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t start = 0;
        for (std::size_t i = 1; i <= keyed.size(); ++i) {
          if (i == keyed.size() || keyed[i].first != keyed[start].first) {
            std::vector<int> part;
            for (std::size_t k = start; k < i; ++k) part.push_back(keyed[k].second);
            if (start != 0 || i != keyed.size()) split = true;
            next.push_back(std::move(part));
            start = i;
          }
        }
      }
      cells = std::move(next);
      if (!split) return;
    }
  }

  std::vector<Mask> certificate(const std::vector<int>& order) const {
    std::vector<int> position(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<Mask> cert(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
      Mask row = rows_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
      while (row != 0) {
        const int w = std::countr_zero(row);
        row &= row - 1;
        cert[static_cast<std::size_t>(i)] |= Mask{1} << position[static_cast<std::size_t>(w)];
      }
    }
    return cert;
  }

  // gamma maps from[i] -> to[i].
  std::vector<int> automorphism(const std::vector<int>& from, const std::vector<int>& to) const {
    std::vector<int> gamma(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) gamma[static_cast<std::size_t>(from[static_cast<std::size_t>(i)])] = to[static_cast<std::size_t>(i)];
    return gamma;
  }

  void leaf(const Cells& cells) {
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n_));
    for (const auto& c : cells) order.push_back(c.front());
    std::vector<Mask> cert = certificate(order);
    if (!have_leaf_) {
      have_leaf_ = true;
      first_cert_ = cert;
      first_order_ = order;
      best_cert_ = std::move(cert);
      best_order_ = std::move(order);
      return;
    }
    if (cert == first_cert_) automorphisms_.push_back(automorphism(order, first_order_));
    if (cert == best_cert_) {
      if (best_cert_ != first_cert_) automorphisms_.push_back(automorphism(order, best_order_));
    } else if (cert > best_cert_) {
      best_cert_ = std::move(cert);
      best_order_ = std::move(order);
    }
  }

  // True iff a and b share an orbit of the group generated by the known
  // automorphisms that fix every vertex of prefix.
  bool same_orbit(const std::vector<int>& prefix, int a, int b) const {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      const bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                     [&](int v) { return gamma[static_cast<std::size_t>(v)] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int ra = find(v);
        const int rb = find(gamma[static_cast<std::size_t>(v)]);
        if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
      }
    }
    return find(a) == find(b);
  }

  void search(const Cells& cells, std::vector<int>& prefix) {
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() > 1) {
        target = i;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<int> tried;
    for (int v : cells[target]) {
      const bool pruned = std::any_of(tried.begin(), tried.end(), [&](int t) { return same_orbit(prefix, t, v); });
      if (pruned) continue;
      tried.push_back(v);

      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int w : cells[i]) {
          if (w != v) rest.push_back(w);
        }
        child.push_back(std::move(rest));
      }
      refine(child);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
    }
  }

  int n_;
  std::vector<Mask> rows_;
  bool have_leaf_ = false;
  std::vector<Mask> first_cert_;
  std::vector<int> first_order_;
  std::vector<Mask> best_cert_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

/// Vertex ordering that maps g to its canonical form: canonical vertex i is
/// g's vertex order[i]. Isomorphic graphs yield identical canonical forms.
inline std::vector<int> canonical_order(const Graph& g) { return detail::CanonicalLabeler(g).run(); }

inline Graph canonical_form(const Graph& g) { return g.relabel(canonical_order(g)); }

/// graph6 string of a graph given by adjacency bit rows.
inline std::string rows_graph6(const std::vector<std::uint32_t>& rows) {
  const int n = static_cast<int>(rows.size());
  std::string out;
  detail::append_size_field(out, n);
  int acc = 0;
  int filled = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | static_cast<int>((rows[static_cast<std::size_t>(u)] >> v) & 1U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

/// graph6 string of the canonical form; equal iff the graphs are isomorphic.
inline std::string canonical_graph6(const Graph& g) {
  return rows_graph6(detail::CanonicalLabeler(g).canonical_rows());
}

}  // namespace penergy
