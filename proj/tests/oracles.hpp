#pragma once

// Reference implementations used only by the tests. They share no code with
// the library so that agreement between the two is meaningful.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using EdgeList = std::vector<std::pair<int, int>>;

inline Matrix adjacency(int n, const EdgeList& edges) {
  Matrix a(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (auto [u, v] : edges) {
    a[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1.0;
    a[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1.0;
  }
  return a;
}

/// Cyclic Jacobi rotations; eigenvalues in non-increasing order.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Sum of |x|^p over entries with x > tol (plus) or x < -tol (minus).
inline double signed_energy(const std::vector<double>& ev, double p, int sign, double tol = 1e-8) {
  double s = 0.0;
  for (double x : ev) {
    if (sign > 0 && x > tol) s += std::pow(x, p);
    if (sign < 0 && x < -tol) s += std::pow(-x, p);
  }
  return s;
}

/// Canonical key by brute force over all n! relabelings: the lexicographically
/// largest upper-triangle bit string.
inline std::string brute_force_key(int n, const EdgeList& edges) {
  const Matrix a = adjacency(n, edges);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string key;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i)
        key.push_back(a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]
                       [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] > 0 ? '1' : '0');
    best = std::max(best, key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool connected(int n, const EdgeList& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  int comps = n;
  for (auto [u, v] : edges) {
    const int a = find(u);
    const int b = find(v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --comps;
    }
  }
  return comps == 1;
}

/// Number of isomorphism classes of connected graphs on n labeled vertices,
/// by brute force over every edge subset.
inline std::size_t count_connected_classes(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) slots.emplace_back(i, j);
  std::set<std::string> keys;
  for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
    EdgeList edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1UL) edges.push_back(slots[k]);
    if (n > 1 && !connected(n, edges)) continue;
    keys.insert(brute_force_key(n, edges));
  }
  return keys.size();
}

/// Tree decoded from a Prüfer sequence on n = seq.size() + 2 vertices.
inline EdgeList pruefer_tree(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) ++degree[static_cast<std::size_t>(x)];
  EdgeList edges;
  for (int x : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (degree[static_cast<std::size_t>(leaf)] == 1) {
        edges.emplace_back(leaf, x);
        --degree[static_cast<std::size_t>(leaf)];
        --degree[static_cast<std::size_t>(x)];
        break;
      }
    }
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) {
      if (u < 0) {
        u = v;
      } else {
        edges.emplace_back(u, v);
      }
    }
  }
  return edges;
}

/// AHU encoding rooted at v.
inline std::string ahu(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[static_cast<std::size_t>(v)])
    if (w != parent) kids.push_back(ahu(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

/// Isomorphism-invariant key of a free tree: minimum AHU code over centers.
inline std::string tree_key(int n, const EdgeList& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::string best;
  for (int r = 0; r < n; ++r) {
    std::string code = ahu(adj, r, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

/// Number of free trees on n >= 2 vertices, from all n^(n-2) Prüfer sequences.
inline std::size_t count_free_trees(int n) {
  if (n <= 2) return 1;
  std::set<std::string> keys;
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  for (;;) {
    keys.insert(tree_key(n, pruefer_tree(seq)));
    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
  return keys.size();
}

}  // namespace oracle
