#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "penergy/error.hpp"
#include "penergy/graph.hpp"
#include "penergy/spectra.hpp"

namespace penergy {

// ---------------------------------------------------------------------------
// Exact eigenvalue records
// ---------------------------------------------------------------------------

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    if (d == 0) throw Error(Errc::invalid_parameter, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A value of the form a + b*sqrt(c) with rational a, b and square-free
/// integer c >= 2 (or b = 0), or the trigonometric form 2cos(k*pi/m).
class ClosedValue {
 public:
  static ClosedValue radical(Rational a, Rational b, std::int64_t c) {
    if (c < 0) throw Error(Errc::invalid_parameter, "negative radicand");
    ClosedValue v;
    // Pull square factors out of c.
    std::int64_t outside = 1;
    for (std::int64_t f = 2; f * f <= c; ++f) {
      while (c % (f * f) == 0) {
        c /= f * f;
        outside *= f;
      }
    }
    b = Rational(b.num * outside, b.den);
    if (c == 0 || b.num == 0) {
      v.a_ = a;
    } else if (c == 1) {
      v.a_ = Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    } else {
      v.a_ = a;
      v.b_ = b;
      v.c_ = c;
    }
    return v;
  }

  static ClosedValue rational(Rational a) { return radical(a, Rational(0), 0); }

  static ClosedValue cosine(int k, int m) {
    ClosedValue v;
    v.trig_ = true;
    v.k_ = k;
    v.m_ = m;
    return v;
  }

  /// Evaluates without subtracting nearly equal quantities: when a and
  /// b*sqrt(c) have opposite signs the value is (a^2 - b^2 c)/(a - b sqrt(c)),
  /// with the numerator formed exactly.
  double value() const {
    if (trig_) return 2.0 * std::cos(static_cast<double>(k_) * std::numbers::pi / static_cast<double>(m_));
    if (b_.num == 0) return a_.value();
    const double root = b_.value() * std::sqrt(static_cast<double>(c_));
    const double a = a_.value();
    if ((a > 0) == (root > 0) || a == 0.0) return a + root;
    using Wide = __int128;
    const Wide an = a_.num, ad = a_.den, bn = b_.num, bd = b_.den;
    const Wide num = an * an * bd * bd - bn * bn * c_ * ad * ad;
    const Wide den = ad * ad * bd * bd;
    return (static_cast<double>(num) / static_cast<double>(den)) / (a - root);
  }

  bool is_trig() const { return trig_; }
  Rational a() const { return a_; }
  Rational b() const { return b_; }
  std::int64_t c() const { return c_; }

  /// "(3+√17)/2", "2-√3", "-1", "2cos(1π/4)".
  std::string to_string() const {
    if (trig_) return "2cos(" + std::to_string(k_) + "π/" + std::to_string(m_) + ")";
    const std::int64_t d = std::lcm(a_.den, b_.den);
    const std::int64_t an = a_.num * (d / a_.den);
    const std::int64_t bn = b_.num * (d / b_.den);
    std::string body;
    if (bn == 0) {
      body = std::to_string(an);
    } else {
      if (an != 0) body = std::to_string(an);
      if (bn < 0) {
        body += "-";
      } else if (an != 0) {
        body += "+";
      }
      if (std::abs(bn) != 1) body += std::to_string(std::abs(bn));
      body += "√" + std::to_string(c_);
    }
    if (d == 1) return body;
    return "(" + body + ")/" + std::to_string(d);
  }

 private:
  Rational a_{0};
  Rational b_{0};
  std::int64_t c_ = 0;
  bool trig_ = false;
  int k_ = 0;
  int m_ = 1;
};

struct ClosedEntry {
  ClosedValue value;
  int multiplicity = 1;
};

struct ClosedSpectrum {
  std::vector<ClosedEntry> entries;
  std::vector<double> numeric;  // non-increasing, multiplicities expanded

  int order() const { return static_cast<int>(numeric.size()); }
};

enum class ClosedKind { snn, snn_plus, path, star, complete };

inline ClosedKind parse_closed_kind(std::string_view name) {
  if (name == "snn" || name == "double_star_complement") return ClosedKind::snn;
  if (name == "snn_plus" || name == "double_star_complement_plus") return ClosedKind::snn_plus;
  if (name == "path") return ClosedKind::path;
  if (name == "star") return ClosedKind::star;
  if (name == "complete") return ClosedKind::complete;
  throw Error(Errc::invalid_parameter, "no closed spectrum for '" + std::string(name) + "'");
}

/// Graph whose spectrum closed_spectrum(kind, n) describes.
inline Graph closed_kind_graph(ClosedKind kind, int n) {
  switch (kind) {
    case ClosedKind::snn: return make_family(Family::double_star_complement, {n, n});
    case ClosedKind::snn_plus: return make_family(Family::double_star_complement_plus, {n, n});
    case ClosedKind::path: return make_family(Family::path, {n});
    case ClosedKind::star: return make_family(Family::star, {n});
    case ClosedKind::complete: return make_family(Family::complete, {n});
  }
  throw Error(Errc::invalid_parameter, "unknown closed kind");
}

inline ClosedSpectrum closed_spectrum(ClosedKind kind, int n) {
  const int min_n = (kind == ClosedKind::snn || kind == ClosedKind::snn_plus) ? 3 : 1;
  if (n < min_n) {
    throw Error(Errc::invalid_parameter, "closed spectrum needs n >= " + std::to_string(min_n));
  }
  if (n > kMaxVertices) throw Error(Errc::oversize_n, "closed spectrum order too large");
  using R = Rational;
  const std::int64_t N = n;
  ClosedSpectrum s;
  auto add = [&](ClosedValue v, int mult) {
    if (mult > 0) s.entries.push_back({v, mult});
  };
  switch (kind) {
    case ClosedKind::snn:
      add(ClosedValue::radical(R(2 * N - 3, 2), R(1, 2), 4 * N * N - 8 * N + 5), 1);
      add(ClosedValue::radical(R(-1, 2), R(1, 2), 4 * N - 3), 1);
      add(ClosedValue::radical(R(2 * N - 3, 2), R(-1, 2), 4 * N * N - 8 * N + 5), 1);
      add(ClosedValue::radical(R(-1, 2), R(-1, 2), 4 * N - 3), 1);
      add(ClosedValue::rational(R(-1)), n * 2 - 4);
      break;
    case ClosedKind::snn_plus:
      add(ClosedValue::radical(R(N - 1), R(1), N * N - 3 * N + 3), 1);
      add(ClosedValue::radical(R(-1), R(1), N - 1), 1);
      add(ClosedValue::radical(R(N - 1), R(-1), N * N - 3 * N + 3), 1);
      add(ClosedValue::radical(R(-1), R(-1), N - 1), 1);
      add(ClosedValue::rational(R(-1)), n * 2 - 4);
      break;
    case ClosedKind::path:
      for (int k = 1; k <= n; ++k) add(ClosedValue::cosine(k, n + 1), 1);
      break;
    case ClosedKind::star:
      if (n == 1) {
        add(ClosedValue::rational(R(0)), 1);
      } else {
        add(ClosedValue::radical(R(0), R(1), N - 1), 1);
        add(ClosedValue::rational(R(0)), n - 2);
        add(ClosedValue::radical(R(0), R(-1), N - 1), 1);
      }
      break;
    case ClosedKind::complete:
      add(ClosedValue::rational(R(N - 1)), 1);
      add(ClosedValue::rational(R(-1)), n - 1);
      break;
  }
  for (const auto& e : s.entries) s.numeric.insert(s.numeric.end(), static_cast<std::size_t>(e.multiplicity), e.value.value());
  std::sort(s.numeric.begin(), s.numeric.end(), std::greater<>());
  return s;
}

/// Sum over k = 1..floor((n+1)/2) of (2cos(k pi/(n+1)))^p, the positive
/// p-energy of the path P_n.
inline double path_positive_energy(int n, double p) {
  check_exponent(p);
  if (n < 1) throw Error(Errc::invalid_parameter, "path order must be >= 1");
  CompensatedSum sum;
  for (int k = 1; k <= (n + 1) / 2; ++k) {
    const double x = 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1));
    if (x > 1e-12) sum += power(x, p);
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Equitable partitions
// ---------------------------------------------------------------------------

struct EquitablePartition {
  std::vector<std::vector<int>> cells;
  std::vector<std::vector<int>> b;  // b[i][j]: neighbours in cell j of any vertex in cell i
};

/// Raised when a vertex's neighbour count into some cell differs from the
/// rest of its own cell.
class NotEquitable : public Error {
 public:
  NotEquitable(int vertex, int cell)
      : Error(Errc::not_equitable,
              "vertex " + std::to_string(vertex) + " has a different neighbour count into cell " + std::to_string(cell)),
        vertex_(vertex),
        cell_(cell) {}

  int vertex() const noexcept { return vertex_; }
  int cell() const noexcept { return cell_; }

 private:
  int vertex_;
  int cell_;
};

inline EquitablePartition verify_equitable(const Graph& g, std::vector<std::vector<int>> cells) {
  const int n = g.order();
  std::vector<int> cell_of(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].empty()) throw Error(Errc::invalid_parameter, "empty cell " + std::to_string(i));
    for (int v : cells[i]) {
      g.check_vertex(v);
      if (cell_of[static_cast<std::size_t>(v)] != -1) {
        throw Error(Errc::invalid_parameter, "vertex " + std::to_string(v) + " appears twice");
      }
      cell_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  if (std::find(cell_of.begin(), cell_of.end(), -1) != cell_of.end()) {
    throw Error(Errc::invalid_parameter, "cells do not cover every vertex");
  }

  const std::size_t k = cells.size();
  EquitablePartition part;
  part.b.assign(k, std::vector<int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t idx = 0; idx < cells[i].size(); ++idx) {
      const int v = cells[i][idx];
      std::vector<int> counts(k, 0);
      for (int w : g.neighbors(v)) ++counts[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(w)])];
      if (idx == 0) {
        part.b[i] = counts;
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] != part.b[i][j]) throw NotEquitable(v, static_cast<int>(j));
      }
    }
  }
  part.cells = std::move(cells);
  return part;
}

inline Eigen::MatrixXd divisor_matrix(const EquitablePartition& part) {
  const auto k = static_cast<Eigen::Index>(part.b.size());
  Eigen::MatrixXd b(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) b(i, j) = part.b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return b;
}

/// Eigenvalues of the (generally non-symmetric) divisor matrix, descending.
/// Imaginary parts up to 1e-7 are dropped; larger ones are an error.
inline std::vector<double> divisor_eigenvalues(const EquitablePartition& part) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(divisor_matrix(part), false);
  if (solver.info() != Eigen::Success) throw Error(Errc::internal, "divisor eigensolve failed");
  std::vector<double> out;
  for (const auto& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) > 1e-7) {
      throw Error(Errc::non_real_eigenvalue, "divisor eigenvalue with imaginary part " + std::to_string(z.imag()));
    }
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// True iff every divisor-matrix eigenvalue lies within 1e-7 of an
/// eigenvalue of g.
inline bool divisor_eigencheck(const Graph& g, const EquitablePartition& part) {
  // Re-verification rejects a partition built for another graph.
  const EquitablePartition again = verify_equitable(g, part.cells);
  if (again.b != part.b) throw Error(Errc::invalid_parameter, "partition does not belong to this graph");
  const Spectrum s = eigenvalues(g);
  for (double mu : divisor_eigenvalues(part)) {
    const bool found = std::any_of(s.values.begin(), s.values.end(), [&](double x) { return std::abs(x - mu) <= 1e-7; });
    if (!found) return false;
  }
  return true;
}

/// Cells {v1}, {v2}, leaves-of-v1 block, leaves-of-v2 block on the canonical
/// double-star-complement labeling.
inline std::vector<std::vector<int>> double_star_cells(int n1, int n2) {
  std::vector<std::vector<int>> cells{{0}, {1}, {}, {}};
  for (int v = 2; v <= n1; ++v) cells[2].push_back(v);
  for (int v = n1 + 1; v < n1 + n2; ++v) cells[3].push_back(v);
  return cells;
}

// ---------------------------------------------------------------------------
// Edge-addition gap on the double star complement
// ---------------------------------------------------------------------------

struct GapReport {
  int n = 0;
  double p = 0.0;
  double f = 0.0;
  double lambda1 = 0.0;  // (-1 + sqrt(4n-3))/2
  double lambda2 = 0.0;  // (2n-3 + sqrt(4n^2-8n+5))/2
  double theta1 = 0.0;   // -1 + sqrt(n-1)
  double theta2 = 0.0;   // n-1 + sqrt(n^2-3n+3)
  double theta3 = 0.0;   // n-1 - sqrt(n^2-3n+3)
};

namespace detail {

// x^p - y^p given d = x - y computed separately, y > 0.
inline double power_difference(double y, double d, double p) {
  return std::pow(y, p) * std::expm1(p * std::log1p(d / y));
}

}  // namespace detail

/// f(n) = E_p^+(S̄_{n,n}) - E_p^+((S̄_{n,n})^+) from the closed-form positive
/// eigenvalues. The two ~(2n)^p terms are differenced first through
/// lambda2 - theta2 = 1/(4(n-1+sqrt(A)/2)) - 3/(4(n-3/2+sqrt(B))) with
/// A = 4n^2-8n+5, B = n^2-3n+3, so no digits are lost to cancellation.
inline GapReport gap_f(int n, double p) {
  if (n < 3) throw Error(Errc::invalid_parameter, "gap needs n >= 3");
  check_exponent(p);
  if (p < 1.0) throw Error(Errc::invalid_parameter, "gap needs p >= 1");
  const double x = n;
  const double root4 = std::sqrt(4.0 * x - 3.0);
  const double rootA = std::sqrt(4.0 * x * x - 8.0 * x + 5.0);
  const double rootB = std::sqrt(x * x - 3.0 * x + 3.0);

  GapReport r;
  r.n = n;
  r.p = p;
  r.lambda1 = (2.0 * x - 2.0) / (1.0 + root4);
  r.lambda2 = (2.0 * x - 3.0 + rootA) / 2.0;
  r.theta1 = std::sqrt(x - 1.0) - 1.0;
  r.theta2 = x - 1.0 + rootB;
  r.theta3 = (x - 2.0) / (x - 1.0 + rootB);

  const double d2 = 0.25 / (x - 1.0 + rootA / 2.0) - 0.75 / (x - 1.5 + rootB);
  const double d1 = 0.5 + 0.25 / (std::sqrt(x - 0.75) + std::sqrt(x - 1.0));

  CompensatedSum f;
  f += detail::power_difference(r.theta2, d2, p);
  f += detail::power_difference(r.theta1, d1, p);
  f -= power(r.theta3, p);
  r.f = f.value();
  return r;
}

struct GapThreshold {
  std::optional<int> n0;
  std::vector<std::pair<int, int>> trace;  // (n, sign of f(n))
};

/// Smallest n <= n_max with f(n) > floor * (2n)^p and f(m) > 0 for every m
/// in [n, n_max]; empty when f does not stay positive up to n_max.
inline GapThreshold gap_threshold(double p, int n_max, double floor = 1e-12) {
  if (n_max < 3) throw Error(Errc::invalid_parameter, "gap threshold needs n_max >= 3");
  GapThreshold out;
  std::vector<double> f;
  for (int n = 3; n <= n_max; ++n) {
    const double v = gap_f(n, p).f;
    f.push_back(v);
    out.trace.emplace_back(n, v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
  }
  int first_stable = n_max + 1;
  for (int n = n_max; n >= 3 && f[static_cast<std::size_t>(n - 3)] > 0.0; --n) first_stable = n;
  for (int n = first_stable; n <= n_max; ++n) {
    if (f[static_cast<std::size_t>(n - 3)] > floor * std::pow(2.0 * n, p)) {
      out.n0 = n;
      break;
    }
  }
  return out;
}

/// E_p^+(S̄_{n1,n2}) - E_p^+((S̄_{n1,n2})^+) from two eigensolves.
inline double numeric_gap(int n1, int n2, double p) {
  const Graph g = make_family(Family::double_star_complement, {n1, n2});
  return p_energy(g, p).e_plus - p_energy(g.add_edge({0, 1}), p).e_plus;
}

}  // namespace penergy
