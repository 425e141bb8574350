#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "penergy/error.hpp"
#include "penergy/graph.hpp"

namespace penergy {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  CompensatedSum& operator-=(double x) { return *this += -x; }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Relative sign-classification tolerance: tol = kSignTolerance * max(1, radius).
inline constexpr double kSignTolerance = 1e-8;
/// Eigenvalues closer than this are counted as one cluster.
inline constexpr double kClusterRadius = 1e-6;

/// Real spectrum sorted in non-increasing order.
struct Spectrum {
  std::vector<double> values;
  double radius = 0.0;
  double tol = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// 1-based access matching the usual lambda_1 >= ... >= lambda_n notation.
  double at1(std::size_t i) const { return values.at(i - 1); }

  int positive_count() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [&](double x) { return x > tol; }));
  }
  int negative_count() const {
    return static_cast<int>(std::count_if(values.begin(), values.end(), [&](double x) { return x < -tol; }));
  }
  int zero_count() const { return static_cast<int>(values.size()) - positive_count() - negative_count(); }
};

inline Spectrum make_spectrum(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  Spectrum s;
  s.radius = 0.0;
  for (double x : values) s.radius = std::max(s.radius, std::abs(x));
  s.tol = kSignTolerance * std::max(1.0, s.radius);
  s.values = std::move(values);
  return s;
}

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const int n = g.order();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

/// Eigenvalues of a dense symmetric matrix (Householder tridiagonalization
/// followed by implicit symmetric QR).
inline Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) throw Error(Errc::empty_graph, "eigenvalues of an empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::internal, "symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return make_spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

inline Spectrum eigenvalues(const Graph& g) {
  if (g.order() == 0) throw Error(Errc::empty_graph, "eigenvalues of the null graph");
  return symmetric_eigenvalues(adjacency_matrix(g));
}

struct SignPartition {
  std::vector<double> positives;
  std::vector<double> zeros;
  std::vector<double> negatives;
};

inline SignPartition sign_partition(const Spectrum& s) {
  SignPartition out;
  for (double x : s.values) {
    if (x > s.tol) {
      out.positives.push_back(x);
    } else if (x < -s.tol) {
      out.negatives.push_back(x);
    } else {
      out.zeros.push_back(x);
    }
  }
  return out;
}

/// Number of eigenvalues within kClusterRadius of value.
inline int multiplicity(const Spectrum& s, double value, double radius = kClusterRadius) {
  return static_cast<int>(
      std::count_if(s.values.begin(), s.values.end(), [&](double x) { return std::abs(x - value) <= radius; }));
}

struct Cluster {
  double value = 0.0;  // mean of the members
  int multiplicity = 0;
};

/// Groups consecutive eigenvalues whose gap is at most radius.
inline std::vector<Cluster> clusters(const Spectrum& s, double radius = kClusterRadius) {
  std::vector<Cluster> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    CompensatedSum sum;
    sum += s[i];
    while (j < s.size() && s[j - 1] - s[j] <= radius) sum += s[j++];
    const int count = static_cast<int>(j - i);
    out.push_back({sum.value() / count, count});
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// p-energies
// ---------------------------------------------------------------------------

inline constexpr double kMaxExponent = 64.0;

/// x^p for x >= 0. Small integer exponents use repeated squaring; 0^p = 0.
inline double power(double x, double p) {
  if (x == 0.0) return 0.0;
  if (p == std::floor(p) && p >= 1.0 && p <= kMaxExponent) {
    auto k = static_cast<unsigned>(p);
    double result = 1.0;
    double base = x;
    while (k != 0) {
      if (k & 1U) result *= base;
      base *= base;
      k >>= 1U;
    }
    return result;
  }
  return std::exp(p * std::log(x));
}

struct EnergyReport {
  double p = 1.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double e_total = 0.0;
  int positive = 0;
  int zero = 0;
  int negative = 0;
  bool small_exponent = false;  // 0 < p < 1: outside the norm range

  /// Schatten p-norm of the adjacency matrix.
  double schatten_norm() const { return std::pow(e_total, 1.0 / p); }
};

inline void check_exponent(double p) {
  if (!(p > 0.0) || p > kMaxExponent) {
    throw Error(Errc::invalid_parameter, "exponent p = " + std::to_string(p) + " outside (0, 64]");
  }
}

inline EnergyReport p_energy(const Spectrum& s, double p) {
  check_exponent(p);
  EnergyReport r;
  r.p = p;
  r.small_exponent = p < 1.0;
  CompensatedSum plus;
  CompensatedSum minus;
  for (double x : s.values) {
    if (x > s.tol) {
      plus += power(x, p);
      ++r.positive;
    } else if (x < -s.tol) {
      minus += power(-x, p);
      ++r.negative;
    } else {
      ++r.zero;
    }
  }
  r.e_plus = plus.value();
  r.e_minus = minus.value();
  r.e_total = r.e_plus + r.e_minus;
  return r;
}

inline EnergyReport p_energy(const Graph& g, double p) { return p_energy(eigenvalues(g), p); }

// ---------------------------------------------------------------------------
// Majorization
// ---------------------------------------------------------------------------

namespace detail {

// Returns false if some prefix sum of sorted y falls below that of sorted x
// by more than the tolerance; sets total_gap to sum(y) - sum(x).
inline bool prefix_dominates(std::span<const double> y, std::span<const double> x, double& total_gap,
                             double& tolerance) {
  if (y.size() != x.size()) {
    throw Error(Errc::length_mismatch,
                "vectors of length " + std::to_string(y.size()) + " and " + std::to_string(x.size()));
  }
  std::vector<double> ys(y.begin(), y.end());
  std::vector<double> xs(x.begin(), x.end());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  double magnitude = 0.0;
  for (double v : ys) magnitude = std::max(magnitude, std::abs(v));
  for (double v : xs) magnitude = std::max(magnitude, std::abs(v));
  tolerance = 1e-9 * (1.0 + magnitude);

  CompensatedSum sy;
  CompensatedSum sx;
  bool ok = true;
  for (std::size_t t = 0; t < ys.size(); ++t) {
    sy += ys[t];
    sx += xs[t];
    if (sy.value() < sx.value() - tolerance) ok = false;
  }
  total_gap = sy.value() - sx.value();
  return ok;
}

}  // namespace detail

/// y weakly majorizes x: every prefix sum of y (sorted descending) is at
/// least the matching prefix sum of x.
inline bool weakly_majorizes(std::span<const double> y, std::span<const double> x) {
  double gap = 0.0;
  double tol = 0.0;
  return detail::prefix_dominates(y, x, gap, tol);
}

/// Weak majorization plus equal totals.
inline bool majorizes(std::span<const double> y, std::span<const double> x) {
  double gap = 0.0;
  double tol = 0.0;
  const bool weak = detail::prefix_dominates(y, x, gap, tol);
  return weak && std::abs(gap) <= tol;
}

// ---------------------------------------------------------------------------
// Interlacing
// ---------------------------------------------------------------------------

inline double interlacing_tolerance(const Spectrum& a, const Spectrum& b) {
  return 1e-9 * (1.0 + std::max(a.radius, b.radius));
}

/// Edge interlacing for H = G - e (lambda of G, theta of H, 1-based):
/// lambda_{i-1} >= theta_i >= lambda_{i+1} for 2 <= i <= n-1,
/// theta_1 >= lambda_2 and theta_n <= lambda_{n-1}.
inline bool edge_interlaces(const Spectrum& lambda, const Spectrum& theta) {
  const std::size_t n = lambda.size();
  if (theta.size() != n || n < 3) throw Error(Errc::length_mismatch, "edge interlacing needs equal orders >= 3");
  const double tol = interlacing_tolerance(lambda, theta);
  auto l = [&](std::size_t i) { return lambda.at1(i); };
  auto t = [&](std::size_t i) { return theta.at1(i); };
  for (std::size_t i = 2; i <= n - 1; ++i) {
    if (l(i - 1) < t(i) - tol || t(i) < l(i + 1) - tol) return false;
  }
  return t(1) >= l(2) - tol && t(n) <= l(n - 1) + tol;
}

inline bool check_edge_interlacing(const Graph& g, Edge e) {
  if (g.order() < 3) throw Error(Errc::precondition, "edge interlacing needs n >= 3");
  if (!g.has_edge(e)) throw Error(Errc::edge_absent, "edge interlacing needs e in G");
  return edge_interlaces(eigenvalues(g), eigenvalues(g.remove_edge(e)));
}

/// Vertex interlacing for H = G - v: lambda_i >= theta_i >= lambda_{i+1}.
inline bool vertex_interlaces(const Spectrum& lambda, const Spectrum& theta) {
  const std::size_t n = lambda.size();
  if (theta.size() + 1 != n) throw Error(Errc::length_mismatch, "vertex interlacing needs orders n and n-1");
  const double tol = interlacing_tolerance(lambda, theta);
  for (std::size_t i = 1; i <= n - 1; ++i) {
    if (lambda.at1(i) < theta.at1(i) - tol || theta.at1(i) < lambda.at1(i + 1) - tol) return false;
  }
  return true;
}

inline bool check_vertex_interlacing(const Graph& g, int v) {
  if (g.order() < 2) throw Error(Errc::precondition, "vertex interlacing needs n >= 2");
  g.check_vertex(v);
  return vertex_interlaces(eigenvalues(g), eigenvalues(g.remove_vertex(v)));
}

/// theta(desc) - lambda(desc), the vector the Lidskii inequality compares
/// against the spectrum of the removed edge (1, 0, ..., 0, -1).
inline std::vector<double> spectral_shift(const Spectrum& lambda, const Spectrum& theta) {
  if (lambda.size() != theta.size()) throw Error(Errc::length_mismatch, "spectra of different orders");
  std::vector<double> out(lambda.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = theta[i] - lambda[i];
  return out;
}

inline std::vector<double> single_edge_spectrum(std::size_t n) {
  std::vector<double> out(n, 0.0);
  if (n >= 2) {
    out.front() = 1.0;
    out.back() = -1.0;
  }
  return out;
}

}  // namespace penergy
