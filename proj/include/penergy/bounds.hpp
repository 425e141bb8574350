#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>

#include "penergy/error.hpp"
#include "penergy/graph.hpp"
#include "penergy/spectra.hpp"

namespace penergy {

enum class Side { plus, minus };

inline std::string_view to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

inline Side parse_side(std::string_view s) {
  if (s == "plus" || s == "+") return Side::plus;
  if (s == "minus" || s == "-") return Side::minus;
  throw Error(Errc::invalid_parameter, "side must be plus or minus");
}

enum class Verdict { pass, fail, not_applicable };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

/// One instance of an edge-removal lower bound E^{+/-}_p(G) >= bound(H).
struct BoundCheck {
  Edge edge;
  Side side = Side::plus;
  double p = 2.0;
  double bound = 0.0;
  double actual = 0.0;
  double slack = 0.0;
  bool preconditions_met = false;
  double theta = 0.0;  // theta_2 (plus side) or theta_n (minus side) of H
  int h_positive = 0;
  int h_negative = 0;
  Verdict verdict = Verdict::not_applicable;
};

/// Slack allowance before a bound instance counts as violated.
inline double bound_tolerance(double actual) { return 1e-7 * (1.0 + std::abs(actual)); }

namespace detail {

struct EdgeRemoval {
  Spectrum lambda;  // G
  Spectrum theta;   // H = G - e
};

inline EdgeRemoval edge_removal(const Graph& g, Edge e, double p) {
  check_exponent(p);
  if (p < 1.0) throw Error(Errc::invalid_parameter, "edge bounds need p >= 1");
  if (!g.has_edge(e)) throw Error(Errc::edge_absent, "bound needs e in G");
  // Both spectra are solved independently.
  return {eigenvalues(g), eigenvalues(g.remove_edge(e))};
}

template <typename Correction>
BoundCheck make_check(const EdgeRemoval& r, Edge e, Side side, double p, Correction correction) {
  BoundCheck c;
  c.edge = e;
  c.side = side;
  c.p = p;
  c.h_positive = r.theta.positive_count();
  c.h_negative = r.theta.negative_count();
  c.preconditions_met = c.h_positive >= 2 && c.h_negative >= 2;
  const EnergyReport eh = p_energy(r.theta, p);
  const EnergyReport eg = p_energy(r.lambda, p);
  const std::size_t n = r.theta.size();
  c.theta = side == Side::plus ? (n >= 2 ? r.theta[1] : 0.0) : r.theta[n - 1];
  const double base = side == Side::plus ? eh.e_plus : eh.e_minus;
  c.bound = base + correction(c.theta);
  c.actual = side == Side::plus ? eg.e_plus : eg.e_minus;
  c.slack = c.actual - c.bound;
  if (c.preconditions_met) {
    c.verdict = c.slack >= -bound_tolerance(c.actual) ? Verdict::pass : Verdict::fail;
  }
  return c;
}

}  // namespace detail

/// E_p^+(G) >= E_p^+(H) + max{theta_2 - 1, 0}^p - theta_2^p and
/// E_p^-(G) >= E_p^-(H) + max{-theta_n - 1, 0}^p - |theta_n|^p,
/// valid when H = G - e has at least two positive and two negative eigenvalues.
inline BoundCheck edge_bound_p(const Graph& g, Edge e, double p, Side side) {
  const auto r = detail::edge_removal(g, e, p);
  return detail::make_check(r, e, side, p, [&](double theta) {
    const double t = side == Side::plus ? theta : -theta;
    return power(std::max(t - 1.0, 0.0), p) - power(std::abs(t), p);
  });
}

/// Piecewise p = 2 form of edge_bound_p.
inline BoundCheck edge_bound_square(const Graph& g, Edge e, Side side) {
  const auto r = detail::edge_removal(g, e, 2.0);
  return detail::make_check(r, e, side, 2.0, [&](double theta) {
    if (side == Side::plus) return theta < 1.0 ? -theta * theta : -2.0 * theta + 1.0;
    return theta > -1.0 ? -theta * theta : 2.0 * theta + 1.0;
  });
}

/// The earlier second-order bound s^+(G) >= s^+(H) - theta_2^2,
/// s^-(G) >= s^-(H) - theta_n^2.
inline BoundCheck abiad_bound_square(const Graph& g, Edge e, Side side) {
  const auto r = detail::edge_removal(g, e, 2.0);
  return detail::make_check(r, e, side, 2.0, [](double theta) { return -theta * theta; });
}

struct HongCheck {
  double s_plus = 0.0;
  double s_minus = 0.0;
  double margin = 0.0;  // min(s_plus, s_minus) - (n - 1)

  bool holds() const { return margin >= -1e-7; }
};

inline HongCheck hong_extension_check(const Spectrum& s) {
  const EnergyReport r = p_energy(s, 2.0);
  return {r.e_plus, r.e_minus, std::min(r.e_plus, r.e_minus) - static_cast<double>(s.size() - 1)};
}

/// min{s^+(G), s^-(G)} against n - 1 for a connected graph.
inline HongCheck hong_extension_check(const Graph& g) {
  if (!is_connected(g)) throw Error(Errc::disconnected, "square-energy threshold needs a connected graph");
  return hong_extension_check(eigenvalues(g));
}

}  // namespace penergy
