#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penergy/penergy.hpp"

namespace penergy::cli {

using Json = nlohmann::ordered_json;

struct CommandResult {
  int exit_code = 0;  // 0 ok / no violations, 1 violations found, 2 usage or input error
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;

/// 12 significant digits, "-0" folded to "0".
inline std::string num(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json num_array(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

/// Eigenvalues with the ones classified as zero printed as "0".
inline Json spectrum_array(const Spectrum& s) {
  Json a = Json::array();
  for (double x : s.values) a.push_back(num(std::abs(x) <= s.tol ? 0.0 : x));
  return a;
}

inline std::vector<int> parse_int_list(const std::string& text, char sep = ',') {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(Errc::invalid_parameter, "not an integer: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

inline std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(Errc::invalid_parameter, "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::invalid_parameter, "empty number list");
  return out;
}

/// "kind:params", e.g. "double_star_complement:5,5" or "path:4".
inline Graph parse_family_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::invalid_parameter, "family must be kind:params");
  return make_family(parse_family(text.substr(0, colon)), parse_int_list(text.substr(colon + 1)));
}

/// "n:u-v,u-v,..." edge list.
inline Graph parse_edge_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::invalid_parameter, "edges must be n:u-v,...");
  const auto n = parse_int_list(text.substr(0, colon));
  if (n.size() != 1) throw Error(Errc::invalid_parameter, "bad vertex count");
  std::vector<Edge> edges;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto uv = parse_int_list(item, '-');
    if (uv.size() != 2) throw Error(Errc::invalid_parameter, "bad edge '" + item + "'");
    edges.emplace_back(uv[0], uv[1]);
  }
  return Graph(n[0], edges);
}

inline Json edge_json(Edge e) { return Json::array({e.u, e.v}); }

inline Json instance_json(const Instance& inst) {
  Json j;
  j["graph6"] = inst.graph6;
  j["p"] = num(inst.p);
  j["edge"] = inst.edge ? edge_json(*inst.edge) : Json(nullptr);
  j["value"] = num(inst.value);
  j["reference"] = num(inst.reference);
  j["margin"] = num(inst.margin);
  return j;
}

inline Json bound_json(const std::string& g6, const BoundCheck& c) {
  Json j;
  j["graph6"] = g6;
  j["edge"] = edge_json(c.edge);
  j["p"] = num(c.p);
  j["side"] = std::string(to_string(c.side));
  j["bound"] = num(c.bound);
  j["actual"] = num(c.actual);
  j["slack"] = num(c.slack);
  j["preconditions_met"] = c.preconditions_met;
  j["verdict"] = std::string(to_string(c.verdict));
  j[c.side == Side::plus ? "theta_2" : "theta_n"] = num(c.theta);
  j["h_positive"] = c.h_positive;
  j["h_negative"] = c.h_negative;
  return j;
}

inline std::string closed_entry_text(const ClosedEntry& e) {
  return e.value.to_string() + " (×" + std::to_string(e.multiplicity) + ")";
}

// Everything below writes one payload to `out` and returns the exit code.
class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, std::istream& in) : out_(out), err_(err), in_(in) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Positive and negative p-energies of graphs", "penergy"};
    app.require_subcommand(1);
    bool csv = false;
    app.add_flag("--csv", csv, "CSV instead of JSON");

    // Graph selection shared by spectrum / energy / bound / encode.
    std::string graph6;
    std::string family;
    std::string edges;
    auto add_graph_options = [&](CLI::App* sub) {
      sub->add_option("--graph6", graph6, "graph6 record");
      sub->add_option("--family", family, "kind:params, e.g. double_star_complement:5,5");
      sub->add_option("--edges", edges, "n:u-v,u-v,...");
      sub->add_flag("--csv", csv, "CSV instead of JSON");
    };

    auto* spectrum = app.add_subcommand("spectrum", "adjacency eigenvalues");
    add_graph_options(spectrum);

    double p = 2.0;
    auto* energy = app.add_subcommand("energy", "positive/negative p-energies");
    add_graph_options(energy);
    energy->add_option("--p", p, "exponent");

    std::string edge_text;
    std::string side_text = "plus";
    bool abiad = false;
    auto* bound = app.add_subcommand("bound", "edge-removal lower bound");
    add_graph_options(bound);
    bound->add_option("--edge", edge_text, "u,v (an edge of the graph)")->required();
    bound->add_option("--p", p, "exponent (>= 1)");
    bound->add_option("--side", side_text, "plus|minus");
    bound->add_flag("--abiad", abiad, "compare with the second-order bound (p = 2)");

    std::string kind;
    int n = 0;
    bool closed = false;
    auto* fam = app.add_subcommand("family", "named family spectra");
    fam->add_option("--kind", kind, "snn|snn_plus|path|star|complete")->required();
    fam->add_option("--n", n, "family parameter")->required();
    fam->add_flag("--closed", closed, "closed-form spectrum");
    fam->add_flag("--csv", csv, "CSV instead of JSON");

    int nmax = 100;
    double floor = 1e-12;
    std::optional<int> single_n;
    auto* gap = app.add_subcommand("gap", "edge-addition gap f(n) on the double star complement");
    gap->add_option("--p", p, "exponent (>= 1)")->required();
    gap->add_option("--nmax", nmax, "sweep limit");
    gap->add_option("--n", single_n, "report f at a single n");
    gap->add_option("--floor", floor, "relative positivity floor");
    gap->add_flag("--csv", csv, "CSV rows n,p,f,lambda1,lambda2,theta1,theta2,theta3");

    std::string p_list = "2";
    std::string input;
    int jobs = 1;
    bool full = false;
    bool lenient = false;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    auto* ver = app.add_subcommand("verify", "exhaustive inequality scan");
    ver->add_option("--kind", kind, "hong|sq_monotone|path_lower|tree_extremal|even_floor|properties")->required();
    ver->add_option("--n", n, "order for internal enumeration");
    ver->add_option("--p", p_list, "comma-separated exponents");
    ver->add_option("--input", input, "graph6 file, or - for standard input");
    ver->add_option("--jobs", jobs, "worker threads");
    ver->add_flag("--full", full, "emit every instance");
    ver->add_flag("--lenient", lenient, "skip malformed graph6 records");
    auto* samples_opt = ver->add_option("--samples", samples, "random samples (properties only)");
    auto* seed_opt = ver->add_option("--seed", seed, "random seed (properties only)");
    ver->add_flag("--csv", csv, "CSV instead of JSON");

    auto* trees = app.add_subcommand("trees", "extremal p-energy trees");
    trees->add_option("--n", n, "tree order")->required();
    trees->add_option("--p", p, "exponent")->required();

    auto* encode = app.add_subcommand("encode", "write a graph as graph6");
    add_graph_options(encode);

    auto* decode = app.add_subcommand("decode", "read graph6 records");
    decode->add_option("--graph6", graph6, "graph6 record (default: standard input)");

    std::vector<const char*> argv{"penergy"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << app.help();
      return kExitUsage;
    }

    try {
      if (*spectrum) return cmd_spectrum(load_graph(graph6, family, edges), csv);
      if (*energy) return cmd_energy(load_graph(graph6, family, edges), p, csv);
      if (*bound) {
        const auto uv = parse_int_list(edge_text);
        if (uv.size() != 2) throw Error(Errc::invalid_parameter, "--edge takes u,v");
        return cmd_bound(load_graph(graph6, family, edges), Edge(uv[0], uv[1]), p, parse_side(side_text), abiad,
                         csv);
      }
      if (*fam) return cmd_family(kind, n, closed, csv);
      if (*gap) return cmd_gap(p, nmax, single_n, floor, csv);
      if (*ver) {
        if (kind == "properties") return cmd_properties(n, samples, seed);
        if (samples_opt->count() > 0 || seed_opt->count() > 0) {
          throw Error(Errc::invalid_parameter, "--samples/--seed apply only to --kind properties");
        }
        return cmd_verify(kind, n, p_list, input, jobs, full, lenient, csv);
      }
      if (*trees) return cmd_trees(n, p);
      if (*encode) {
        out_ << encode_graph6(load_graph(graph6, family, edges)) << "\n";
        return kExitOk;
      }
      if (*decode) return cmd_decode(graph6);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    err_ << app.help();
    return kExitUsage;
  }

 private:
  static Graph load_graph(const std::string& graph6, const std::string& family, const std::string& edges) {
    const int given = !graph6.empty() + !family.empty() + !edges.empty();
    if (given != 1) throw Error(Errc::invalid_parameter, "give exactly one of --graph6, --family, --edges");
    if (!graph6.empty()) return decode_graph6(graph6);
    if (!family.empty()) return parse_family_spec(family);
    return parse_edge_spec(edges);
  }

  void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

  static Json header(const char* command) {
    Json j;
    j["schema"] = std::string("penergy.") + command + "/1";
    return j;
  }

  int cmd_spectrum(const Graph& g, bool csv) {
    const Spectrum s = eigenvalues(g);
    if (csv) {
      out_ << "index,eigenvalue\n";
      const Json values = spectrum_array(s);
      for (std::size_t i = 0; i < s.size(); ++i) out_ << i + 1 << "," << values[i].get<std::string>() << "\n";
      return kExitOk;
    }
    Json j = header("spectrum");
    j["graph6"] = encode_graph6(g);
    j["n"] = g.order();
    j["m"] = g.size();
    j["eigenvalues"] = spectrum_array(s);
    j["radius"] = num(s.radius);
    j["tol"] = num(s.tol);
    j["positive"] = s.positive_count();
    j["zero"] = s.zero_count();
    j["negative"] = s.negative_count();
    emit(j);
    return kExitOk;
  }

  int cmd_energy(const Graph& g, double p, bool csv) {
    const EnergyReport r = p_energy(g, p);
    if (r.small_exponent) err_ << "warning: p < 1 is outside the Schatten norm range\n";
    if (csv) {
      out_ << "graph6,p,e_plus,e_minus,e_total\n"
           << encode_graph6(g) << "," << num(p) << "," << num(r.e_plus) << "," << num(r.e_minus) << ","
           << num(r.e_total) << "\n";
      return kExitOk;
    }
    Json j = header("energy");
    j["graph6"] = encode_graph6(g);
    j["p"] = num(p);
    j["e_plus"] = num(r.e_plus);
    j["e_minus"] = num(r.e_minus);
    j["e_total"] = num(r.e_total);
    j["schatten_norm"] = num(r.schatten_norm());
    j["positive"] = r.positive;
    j["zero"] = r.zero;
    j["negative"] = r.negative;
    emit(j);
    return kExitOk;
  }

  int cmd_bound(const Graph& g, Edge e, double p, Side side, bool abiad, bool csv) {
    const std::string g6 = encode_graph6(g);
    std::vector<Json> rows;
    if (abiad) {
      if (p != 2.0) throw Error(Errc::invalid_parameter, "--abiad compares square energies; use --p 2");
      const BoundCheck improved = edge_bound_square(g, e, side);
      const BoundCheck older = abiad_bound_square(g, e, side);
      Json j = bound_json(g6, improved);
      j["abiad_bound"] = num(older.bound);
      j["improvement"] = num(improved.bound - older.bound);
      rows.push_back(j);
    } else {
      rows.push_back(bound_json(g6, edge_bound_p(g, e, p, side)));
    }
    if (csv) {
      out_ << "graph6,edge,p,side,bound,actual,slack,preconditions_met\n";
      for (const Json& j : rows) {
        out_ << g6 << "," << e.u << "-" << e.v << "," << j["p"].get<std::string>() << ","
             << j["side"].get<std::string>() << "," << j["bound"].get<std::string>() << ","
             << j["actual"].get<std::string>() << "," << j["slack"].get<std::string>() << ","
             << (j["preconditions_met"].get<bool>() ? "true" : "false") << "\n";
      }
      return kExitOk;
    }
    Json j = header("bound");
    for (auto& [key, value] : rows.front().items()) j[key] = value;
    emit(j);
    return kExitOk;
  }

  int cmd_family(const std::string& kind, int n, bool closed, bool csv) {
    const ClosedKind k = parse_closed_kind(kind);
    const Graph g = closed_kind_graph(k, n);
    const Spectrum s = eigenvalues(g);
    if (csv) {
      out_ << "index,eigenvalue\n";
      const Json values = spectrum_array(s);
      for (std::size_t i = 0; i < s.size(); ++i) out_ << i + 1 << "," << values[i].get<std::string>() << "\n";
      return kExitOk;
    }
    Json j = header("family");
    j["kind"] = kind;
    j["n"] = n;
    j["graph6"] = encode_graph6(g);
    j["order"] = g.order();
    j["m"] = g.size();
    j["eigenvalues"] = spectrum_array(s);
    if (closed) {
      const ClosedSpectrum cs = closed_spectrum(k, n);
      Json entries = Json::array();
      for (const auto& e : cs.entries) entries.push_back(closed_entry_text(e));
      j["closed"] = entries;
      j["closed_numeric"] = num_array(cs.numeric);
      bool matches = s.size() == cs.numeric.size();
      for (std::size_t i = 0; matches && i < s.size(); ++i) matches = std::abs(s[i] - cs.numeric[i]) <= 1e-8;
      j["closed_matches"] = matches;
    }
    emit(j);
    return kExitOk;
  }

  int cmd_gap(double p, int nmax, std::optional<int> single_n, double floor, bool csv) {
    auto report_json = [&](const GapReport& r) {
      Json j;
      j["n"] = r.n;
      j["p"] = num(r.p);
      j["f"] = num(r.f);
      j["lambda1"] = num(r.lambda1);
      j["lambda2"] = num(r.lambda2);
      j["theta1"] = num(r.theta1);
      j["theta2"] = num(r.theta2);
      j["theta3"] = num(r.theta3);
      return j;
    };
    if (csv) {
      out_ << "n,p,f,lambda1,lambda2,theta1,theta2,theta3\n";
      const int lo = single_n ? *single_n : 3;
      const int hi = single_n ? *single_n : nmax;
      for (int k = lo; k <= hi; ++k) {
        const GapReport r = gap_f(k, p);
        out_ << r.n << "," << num(r.p) << "," << num(r.f) << "," << num(r.lambda1) << "," << num(r.lambda2) << ","
             << num(r.theta1) << "," << num(r.theta2) << "," << num(r.theta3) << "\n";
      }
      return kExitOk;
    }
    if (single_n) {
      Json j = header("gap");
      for (auto& [key, value] : report_json(gap_f(*single_n, p)).items()) j[key] = value;
      emit(j);
      return kExitOk;
    }
    const GapThreshold t = gap_threshold(p, nmax, floor);
    Json j = header("gap");
    j["p"] = num(p);
    j["nmax"] = nmax;
    j["floor"] = num(floor);
    j["n0"] = t.n0 ? Json(*t.n0) : Json(nullptr);
    Json runs = Json::array();
    std::size_t start = 0;
    for (std::size_t i = 1; i <= t.trace.size(); ++i) {
      if (i == t.trace.size() || t.trace[i].second != t.trace[start].second) {
        runs.push_back({{"from", t.trace[start].first}, {"to", t.trace[i - 1].first}, {"sign", t.trace[start].second}});
        start = i;
      }
    }
    j["trace"] = runs;
    emit(j);
    return kExitOk;
  }

  int cmd_verify(const std::string& kind, int n, const std::string& p_list, const std::string& input, int jobs,
                 bool full, bool lenient, bool csv) {
    ConjectureSpec spec;
    spec.kind = parse_conjecture_kind(kind);
    spec.p_values = parse_real_list(p_list);
    if (spec.kind == ConjectureKind::hong) spec.p_values = {2.0};
    spec.n = input.empty() ? n : std::max(n, 1);
    spec.source = input.empty() ? Source::internal_enumeration : Source::graph6_stream;
    if (jobs < 1) throw Error(Errc::invalid_parameter, "--jobs must be >= 1");
    VerifyOptions opt;
    opt.jobs = jobs;
    opt.full = full;
    opt.mode = lenient ? Graph6Reader::Mode::lenient : Graph6Reader::Mode::strict;

    VerificationReport r;
    if (input.empty()) {
      r = verify(spec, nullptr, opt);
    } else if (input == "-") {
      r = verify(spec, &in_, opt);
    } else {
      std::ifstream file(input);
      if (!file) throw Error(Errc::invalid_parameter, "cannot open " + input);
      r = verify(spec, &file, opt);
    }
    err_ << "checked " << r.graphs_checked << " graphs, " << r.instances << " instances in " << num(r.seconds)
         << " s with " << r.jobs << " job(s)\n";

    if (csv) {
      out_ << "graph6,p,edge,value,reference,margin\n";
      for (const Instance& inst : full ? r.rows : r.violations) {
        out_ << inst.graph6 << "," << num(inst.p) << ","
             << (inst.edge ? std::to_string(inst.edge->u) + "-" + std::to_string(inst.edge->v) : "") << ","
             << num(inst.value) << "," << num(inst.reference) << "," << num(inst.margin) << "\n";
      }
      return r.clean() ? kExitOk : kExitViolations;
    }
    Json j = header("verify");
    Json s;
    s["kind"] = kind;
    s["n"] = spec.source == Source::internal_enumeration ? Json(spec.n) : Json(nullptr);
    s["p"] = num_array(spec.p_values);
    s["source"] = spec.source == Source::internal_enumeration ? "internal-enumeration" : "graph6-stream";
    j["spec"] = s;
    j["graphs_checked"] = r.graphs_checked;
    j["graphs_skipped"] = r.graphs_skipped;
    j["instances"] = r.instances;
    j["tight"] = r.tight;
    j["status"] = r.clean() ? "no-counterexample-found" : "violations-found";
    Json v = Json::array();
    for (const Instance& inst : r.violations) v.push_back(instance_json(inst));
    j["violations"] = v;
    j["min_margin"] = r.min_instance ? Json(num(r.min_instance->margin)) : Json(nullptr);
    j["argmin"] = r.min_instance ? instance_json(*r.min_instance) : Json(nullptr);
    if (full) {
      Json rows = Json::array();
      for (const Instance& inst : r.rows) rows.push_back(instance_json(inst));
      j["rows"] = rows;
    }
    emit(j);
    return r.clean() ? kExitOk : kExitViolations;
  }

  int cmd_properties(int n, std::size_t samples, std::uint64_t seed) {
    const PropertySample s = sample_spectral_properties(n, samples, seed);
    Json j = header("properties");
    j["n"] = n;
    j["samples"] = s.samples;
    j["seed"] = seed;
    j["edge_interlacing_failures"] = s.edge_interlacing_failures;
    j["vertex_interlacing_failures"] = s.vertex_interlacing_failures;
    j["lidskii_failures"] = s.lidskii_failures;
    j["perron_failures"] = s.perron_failures;
    j["trace_failures"] = s.trace_failures;
    j["failing_graph6"] = s.failing_graph6;
    emit(j);
    return s.failures() == 0 ? kExitOk : kExitViolations;
  }

  int cmd_trees(int n, double p) {
    const TreeExtremalReport r = tree_extremal(n, p);
    Json j = header("trees");
    j["n"] = r.n;
    j["p"] = num(r.p);
    j["trees"] = r.trees;
    j["t_p_min"] = num(r.t_p_min);
    j["argmin"] = r.argmin;
    j["t_p_max"] = num(r.t_p_max);
    j["argmax"] = r.argmax;
    emit(j);
    return kExitOk;
  }

  int cmd_decode(const std::string& graph6) {
    Json graphs = Json::array();
    auto add = [&](const std::string& text, const Graph& g) {
      Json e = Json::array();
      for (const Edge& edge : g.edges()) e.push_back(edge_json(edge));
      graphs.push_back({{"graph6", text}, {"n", g.order()}, {"m", g.size()}, {"edges", e}});
    };
    if (!graph6.empty()) {
      add(graph6, decode_graph6(graph6));
    } else {
      Graph6Reader reader(in_);
      while (auto rec = reader.next()) add(rec->text, rec->graph);
    }
    Json j = header("decode");
    j["graphs"] = graphs;
    emit(j);
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::istream& in_;
};

/// Runs one command line (without the program name).
inline CommandResult run(const std::vector<std::string>& args, std::ostream& out = std::cout,
                         std::ostream& err = std::cerr, std::istream& in = std::cin) {
  return {Runner(out, err, in).run(args)};
}

}  // namespace penergy::cli
