#pragma once

#include <stdexcept>
#include <string>

namespace penergy {

enum class Errc {
  invalid_parameter,
  edge_present,
  edge_absent,
  empty_graph,
  vertex_out_of_range,
  malformed_byte,
  wrong_length,
  oversize_n,
  length_mismatch,
  precondition,
  not_equitable,
  non_real_eigenvalue,
  disconnected,
  internal,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::edge_present: return "edge-already-present";
    case Errc::edge_absent: return "edge-absent";
    case Errc::empty_graph: return "empty-graph";
    case Errc::vertex_out_of_range: return "vertex-out-of-range";
    case Errc::malformed_byte: return "malformed-byte";
    case Errc::wrong_length: return "wrong-length";
    case Errc::oversize_n: return "oversize-n";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::precondition: return "precondition";
    case Errc::not_equitable: return "not-equitable";
    case Errc::non_real_eigenvalue: return "non-real-eigenvalue";
    case Errc::disconnected: return "disconnected";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace penergy
