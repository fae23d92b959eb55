#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "xgeom/measures.hpp"
#include "xgeom/state.hpp"

namespace xgeom::cli {

// Malformed input document or unreadable/unwritable file (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density matrix described by a state document:
///   {"schema": 1, "matrix": [[[re, im], ...] x4]}
///   {"schema": 1, "family": "werner", "params": {"k": 1, "q": 0.5}}
/// Families: bell (k), werner (k, q), bell_mixture (b), generalized_werner
/// (q_vec, s), x_state (populations, x, theta, y, phi).
DensityMatrix state_from_json(const nlohmann::json& doc, const Tolerances& tol = {});

nlohmann::json report_to_json(const MeasureReport& rep);

/// Entry point behind the xgeom executable. Returns the process exit code:
/// 0 success, 1 invalid state or parameters, 2 malformed input or I/O.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xgeom::cli
