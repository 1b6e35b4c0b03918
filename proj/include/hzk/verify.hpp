#pragma once

#include <cstdint>
#include <string>

#include "hzk/json_io.hpp"
#include "hzk/report.hpp"

namespace hzk {

// Named verification suites. Every check is exact rational arithmetic; a
// failing check carries a serialized counterexample. Parameters default to
// the pinned acceptance settings.
struct SuiteOptions {
  uint64_t seed = 1;
  int level = 8;             // maximum series truncation
  std::string lambda;        // restrict to one weight when non-empty
  std::string ctx;           // restrict to one coefficient context
  std::string instance;      // restrict to one base-category instance
  int bound = -1;            // override the per-instance bound when >= 0
  int trials = 200;          // random pairs per weight/context cell
};

Report verify_hurwitz(const SuiteOptions& opt);
Report verify_interp(const SuiteOptions& opt);
Report verify_rotabaxter(const SuiteOptions& opt);
Report verify_comonad(const SuiteOptions& opt);
Report verify_coalgebra(const SuiteOptions& opt);
Report verify_species(const SuiteOptions& opt);
Report verify_doldkan(const SuiteOptions& opt);
Report verify_bridge(const SuiteOptions& opt);
Report verify_suite(const std::string& name, const SuiteOptions& opt);

// Thrown for malformed requests and invalid input data (exit code 2).
struct BadRequest : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Executes one request (a CLI invocation in JSON form) and returns the
// response document. Identity failures are reported in the response, not
// thrown; status() on the response distinguishes them.
Json run_request(const Json& request);
int response_status(const Json& response);  // 0 pass, 1 failed identities

}  // namespace hzk
