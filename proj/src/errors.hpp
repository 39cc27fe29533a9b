#pragma once

#include <stdexcept>
#include <string>

namespace lorcomp {

// Error categories shared with the C API (values mirror lorcomp_status).
enum class Err {
  InvalidArgument = 1,   // bad parameters, non-chronological vertex order, ...
  Config = 2,            // malformed or unknown space configuration
  Invariant = 3,         // loaded data violates a structural invariant
  UnknownPoint = 4,      // point not present in a tabulated space
  NoCurve = 5,           // maximizer requested for a non-causal pair
  OutOfChart = 6,        // model-space cover restriction violated
  SizeBounds = 7,        // side lengths not realizable for the curvature
  Infeasible = 8,        // lengths do not form a hinge (cosh(phi) < 1)
  EmptySample = 9,       // region produced no admissible triangles
  InvalidCurve = 10,     // polyline with a non-causal consecutive pair
  Internal = 11,
};

class LorError : public std::runtime_error {
 public:
  LorError(Err code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw LorError(code, what);
}

}  // namespace lorcomp
