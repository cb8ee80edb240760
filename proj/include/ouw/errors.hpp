#pragma once
#include <stdexcept>
#include <string>

namespace ouw {

// a path point (or both ends of a step) sits below the numerical origin floor
struct ZeroPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// adaptive integration could not reach the requested tolerance
struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Euler step exceeds the stability guard 0.1/max(lambda,1)
struct StepTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// bridge refinement requested on a path kind that has no exact bridge
struct UnsupportedKind : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// guard angle could not be met within the maximum refinement depth;
// callers discard the path and count it
struct RefinementExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a jump chord passes through the numerical origin (a.s. null event)
struct SegmentThroughOrigin : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a sampler hit its horizon cap before producing the requested draw
struct CensoredDraw : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ouw
