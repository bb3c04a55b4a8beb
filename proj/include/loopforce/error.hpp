#ifndef LOOPFORCE_ERROR_HPP
#define LOOPFORCE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace loopforce {

// Categories mirror the status codes of the C API one-to-one.
enum class ErrorCode {
  InvalidArgument = 1,
  Curve,           // malformed, non-regular, self-intersecting or clockwise curve
  Excision,        // core ball cannot be cut out cleanly
  Singular,        // kernel or segment evaluated at its singularity
  NonConvergence,  // adaptive quadrature failed to reach tolerance
  Mesh,            // polygon violates regularity, too coarse, degenerate stencil
  Io,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the adaptive integrator; keeps the best estimate around for callers
// that want to report it.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(ErrorCode::NonConvergence, what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace loopforce

#endif  // LOOPFORCE_ERROR_HPP
