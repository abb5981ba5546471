#pragma once
#include <stdexcept>
#include <string>

namespace polyvf {

enum class ErrorKind {
  InvalidArgument,  // malformed input, usage
  Inconclusive,     // tracing could not decide a fate
  InvalidDataSet,   // data set fails validation
  Realization,      // realizer could not converge
  Numeric,          // root finder or quadrature failure
  Inconsistent,     // numerical topology disagrees with theory
  Unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace polyvf
