#ifndef SYMSPEC_ERRORS_HPP
#define SYMSPEC_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace symspec {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ProviderError : Error {
  long index;
  ProviderError(long k, const std::string& what)
      : Error("coefficient provider failed at k=" + std::to_string(k) + ": " + what),
        index(k) {}
};

struct StructureError : Error {
  using Error::Error;
};

struct PropagationError : Error {
  using Error::Error;
};

struct OverflowError : Error {
  long index;
  explicit OverflowError(long k)
      : Error("solution overflow at k=" + std::to_string(k)), index(k) {}
};

struct SingularBoundary : Error {
  std::complex<double> lambda;
  long index;
  SingularBoundary(std::complex<double> la, long n)
      : Error("beta * Ztilde_N singular (finite-section eigenvalue) at N=" +
              std::to_string(n)),
        lambda(la),
        index(n) {}
};

struct DegenerateSystem : Error {
  using Error::Error;
};

struct NotConverged : Error {
  using Error::Error;
};

struct NotIsolated : Error {
  using Error::Error;
};

struct BadInput : Error {
  using Error::Error;
};

struct BadModel : Error {
  long index;
  BadModel(long k, const std::string& what)
      : Error("bad model at k=" + std::to_string(k) + ": " + what), index(k) {}
};

struct InconsistentResidue : Error {
  using Error::Error;
};

struct PoleError : Error {
  using Error::Error;
};

struct PoleOfTransform : Error {
  using Error::Error;
};

}  // namespace symspec

#endif
