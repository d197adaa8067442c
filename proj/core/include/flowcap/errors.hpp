#ifndef FLOWCAP_ERRORS_HPP
#define FLOWCAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flowcap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// A flow left its domain of definition (finite-time blow-up family).
struct FlowDomainError : Error {
  explicit FlowDomainError(const std::string& msg, int leg = -1)
      : Error(msg), leg_index(leg) {}
  int leg_index;  // -1 when not raised inside a program
};

struct PoleReached : FlowDomainError {
  using FlowDomainError::FlowDomainError;
};

struct BlowUpGuard : FlowDomainError {
  using FlowDomainError::FlowDomainError;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct EmptyBox : Error {
  using Error::Error;
};

struct NonPositiveError : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& msg, double best)
      : Error(msg), best_residual(best) {}
  double best_residual;
};

struct TailMassTooLarge : Error {
  using Error::Error;
};

struct TargetOutsideRadius : Error {
  using Error::Error;
};

struct SteeringFailed : Error {
  using Error::Error;
};

struct ToleranceNotMet : Error {
  ToleranceNotMet(const std::string& msg, double got)
      : Error(msg), achieved(got) {}
  double achieved;
};

struct UnsupportedFamily : Error {
  using Error::Error;
};

}  // namespace flowcap

#endif
