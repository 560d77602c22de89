#ifndef RESDIST_ERROR_HPP
#define RESDIST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace resdist {

enum class ErrKind {
  Syntax,
  UnsupportedConstruct,
  MutualRecursion,
  NonTailRecursion,
  ForwardCall,
  UndefinedName,
  ArityMismatch,
  SliceFailure,
  DivByZero,
  NonTermination,
  UnboundedSummation,
  BudgetExceeded,
  FixpointBudgetExceeded,
  MassNotOne,
  UnsupportedSeries,
  NotPolynomial,
  NotLinear,
  ZeroCoefficient,
  DegreeTooHigh,
  EmptySupport,
  UnknownRule,
  Internal,
  Io,
  Usage,
};

const char* to_string(ErrKind k);

/// The one exception type the library throws; `kind` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, std::string msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

/// Non-throwing finding from a checker; `where` names the offending item.
struct Diagnostic {
  ErrKind kind;
  std::string where;
  std::string message;
};

std::string format_diagnostics(const std::vector<Diagnostic>& ds);

}  // namespace resdist

#endif
