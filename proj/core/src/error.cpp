#include "resdist/error.hpp"

#include <sstream>

namespace resdist {

const char* to_string(ErrKind k) {
  switch (k) {
    case ErrKind::Syntax: return "SyntaxError";
    case ErrKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrKind::MutualRecursion: return "MutualRecursion";
    case ErrKind::NonTailRecursion: return "NonTailRecursion";
    case ErrKind::ForwardCall: return "ForwardCall";
    case ErrKind::UndefinedName: return "UndefinedName";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::SliceFailure: return "SliceFailure";
    case ErrKind::DivByZero: return "DivByZero";
    case ErrKind::NonTermination: return "NonTermination";
    case ErrKind::UnboundedSummation: return "UnboundedSummation";
    case ErrKind::BudgetExceeded: return "BudgetExceeded";
    case ErrKind::FixpointBudgetExceeded: return "FixpointBudgetExceeded";
    case ErrKind::MassNotOne: return "MassNotOne";
    case ErrKind::UnsupportedSeries: return "UnsupportedSeries";
    case ErrKind::NotPolynomial: return "NotPolynomial";
    case ErrKind::NotLinear: return "NotLinear";
    case ErrKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrKind::EmptySupport: return "EmptySupport";
    case ErrKind::UnknownRule: return "UnknownRule";
    case ErrKind::Internal: return "InternalError";
    case ErrKind::Io: return "IoError";
    case ErrKind::Usage: return "UsageError";
  }
  return "Error";
}

std::string format_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (const auto& d : ds) os << to_string(d.kind) << " [" << d.where << "]: " << d.message << "\n";
  return os.str();
}

}  // namespace resdist
