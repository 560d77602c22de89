#ifndef RESDIST_PRINTER_HPP
#define RESDIST_PRINTER_HPP

#include <string>

#include "resdist/ast.hpp"

namespace resdist {

// Concrete syntax mirroring the analyzer's input language: `=<` for less-or-
// equal, `/` for integer division at the arithmetic level and real division
// at the probability level. c(a and b) is printed as c(a)*c(b).
std::string print(const AExp& e);
std::string print(const BExp& e);
std::string print(const Exp& e);
std::string print(const QExp& e);

std::string print(const FuncDef& f);
std::string print(const ProbDef& p);
std::string print(const Program& p);

}  // namespace resdist

#endif
