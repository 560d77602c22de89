#ifndef RESDIST_PARSER_HPP
#define RESDIST_PARSER_HPP

#include <string>

#include "resdist/ast.hpp"

namespace resdist {

/// Parses an intermediate-language program from its concrete text syntax.
///
/// One definition per `name(x,y) = body`; definitions whose name begins with
/// 'P' or 'p' are probability functions, everything else is an integer
/// function. `//` starts a line comment. Free names in probability bodies
/// that are not formals become symbolic program parameters.
Program parse_program(const std::string& source);

// Expression-level entry points (whole string must be consumed).
AExp parse_aexp(const std::string& source);
BExp parse_bexp(const std::string& source);
Exp parse_exp(const std::string& source);
QExp parse_qexp(const std::string& source);

}  // namespace resdist

#endif
