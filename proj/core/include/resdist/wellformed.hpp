#ifndef RESDIST_WELLFORMED_HPP
#define RESDIST_WELLFORMED_HPP

#include <vector>

#include "resdist/ast.hpp"
#include "resdist/error.hpp"

namespace resdist {

/// Checks the two admissible function shapes: either
///   f_i(x...) = if b then e0 else f_i(e...)   (primitive recursion), or
///   f_i(x...) = e                              (non-recursive),
/// where everything except the tail self-call refers to functions with a
/// strictly smaller index. Returns an empty list iff the program is accepted.
std::vector<Diagnostic> check_well_formed(const Program& p);

/// Throwing convenience wrapper around check_well_formed.
void ensure_well_formed(const Program& p);

/// Shape-1 decomposition of a recursive function body.
struct RecShape {
  BExp guard;                 // termination condition b
  Exp base;                   // e0
  std::vector<Exp> rec_args;  // arguments of the tail self-call
};

/// Returns the shape-1 parts when `f` is recursive, nothing otherwise.
/// Assumes the program passed check_well_formed.
std::optional<RecShape> recursion_shape(const FuncDef& f);

}  // namespace resdist

#endif
