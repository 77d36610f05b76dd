#pragma once

#include <functional>
#include <string>

#include "formlab/jet.hpp"

namespace formlab {

/// Compiled univariate expression; evaluates to a jet in u at the
/// requested order.
using ExprFn = std::function<Jet2(double, int)>;

/// Compiles the profile expression grammar:
///
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | atom
///   atom  := number | 'pi' | 'u'
///          | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
///
/// Whitespace is insignificant. Malformed input raises a spec-parse
/// error at compile time; domain violations (division by a vanishing
/// subexpression) surface as singular-jet errors at evaluation time.
ExprFn compile_expr(const std::string& src);

} // namespace formlab
