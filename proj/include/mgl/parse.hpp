#pragma once

#include <string_view>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

// Concrete syntax:
//   types  T ::= ident | t | T -> T (right-associative) | Pi a. T | (T)
//   terms  M ::= lam x:T. M | Lam a. M | M M (left-associative, parenthesized)
//              | M{T} | ident | (M)
// Identifiers resolve to binders in scope, then to signature constants
// (for terms) or declared sorts (for types). Throws ParseError / UnknownSort.
Type parse_type(const Signature& sig, std::string_view src);
Term parse_term(const Signature& sig, std::string_view src);

}  // namespace mgl
