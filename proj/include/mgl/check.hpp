#pragma once

#include <map>
#include <string>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

// Every base sort mentioned by `t` must be declared (type variables may be
// free). Throws UnknownSort otherwise.
void validate_type(const Signature& sig, const Type& t);

// Syntax-directed type checking. `env` supplies the types of free term
// variables; annotations on bound occurrences must agree with their binders.
// Throws UnknownConstant, UnboundVariable, ApplicationMismatch,
// EscapingTypeVariable, or UnknownSort.
Type check_type(const Signature& sig, const std::map<std::string, Type>& env,
                const Term& term);

// Convenience: checks a term whose free variables are taken at their
// annotated types.
Type check_type_with_frees(const Signature& sig, const Term& term);

// Computes the type from annotations alone, without consulting a signature.
// The term is assumed well-formed; used where a full check already happened.
Type annotated_type(const Term& term);

}  // namespace mgl
