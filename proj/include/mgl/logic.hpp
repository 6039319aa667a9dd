#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

struct Formula;

// Argument of an atom: an individual term, possibly built from function
// symbols (coercion constants), choice operators, predicate abstractions, or
// an embedded proposition.
struct LogicTerm {
  enum class Kind { Var, Const, App, Hilbert, Abs, Prop };

  Kind kind = Kind::Var;
  std::string name;                 // Var/Const; App head; Hilbert operator
  Type type = Type::prop();         // Var/Const/App head type (as declared)
  bool head_is_var = false;         // App: head was a variable
  std::shared_ptr<const LogicTerm> head_term;  // App: complex head (e.g. applied choice term)
  std::vector<Type> type_args;      // App instantiations
  std::vector<LogicTerm> args;      // App arguments
  std::string bound;                // Hilbert / Abs
  Type bound_type = Type::prop();   // Hilbert instantiation sort / Abs binder
  Type op_type = Type::prop();      // Hilbert operator's declared type
  std::shared_ptr<const Formula> body;  // Hilbert restriction / Abs / Prop
};

struct Formula {
  enum class Kind { Atom, Connective, Quant };

  Kind kind = Kind::Atom;

  // Atom
  std::string predicate;
  Type predicate_type = Type::prop();
  bool predicate_is_var = false;
  std::shared_ptr<const LogicTerm> predicate_term;  // complex predicate head
  std::vector<Type> type_args;
  std::vector<LogicTerm> args;

  // Connective: and / or / implies / not
  std::string connective;
  std::vector<Formula> operands;

  // Quant: forall / exists
  std::string quantifier;
  std::string var;
  Type var_type = Type::prop();
  std::vector<Formula> quant_body;  // exactly one
};

// Maps a beta-normal term of type t to the corresponding many-sorted
// formula. Quantifier and choice-operator arguments that are not
// abstractions are eta-expanded on the fly. Throws NonLogicalHead when a
// head constant is not part of the recognized vocabulary.
Formula term_to_formula(const Signature& sig, const Term& term);

// Inverse rendering; term_to_formula(formula_to_term(f)) == f structurally,
// and formula_to_term(term_to_formula(t)) is alpha-equal to the eta-adjusted
// input.
Term formula_to_term(const Formula& formula);

// One formula P(c(P)) for every closed iota/epsilon/eta application c(P) in
// the term, deduplicated.
std::vector<Formula> presuppositions(const Signature& sig, const Term& term);

enum class TauEpsilonDirection { TauToEpsilon, EpsilonToTau };

// Rewrites tau{A}(P) to epsilon{A}(lam x:A. not (P x)), or conversely.
// Type-preserving; applying both directions stacks double negations.
Term tau_epsilon_rewrite(const Term& term, TauEpsilonDirection direction);

enum class LogicFormat { Unicode, Ascii, Json };

std::string render(const Formula& formula, LogicFormat format);

bool formula_eq(const Formula& a, const Formula& b);

}  // namespace mgl
