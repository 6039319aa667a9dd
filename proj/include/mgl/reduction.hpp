#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"

namespace mgl {

struct NormalizeOptions {
  // Upper bound on contractions. Reduction always terminates on well-typed
  // terms; the bound only guards against runaway inputs and is configurable.
  std::size_t max_steps = 10'000'000;
  // When set, constants with definitions in this signature unfold as part of
  // reduction.
  const Signature* unfold = nullptr;
};

// One leftmost-outermost reduction step (beta, type-beta, or definition
// unfolding when `unfold` is given). Empty when the term is normal.
std::optional<Term> step(const Term& t, const Signature* unfold = nullptr);

bool is_normal(const Term& t, const Signature* unfold = nullptr);

// Full normalization, leftmost-outermost. Throws StepLimitExceeded if
// max_steps is exhausted.
Term normalize(const Term& t, const NormalizeOptions& options = {});

// Full normalization contracting innermost redexes, arguments first. Agrees
// with `normalize` up to alpha on well-typed terms.
Term normalize_innermost(const Term& t, const NormalizeOptions& options = {});

// Eta-long form of a beta-normal term: every head is fully applied and every
// arrow- or quantifier-typed position is fully abstracted.
Term eta_long(const Term& t);

// Shape of a beta-normal term: leading abstractions, a head variable or
// constant, and a spine of type and term arguments.
struct NormalForm {
  struct TermBinder {
    std::string name;
    Type type;
  };
  struct TypeBinder {
    std::string name;
  };
  using Binder = std::variant<TermBinder, TypeBinder>;

  struct Arg {
    std::optional<Type> type_argument;                  // set for {T} applications
    std::shared_ptr<const NormalForm> term_argument;    // set for term applications
  };

  std::vector<Binder> binders;
  Term head;
  std::vector<Arg> args;
};

// Throws NotNormal if any redex remains.
NormalForm head_decompose(const Term& t);
Term reassemble(const NormalForm& nf);

}  // namespace mgl
