#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

// A directed coercion between two base sorts, realized by a constant
// `name : from -> to`.
struct BaseCoercion {
  std::string from, to, name;
};

// Declared sorts, typed constants (optionally with an unfoldable definition),
// and the base-coercion graph. Immutable once validated and shared freely.
class Signature {
 public:
  void add_sort(const std::string& name);
  void add_constant(const std::string& name, Type type);
  void add_defined_constant(const std::string& name, Type type, Term definition);
  void add_base_coercion(const std::string& from, const std::string& to,
                         const std::string& name);

  // Checks every structural invariant:
  //  - sort names are nonempty and "t" is not redeclared;
  //  - the coercion graph is acyclic, has at most one edge per ordered pair,
  //    and is closed under composition (edges i->j and j->k imply i->k);
  //  - every coercion constant is registered at type from -> to;
  //  - constant definitions type-check and do not refer to each other
  //    cyclically.
  void validate() const;

  bool has_sort(const std::string& name) const { return sorts_.count(name) > 0; }
  const std::set<std::string>& sorts() const { return sorts_; }

  bool has_constant(const std::string& name) const { return constants_.count(name) > 0; }
  std::optional<Type> constant_type(const std::string& name) const;
  const Term* definition(const std::string& name) const;
  const std::map<std::string, Type>& constants() const { return constant_types_; }

  const std::vector<BaseCoercion>& base_coercions() const { return coercions_; }
  std::optional<std::string> coercion_name(const std::string& from,
                                           const std::string& to) const;
  // Sorts reachable from `from` by following coercion edges (excludes `from`).
  std::set<std::string> coercion_targets(const std::string& from) const;

 private:
  std::set<std::string> sorts_;
  std::map<std::string, Type> constant_types_;
  std::map<std::string, Term> definitions_;
  std::vector<BaseCoercion> coercions_;
  std::map<std::pair<std::string, std::string>, std::string> edge_names_;
};

// Registers the standard logical vocabulary: and/or/implies/not, the
// polymorphic quantifiers, and the choice operators iota/epsilon/tau/eta plus
// the generalized quantifier "most". Idempotent.
void install_logical_constants(Signature& sig);

bool is_connective(const std::string& name);
bool is_quantifier(const std::string& name);
bool is_hilbert_operator(const std::string& name);

// Pi a. (a -> t) -> t
Type quantifier_type();
// Pi a. (a -> t) -> a
Type hilbert_type();

}  // namespace mgl
