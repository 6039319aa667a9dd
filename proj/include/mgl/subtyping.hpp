#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgl/signature.hpp"
#include "mgl/term.hpp"
#include "mgl/type.hpp"

namespace mgl {

enum class SubtypeRule {
  Reflexivity,
  BaseEdge,
  Transitivity,
  ArrowCoCo,
  ArrowCovariant,
  ArrowContravariant,
  ForallIntro,
  ForallElim,
};

const char* to_string(SubtypeRule rule);

// A derivation of sub < super. Each node records the rule applied, its
// premises, and rule-specific data (the base edge name, the Forall binder,
// or the instantiation type for eliminations).
struct SubtypeDerivation {
  SubtypeRule rule;
  Type sub, super;
  std::vector<std::shared_ptr<const SubtypeDerivation>> premises;
  std::optional<std::string> edge_name;     // BaseEdge
  std::optional<std::string> binder;        // ForallIntro
  std::optional<Type> instantiation;        // ForallElim
};

// The linear term witnessing a derivation: exactly one occurrence of the
// single free variable `source_var : source_type`, and type `target_type`.
struct CoercionTerm {
  Term term;
  std::string source_var;
  Type source_type;
  Type target_type;
};

// Syntax-directed search: reflexivity, the base-coercion graph, arrow
// variance, quantifier introduction, and quantifier elimination with
// instantiations drawn from the sorts and the goal's subterms.
std::optional<SubtypeDerivation> derive_subtype(const Signature& sig, const Type& s,
                                                const Type& t);

CoercionTerm coercion_term(const SubtypeDerivation& derivation);

// Plain application when types already match; otherwise inserts the coercion
// derived for (type of u) < (domain of f). Empty when neither applies.
std::optional<Term> coercive_apply(const Signature& sig, const Term& f, const Term& u);

std::string render_derivation(const SubtypeDerivation& derivation);

// Per-pair result of exhaustive derivation enumeration between base sorts.
struct CoherencePair {
  std::string from, to;
  bool derivable = false;
  // Distinct beta-normal coercion bodies over the variable x : from.
  std::vector<Term> raw_normal_forms;
  // The same bodies after collapsing composite chains through the declared
  // base edges; coherence predicts exactly one entry.
  std::vector<Term> collapsed_forms;
  bool unique = false;
  // Collapsed form equals the declared edge (or the identity when from == to).
  bool matches_declared = false;
};

struct CoherenceReport {
  int max_depth = 0;
  std::vector<CoherencePair> pairs;
  bool all_unique = true;
};

// Enumerates every derivation (up to the given tree depth) between each pair
// of base sorts, normalizes the extracted coercions, and reports the distinct
// results per pair.
CoherenceReport check_coherence(const Signature& sig, int max_depth);

}  // namespace mgl
