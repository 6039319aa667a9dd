#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "mgl/type.hpp"

namespace mgl {

// Terms of the second-order calculus. Every variable occurrence carries its
// type annotation; constants carry the type they were declared with.
// Immutable, structurally shared.
class Term {
 public:
  enum class Kind { Var, Const, App, Lam, TyApp, TyLam };

  static Term var(std::string name, Type type);
  static Term constant(std::string name, Type type);
  static Term app(Term fn, Term arg);
  static Term lam(std::string binder, Type binder_type, Term body);
  static Term ty_app(Term fn, Type argument);
  static Term ty_lam(std::string binder, Term body);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_ty_app() const { return kind() == Kind::TyApp; }
  bool is_ty_lam() const { return kind() == Kind::TyLam; }

  // Var/Const name, Lam binder, TyLam binder.
  const std::string& name() const { return node_->name; }
  // Var/Const annotation, Lam binder type, TyApp type argument.
  const Type& type() const { return *node_->type; }

  Term fn() const { return Term(node_->a); }    // App and TyApp
  Term arg() const { return Term(node_->b); }   // App
  Term body() const { return Term(node_->a); }  // Lam and TyLam

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::optional<Type> type;
    std::shared_ptr<const Node> a, b;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

bool alpha_eq(const Term& a, const Term& b);
std::string alpha_key(const Term& t);

// Capture-avoiding substitution of `replacement` for the free term variable.
Term substitute(const Term& t, const std::string& var, const Term& replacement);

// Capture-avoiding substitution of a type for a free type variable, applied
// to every annotation and type argument in the term.
Term substitute_type(const Term& t, const std::string& tyvar, const Type& replacement);

// Free term variables with their annotations (outermost occurrence wins).
std::map<std::string, Type> free_vars(const Term& t);
std::size_t count_free_occurrences(const Term& t, const std::string& var);

// Constants mentioned in the term, with their annotations.
std::map<std::string, Type> constants_used(const Term& t);

// Type variables free in any annotation, type argument, or binder type.
std::set<std::string> free_type_vars(const Term& t);

// Every term-variable / type-variable name mentioned anywhere (for freshening).
std::set<std::string> all_term_var_names(const Term& t);
std::set<std::string> all_type_var_names(const Term& t);

std::size_t term_size(const Term& t);

// Concrete syntax: `lam x:T. body`, `Lam a. body`, `(f x)`, `f{T}`.
std::string to_string(const Term& t);

}  // namespace mgl
