#pragma once

#include <memory>
#include <set>
#include <string>

namespace mgl {

// Types of the second-order calculus: base sorts (including the distinguished
// proposition type `t`), type variables, arrows, and universal quantification.
// Values are immutable and share structure; copying is cheap.
class Type {
 public:
  enum class Kind { Base, Var, Arrow, Forall };

  static Type base(std::string name);
  static Type var(std::string name);
  static Type arrow(Type domain, Type codomain);
  static Type forall(std::string binder, Type body);
  static Type prop();  // the proposition type, spelled "t"

  Kind kind() const { return node_->kind; }
  bool is_base() const { return kind() == Kind::Base; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_forall() const { return kind() == Kind::Forall; }
  bool is_prop() const;

  // Base and Var name, or Forall binder.
  const std::string& name() const { return node_->name; }
  const std::string& binder() const { return node_->name; }
  Type domain() const { return Type(node_->a); }    // Arrow
  Type codomain() const { return Type(node_->b); }  // Arrow
  Type body() const { return Type(node_->a); }      // Forall

  // Pointer identity, used only as a fast path by equality checks.
  bool same_node(const Type& other) const { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> a, b;
  };

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Alpha-equivalence (Forall binders compare up to renaming).
bool type_eq(const Type& a, const Type& b);

// Capture-avoiding substitution of `replacement` for the free variable `var`.
Type type_substitute(const Type& t, const std::string& var, const Type& replacement);

std::set<std::string> free_type_vars(const Type& t);
bool type_var_free_in(const std::string& var, const Type& t);

std::size_t type_size(const Type& t);

// Concrete syntax: `e`, `a`, `T1 -> T2` (right-associative), `Pi a. T`.
std::string to_string(const Type& t);

// Canonical spelling with de Bruijn-numbered binders; equal strings iff
// alpha-equal types. Suitable as a map/set key.
std::string alpha_key(const Type& t);

// A name based on `base` that avoids every name in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace mgl
