#include "mgl/signature.hpp"

#include <algorithm>
#include <functional>

#include "mgl/check.hpp"
#include "mgl/error.hpp"

namespace mgl {

void Signature::add_sort(const std::string& name) {
  if (name.empty()) fail(ErrorCode::InvalidSignature, "empty sort name");
  if (name == "t") fail(ErrorCode::InvalidSignature, "\"t\" is reserved for the proposition type");
  sorts_.insert(name);
}

void Signature::add_constant(const std::string& name, Type type) {
  auto it = constant_types_.find(name);
  if (it != constant_types_.end()) {
    if (!type_eq(it->second, type))
      fail(ErrorCode::InvalidSignature,
           "constant " + name + " redeclared at a different type");
    return;
  }
  constant_types_.emplace(name, std::move(type));
}

void Signature::add_defined_constant(const std::string& name, Type type, Term definition) {
  add_constant(name, std::move(type));
  definitions_.insert_or_assign(name, std::move(definition));
}

void Signature::add_base_coercion(const std::string& from, const std::string& to,
                                  const std::string& name) {
  auto key = std::make_pair(from, to);
  auto it = edge_names_.find(key);
  if (it != edge_names_.end()) {
    if (it->second != name)
      fail(ErrorCode::InvalidSignature,
           "two coercions declared between " + from + " and " + to);
    return;
  }
  coercions_.push_back(BaseCoercion{from, to, name});
  edge_names_.emplace(key, name);
  add_constant(name, Type::arrow(Type::base(from), Type::base(to)));
}

std::optional<Type> Signature::constant_type(const std::string& name) const {
  auto it = constant_types_.find(name);
  if (it == constant_types_.end()) return std::nullopt;
  return it->second;
}

const Term* Signature::definition(const std::string& name) const {
  auto it = definitions_.find(name);
  return it == definitions_.end() ? nullptr : &it->second;
}

std::optional<std::string> Signature::coercion_name(const std::string& from,
                                                    const std::string& to) const {
  auto it = edge_names_.find(std::make_pair(from, to));
  if (it == edge_names_.end()) return std::nullopt;
  return it->second;
}

std::set<std::string> Signature::coercion_targets(const std::string& from) const {
  std::set<std::string> seen;
  std::vector<std::string> queue{from};
  while (!queue.empty()) {
    std::string current = queue.back();
    queue.pop_back();
    for (const auto& edge : coercions_) {
      if (edge.from == current && seen.insert(edge.to).second) queue.push_back(edge.to);
    }
  }
  seen.erase(from);
  return seen;
}

void Signature::validate() const {
  for (const auto& edge : coercions_) {
    if (!has_sort(edge.from) || !has_sort(edge.to))
      fail(ErrorCode::InvalidSignature,
           "coercion " + edge.name + " mentions an undeclared sort");
    if (edge.from == edge.to)
      fail(ErrorCode::InvalidSignature, "coercion " + edge.name + " is a self-loop");
    auto declared = constant_type(edge.name);
    Type expected = Type::arrow(Type::base(edge.from), Type::base(edge.to));
    if (!declared || !type_eq(*declared, expected))
      fail(ErrorCode::InvalidSignature,
           "coercion constant " + edge.name + " must have type " + to_string(expected));
  }

  // Acyclicity: no sort reaches itself.
  for (const auto& sort : sorts_) {
    if (coercion_targets(sort).count(sort))
      fail(ErrorCode::InvalidSignature, "coercion graph has a cycle through " + sort);
  }

  // Composition closure: adjacent edges must have a declared composite.
  for (const auto& e1 : coercions_) {
    for (const auto& e2 : coercions_) {
      if (e1.to != e2.from) continue;
      if (!coercion_name(e1.from, e2.to))
        fail(ErrorCode::InvalidSignature,
             "coercion set is not closed: missing composite for " + e1.from + " < " + e2.to);
    }
  }

  // Definitions type-check and do not form cycles.
  std::map<std::string, int> state;  // 0 = visiting, 1 = done
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    auto it = state.find(name);
    if (it != state.end()) {
      if (it->second == 0)
        fail(ErrorCode::InvalidSignature, "cyclic constant definition through " + name);
      return;
    }
    state[name] = 0;
    const Term* def = definition(name);
    if (def) {
      for (const auto& [cname, _] : constants_used(*def))
        if (definitions_.count(cname) && cname != name) visit(cname);
      if (!free_vars(*def).empty())
        fail(ErrorCode::InvalidSignature, "definition of " + name + " is not closed");
      Type actual = check_type(*this, {}, *def);
      if (!type_eq(actual, constant_types_.at(name)))
        fail(ErrorCode::InvalidSignature,
             "definition of " + name + " has type " + to_string(actual) +
                 ", declared " + to_string(constant_types_.at(name)));
      if (constants_used(*def).count(name))
        fail(ErrorCode::InvalidSignature, "definition of " + name + " refers to itself");
    }
    state[name] = 1;
  };
  for (const auto& [name, _] : definitions_) visit(name);
}

void install_logical_constants(Signature& sig) {
  Type binary = Type::arrow(Type::prop(), Type::arrow(Type::prop(), Type::prop()));
  sig.add_constant("and", binary);
  sig.add_constant("or", binary);
  sig.add_constant("implies", binary);
  sig.add_constant("not", Type::arrow(Type::prop(), Type::prop()));
  sig.add_constant("forall", quantifier_type());
  sig.add_constant("exists", quantifier_type());
  sig.add_constant("iota", hilbert_type());
  sig.add_constant("epsilon", hilbert_type());
  sig.add_constant("tau", hilbert_type());
  sig.add_constant("eta", hilbert_type());
  sig.add_constant("most", hilbert_type());
}

bool is_connective(const std::string& name) {
  return name == "and" || name == "or" || name == "implies" || name == "not";
}

bool is_quantifier(const std::string& name) {
  return name == "forall" || name == "exists";
}

bool is_hilbert_operator(const std::string& name) {
  return name == "iota" || name == "epsilon" || name == "tau" || name == "eta" ||
         name == "most";
}

Type quantifier_type() {
  Type a = Type::var("a");
  return Type::forall("a", Type::arrow(Type::arrow(a, Type::prop()), Type::prop()));
}

Type hilbert_type() {
  Type a = Type::var("a");
  return Type::forall("a", Type::arrow(Type::arrow(a, Type::prop()), a));
}

}  // namespace mgl
