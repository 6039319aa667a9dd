#include "mgl/check.hpp"

#include <vector>

#include "mgl/error.hpp"

namespace mgl {

void validate_type(const Signature& sig, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
      if (!t.is_prop() && !sig.has_sort(t.name()))
        fail(ErrorCode::UnknownSort, "sort " + t.name() + " is not declared");
      return;
    case Type::Kind::Var:
      return;
    case Type::Kind::Arrow:
      validate_type(sig, t.domain());
      validate_type(sig, t.codomain());
      return;
    case Type::Kind::Forall:
      validate_type(sig, t.body());
      return;
  }
}

namespace {

class TypeEnv {
 public:
  explicit TypeEnv(const std::map<std::string, Type>& outer) {
    for (const auto& [name, type] : outer) stack_.emplace_back(name, type);
  }

  const Type* lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  void push(const std::string& name, const Type& type) { stack_.emplace_back(name, type); }
  void pop() { stack_.pop_back(); }

 private:
  std::vector<std::pair<std::string, Type>> stack_;
};

Type check_rec(const Signature& sig, TypeEnv& env, const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Var: {
      validate_type(sig, term.type());
      const Type* bound = env.lookup(term.name());
      if (!bound)
        fail(ErrorCode::UnboundVariable, "variable " + term.name() + " is not in scope");
      if (!type_eq(*bound, term.type()))
        fail(ErrorCode::UnboundVariable,
             "variable " + term.name() + " annotated " + to_string(term.type()) +
                 " but bound at " + to_string(*bound));
      return term.type();
    }
    case Term::Kind::Const: {
      validate_type(sig, term.type());
      auto declared = sig.constant_type(term.name());
      if (!declared)
        fail(ErrorCode::UnknownConstant, "constant " + term.name() + " is not declared");
      if (!type_eq(*declared, term.type()))
        fail(ErrorCode::UnknownConstant,
             "constant " + term.name() + " used at " + to_string(term.type()) +
                 " but declared at " + to_string(*declared));
      return term.type();
    }
    case Term::Kind::App: {
      Type fn_type = check_rec(sig, env, term.fn());
      Type arg_type = check_rec(sig, env, term.arg());
      if (!fn_type.is_arrow())
        fail(ErrorCode::ApplicationMismatch,
             "expected a function, got " + to_string(fn_type));
      if (!type_eq(fn_type.domain(), arg_type))
        fail(ErrorCode::ApplicationMismatch,
             "expected " + to_string(fn_type.domain()) + ", got " + to_string(arg_type));
      return fn_type.codomain();
    }
    case Term::Kind::Lam: {
      validate_type(sig, term.type());
      env.push(term.name(), term.type());
      Type body_type = check_rec(sig, env, term.body());
      env.pop();
      return Type::arrow(term.type(), body_type);
    }
    case Term::Kind::TyApp: {
      validate_type(sig, term.type());
      Type fn_type = check_rec(sig, env, term.fn());
      if (!fn_type.is_forall())
        fail(ErrorCode::ApplicationMismatch,
             "expected a quantified type, got " + to_string(fn_type));
      return type_substitute(fn_type.body(), fn_type.binder(), term.type());
    }
    case Term::Kind::TyLam: {
      for (const auto& [name, type] : free_vars(term.body())) {
        if (type_var_free_in(term.name(), type))
          fail(ErrorCode::EscapingTypeVariable,
               "type variable " + term.name() + " occurs in the type of free variable " + name);
      }
      Type body_type = check_rec(sig, env, term.body());
      return Type::forall(term.name(), body_type);
    }
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

}  // namespace

Type check_type(const Signature& sig, const std::map<std::string, Type>& env,
                const Term& term) {
  TypeEnv stack(env);
  return check_rec(sig, stack, term);
}

Type check_type_with_frees(const Signature& sig, const Term& term) {
  return check_type(sig, free_vars(term), term);
}

Type annotated_type(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return term.type();
    case Term::Kind::App: {
      Type fn_type = annotated_type(term.fn());
      if (!fn_type.is_arrow())
        fail(ErrorCode::ApplicationMismatch, "expected a function, got " + to_string(fn_type));
      return fn_type.codomain();
    }
    case Term::Kind::Lam:
      return Type::arrow(term.type(), annotated_type(term.body()));
    case Term::Kind::TyApp: {
      Type fn_type = annotated_type(term.fn());
      if (!fn_type.is_forall())
        fail(ErrorCode::ApplicationMismatch,
             "expected a quantified type, got " + to_string(fn_type));
      return type_substitute(fn_type.body(), fn_type.binder(), term.type());
    }
    case Term::Kind::TyLam:
      return Type::forall(term.name(), annotated_type(term.body()));
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

}  // namespace mgl
