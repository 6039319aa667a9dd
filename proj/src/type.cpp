#include "mgl/type.hpp"

#include <map>
#include <sstream>

#include "mgl/error.hpp"

namespace mgl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::ApplicationMismatch: return "ApplicationMismatch";
    case ErrorCode::EscapingTypeVariable: return "EscapingTypeVariable";
    case ErrorCode::UnknownSort: return "UnknownSort";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TypeErrorInEntry: return "TypeErrorInEntry";
    case ErrorCode::DuplicateWord: return "DuplicateWord";
    case ErrorCode::MissingPrerequisite: return "MissingPrerequisite";
    case ErrorCode::UnknownWord: return "UnknownWord";
    case ErrorCode::NonLogicalHead: return "NonLogicalHead";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Error";
}

Type Type::base(std::string name) {
  return Type(std::make_shared<const Node>(Node{Kind::Base, std::move(name), nullptr, nullptr}));
}

Type Type::var(std::string name) {
  return Type(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

Type Type::arrow(Type domain, Type codomain) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Arrow, std::string(), std::move(domain.node_), std::move(codomain.node_)}));
}

Type Type::forall(std::string binder, Type body) {
  return Type(std::make_shared<const Node>(
      Node{Kind::Forall, std::move(binder), std::move(body.node_), nullptr}));
}

Type Type::prop() {
  static const Type t = Type::base("t");
  return t;
}

bool Type::is_prop() const { return is_base() && name() == "t"; }

namespace {

using BinderMap = std::map<std::string, int>;

bool eq_rec(const Type& a, const Type& b, BinderMap la, BinderMap lb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return a.name() == b.name();
    case Type::Kind::Var: {
      auto ia = la.find(a.name());
      auto ib = lb.find(b.name());
      if ((ia == la.end()) != (ib == lb.end())) return false;
      if (ia == la.end()) return a.name() == b.name();
      return ia->second == ib->second;
    }
    case Type::Kind::Arrow:
      return eq_rec(a.domain(), b.domain(), la, lb, depth) &&
             eq_rec(a.codomain(), b.codomain(), la, lb, depth);
    case Type::Kind::Forall: {
      la[a.binder()] = depth;
      lb[b.binder()] = depth;
      return eq_rec(a.body(), b.body(), std::move(la), std::move(lb), depth + 1);
    }
  }
  return false;
}

}  // namespace

bool type_eq(const Type& a, const Type& b) {
  if (a.same_node(b)) return true;
  return eq_rec(a, b, {}, {}, 0);
}

std::set<std::string> free_type_vars(const Type& t) {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void go(const Type& ty, std::set<std::string>& bound) {
      switch (ty.kind()) {
        case Type::Kind::Base:
          return;
        case Type::Kind::Var:
          if (!bound.count(ty.name())) out.insert(ty.name());
          return;
        case Type::Kind::Arrow:
          go(ty.domain(), bound);
          go(ty.codomain(), bound);
          return;
        case Type::Kind::Forall: {
          bool fresh = bound.insert(ty.binder()).second;
          go(ty.body(), bound);
          if (fresh) bound.erase(ty.binder());
          return;
        }
      }
    }
  } walk{out};
  std::set<std::string> bound;
  walk.go(t, bound);
  return out;
}

bool type_var_free_in(const std::string& var, const Type& t) {
  return free_type_vars(t).count(var) > 0;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Type type_substitute(const Type& t, const std::string& var, const Type& replacement) {
  switch (t.kind()) {
    case Type::Kind::Base:
      return t;
    case Type::Kind::Var:
      return t.name() == var ? replacement : t;
    case Type::Kind::Arrow:
      return Type::arrow(type_substitute(t.domain(), var, replacement),
                         type_substitute(t.codomain(), var, replacement));
    case Type::Kind::Forall: {
      if (t.binder() == var) return t;
      if (type_var_free_in(t.binder(), replacement) && type_var_free_in(var, t.body())) {
        std::set<std::string> avoid = free_type_vars(replacement);
        auto body_vars = free_type_vars(t.body());
        avoid.insert(body_vars.begin(), body_vars.end());
        avoid.insert(var);
        std::string renamed = fresh_name(t.binder(), avoid);
        Type body = type_substitute(t.body(), t.binder(), Type::var(renamed));
        return Type::forall(renamed, type_substitute(body, var, replacement));
      }
      return Type::forall(t.binder(), type_substitute(t.body(), var, replacement));
    }
  }
  fail(ErrorCode::BadInput, "malformed type node");
}

std::size_t type_size(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
    case Type::Kind::Var:
      return 1;
    case Type::Kind::Arrow:
      return 1 + type_size(t.domain()) + type_size(t.codomain());
    case Type::Kind::Forall:
      return 1 + type_size(t.body());
  }
  return 1;
}

namespace {

void print_type(std::ostream& os, const Type& t, bool atom_position) {
  switch (t.kind()) {
    case Type::Kind::Base:
    case Type::Kind::Var:
      os << t.name();
      return;
    case Type::Kind::Arrow: {
      if (atom_position) os << '(';
      print_type(os, t.domain(), /*atom_position=*/true);
      os << " -> ";
      print_type(os, t.codomain(), /*atom_position=*/false);
      if (atom_position) os << ')';
      return;
    }
    case Type::Kind::Forall: {
      if (atom_position) os << '(';
      os << "Pi " << t.binder() << ". ";
      print_type(os, t.body(), /*atom_position=*/false);
      if (atom_position) os << ')';
      return;
    }
  }
}

void key_type(std::ostream& os, const Type& t, BinderMap& bound, int depth) {
  switch (t.kind()) {
    case Type::Kind::Base:
      os << 'b' << t.name() << ';';
      return;
    case Type::Kind::Var: {
      auto it = bound.find(t.name());
      if (it != bound.end())
        os << '#' << it->second << ';';
      else
        os << 'v' << t.name() << ';';
      return;
    }
    case Type::Kind::Arrow:
      os << '(';
      key_type(os, t.domain(), bound, depth);
      os << '>';
      key_type(os, t.codomain(), bound, depth);
      os << ')';
      return;
    case Type::Kind::Forall: {
      auto previous = bound.find(t.binder());
      int saved = previous == bound.end() ? -1 : previous->second;
      bound[t.binder()] = depth;
      os << 'P';
      key_type(os, t.body(), bound, depth + 1);
      if (saved < 0)
        bound.erase(t.binder());
      else
        bound[t.binder()] = saved;
      return;
    }
  }
}

}  // namespace

std::string to_string(const Type& t) {
  std::ostringstream os;
  print_type(os, t, /*atom_position=*/false);
  return os.str();
}

std::string alpha_key(const Type& t) {
  std::ostringstream os;
  BinderMap bound;
  key_type(os, t, bound, 0);
  return os.str();
}

}  // namespace mgl
