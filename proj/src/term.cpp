#include "mgl/term.hpp"

#include <sstream>

#include "mgl/error.hpp"

namespace mgl {

Term Term::var(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Var, std::move(name), std::move(type), nullptr, nullptr}));
}

Term Term::constant(std::string name, Type type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Const, std::move(name), std::move(type), nullptr, nullptr}));
}

Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const Node>(
      Node{Kind::App, std::string(), std::nullopt, std::move(fn.node_), std::move(arg.node_)}));
}

Term Term::lam(std::string binder, Type binder_type, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Lam, std::move(binder), std::move(binder_type), std::move(body.node_), nullptr}));
}

Term Term::ty_app(Term fn, Type argument) {
  return Term(std::make_shared<const Node>(
      Node{Kind::TyApp, std::string(), std::move(argument), std::move(fn.node_), nullptr}));
}

Term Term::ty_lam(std::string binder, Term body) {
  return Term(std::make_shared<const Node>(
      Node{Kind::TyLam, std::move(binder), std::nullopt, std::move(body.node_), nullptr}));
}

namespace {

using BinderMap = std::map<std::string, int>;

bool type_eq_mapped(const Type& a, const Type& b, BinderMap ta, BinderMap tb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return a.name() == b.name();
    case Type::Kind::Var: {
      auto ia = ta.find(a.name());
      auto ib = tb.find(b.name());
      if ((ia == ta.end()) != (ib == tb.end())) return false;
      if (ia == ta.end()) return a.name() == b.name();
      return ia->second == ib->second;
    }
    case Type::Kind::Arrow:
      return type_eq_mapped(a.domain(), b.domain(), ta, tb, depth) &&
             type_eq_mapped(a.codomain(), b.codomain(), ta, tb, depth);
    case Type::Kind::Forall: {
      ta[a.binder()] = depth;
      tb[b.binder()] = depth;
      return type_eq_mapped(a.body(), b.body(), std::move(ta), std::move(tb), depth + 1);
    }
  }
  return false;
}

struct AlphaCtx {
  BinderMap va, vb;  // term binders
  BinderMap ta, tb;  // type binders
  int depth = 0;
};

bool alpha_rec(const Term& a, const Term& b, AlphaCtx ctx) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      auto ia = ctx.va.find(a.name());
      auto ib = ctx.vb.find(b.name());
      if ((ia == ctx.va.end()) != (ib == ctx.vb.end())) return false;
      if (ia == ctx.va.end()) {
        return a.name() == b.name() &&
               type_eq_mapped(a.type(), b.type(), ctx.ta, ctx.tb, ctx.depth);
      }
      return ia->second == ib->second;
    }
    case Term::Kind::Const:
      return a.name() == b.name() &&
             type_eq_mapped(a.type(), b.type(), ctx.ta, ctx.tb, ctx.depth);
    case Term::Kind::App:
      return alpha_rec(a.fn(), b.fn(), ctx) && alpha_rec(a.arg(), b.arg(), ctx);
    case Term::Kind::TyApp:
      return type_eq_mapped(a.type(), b.type(), ctx.ta, ctx.tb, ctx.depth) &&
             alpha_rec(a.fn(), b.fn(), ctx);
    case Term::Kind::Lam: {
      if (!type_eq_mapped(a.type(), b.type(), ctx.ta, ctx.tb, ctx.depth)) return false;
      ctx.va[a.name()] = ctx.depth;
      ctx.vb[b.name()] = ctx.depth;
      ++ctx.depth;
      return alpha_rec(a.body(), b.body(), std::move(ctx));
    }
    case Term::Kind::TyLam: {
      ctx.ta[a.name()] = ctx.depth;
      ctx.tb[b.name()] = ctx.depth;
      ++ctx.depth;
      return alpha_rec(a.body(), b.body(), std::move(ctx));
    }
  }
  return false;
}

void key_type_mapped(std::ostream& os, const Type& t, BinderMap& bound, int depth) {
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
      key_type_mapped(os, t.domain(), bound, depth);
      os << '>';
      key_type_mapped(os, t.codomain(), bound, depth);
      os << ')';
      return;
    case Type::Kind::Forall: {
      auto previous = bound.find(t.binder());
      int saved = previous == bound.end() ? -1 : previous->second;
      bound[t.binder()] = depth;
      os << 'P';
      key_type_mapped(os, t.body(), bound, depth + 1);
      if (saved < 0)
        bound.erase(t.binder());
      else
        bound[t.binder()] = saved;
      return;
    }
  }
}

void key_term(std::ostream& os, const Term& t, BinderMap& vars, BinderMap& tys, int depth) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = vars.find(t.name());
      if (it != vars.end()) {
        os << '#' << it->second << ';';
      } else {
        os << 'v' << t.name() << ':';
        key_type_mapped(os, t.type(), tys, depth);
      }
      return;
    }
    case Term::Kind::Const:
      os << 'c' << t.name() << ':';
      key_type_mapped(os, t.type(), tys, depth);
      return;
    case Term::Kind::App: {
      os << '(';
      key_term(os, t.fn(), vars, tys, depth);
      os << ' ';
      key_term(os, t.arg(), vars, tys, depth);
      os << ')';
      return;
    }
    case Term::Kind::TyApp: {
      os << '(';
      key_term(os, t.fn(), vars, tys, depth);
      os << '{';
      key_type_mapped(os, t.type(), tys, depth);
      os << "})";
      return;
    }
    case Term::Kind::Lam: {
      os << "L:";
      key_type_mapped(os, t.type(), tys, depth);
      auto previous = vars.find(t.name());
      int saved = previous == vars.end() ? -1 : previous->second;
      vars[t.name()] = depth;
      key_term(os, t.body(), vars, tys, depth + 1);
      if (saved < 0)
        vars.erase(t.name());
      else
        vars[t.name()] = saved;
      return;
    }
    case Term::Kind::TyLam: {
      os << "T.";
      auto previous = tys.find(t.name());
      int saved = previous == tys.end() ? -1 : previous->second;
      tys[t.name()] = depth;
      key_term(os, t.body(), vars, tys, depth + 1);
      if (saved < 0)
        tys.erase(t.name());
      else
        tys[t.name()] = saved;
      return;
    }
  }
}

void collect_free_vars(const Term& t, std::set<std::string>& bound,
                       std::map<std::string, Type>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.count(t.name())) out.emplace(t.name(), t.type());
      return;
    case Term::Kind::Const:
      return;
    case Term::Kind::App:
      collect_free_vars(t.fn(), bound, out);
      collect_free_vars(t.arg(), bound, out);
      return;
    case Term::Kind::TyApp:
      collect_free_vars(t.fn(), bound, out);
      return;
    case Term::Kind::Lam: {
      bool fresh = bound.insert(t.name()).second;
      collect_free_vars(t.body(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    case Term::Kind::TyLam:
      collect_free_vars(t.body(), bound, out);
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  return alpha_rec(a, b, AlphaCtx{});
}

std::string alpha_key(const Term& t) {
  std::ostringstream os;
  BinderMap vars, tys;
  key_term(os, t, vars, tys, 0);
  return os.str();
}

std::map<std::string, Type> free_vars(const Term& t) {
  std::map<std::string, Type> out;
  std::set<std::string> bound;
  collect_free_vars(t, bound, out);
  return out;
}

std::map<std::string, Type> constants_used(const Term& t) {
  std::map<std::string, Type> out;
  struct Walk {
    std::map<std::string, Type>& out;
    void go(const Term& term) {
      switch (term.kind()) {
        case Term::Kind::Var:
          return;
        case Term::Kind::Const:
          out.emplace(term.name(), term.type());
          return;
        case Term::Kind::App:
          go(term.fn());
          go(term.arg());
          return;
        case Term::Kind::TyApp:
        case Term::Kind::Lam:
        case Term::Kind::TyLam:
          go(term.body());
          return;
      }
    }
  } walk{out};
  walk.go(t);
  return out;
}

std::size_t count_free_occurrences(const Term& t, const std::string& var) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == var ? 1 : 0;
    case Term::Kind::Const:
      return 0;
    case Term::Kind::App:
      return count_free_occurrences(t.fn(), var) + count_free_occurrences(t.arg(), var);
    case Term::Kind::TyApp:
      return count_free_occurrences(t.fn(), var);
    case Term::Kind::Lam:
      return t.name() == var ? 0 : count_free_occurrences(t.body(), var);
    case Term::Kind::TyLam:
      return count_free_occurrences(t.body(), var);
  }
  return 0;
}

std::set<std::string> free_type_vars(const Term& t) {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void add_type(const Type& ty, const std::set<std::string>& bound) {
      for (const auto& v : free_type_vars(ty))
        if (!bound.count(v)) out.insert(v);
    }
    void go(const Term& term, std::set<std::string>& bound) {
      switch (term.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
          add_type(term.type(), bound);
          return;
        case Term::Kind::App:
          go(term.fn(), bound);
          go(term.arg(), bound);
          return;
        case Term::Kind::TyApp:
          add_type(term.type(), bound);
          go(term.fn(), bound);
          return;
        case Term::Kind::Lam:
          add_type(term.type(), bound);
          go(term.body(), bound);
          return;
        case Term::Kind::TyLam: {
          bool fresh = bound.insert(term.name()).second;
          go(term.body(), bound);
          if (fresh) bound.erase(term.name());
          return;
        }
      }
    }
  } walk{out};
  std::set<std::string> bound;
  walk.go(t, bound);
  return out;
}

std::set<std::string> all_term_var_names(const Term& t) {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void go(const Term& term) {
      switch (term.kind()) {
        case Term::Kind::Var:
          out.insert(term.name());
          return;
        case Term::Kind::Const:
          return;
        case Term::Kind::App:
          go(term.fn());
          go(term.arg());
          return;
        case Term::Kind::TyApp:
          go(term.fn());
          return;
        case Term::Kind::Lam:
          out.insert(term.name());
          go(term.body());
          return;
        case Term::Kind::TyLam:
          go(term.body());
          return;
      }
    }
  } walk{out};
  walk.go(t);
  return out;
}

std::set<std::string> all_type_var_names(const Term& t) {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void add_type(const Type& ty) {
      switch (ty.kind()) {
        case Type::Kind::Base:
          return;
        case Type::Kind::Var:
          out.insert(ty.name());
          return;
        case Type::Kind::Arrow:
          add_type(ty.domain());
          add_type(ty.codomain());
          return;
        case Type::Kind::Forall:
          out.insert(ty.binder());
          add_type(ty.body());
          return;
      }
    }
    void go(const Term& term) {
      switch (term.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
          add_type(term.type());
          return;
        case Term::Kind::App:
          go(term.fn());
          go(term.arg());
          return;
        case Term::Kind::TyApp:
          add_type(term.type());
          go(term.fn());
          return;
        case Term::Kind::Lam:
          add_type(term.type());
          go(term.body());
          return;
        case Term::Kind::TyLam:
          out.insert(term.name());
          go(term.body());
          return;
      }
    }
  } walk{out};
  walk.go(t);
  return out;
}

Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == var ? replacement : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::App:
      return Term::app(substitute(t.fn(), var, replacement),
                       substitute(t.arg(), var, replacement));
    case Term::Kind::TyApp:
      return Term::ty_app(substitute(t.fn(), var, replacement), t.type());
    case Term::Kind::Lam: {
      if (t.name() == var) return t;
      if (count_free_occurrences(t.body(), var) == 0) return t;
      auto replacement_frees = free_vars(replacement);
      if (replacement_frees.count(t.name())) {
        std::set<std::string> avoid = all_term_var_names(replacement);
        auto body_names = all_term_var_names(t.body());
        avoid.insert(body_names.begin(), body_names.end());
        avoid.insert(var);
        std::string renamed = fresh_name(t.name(), avoid);
        Term body = substitute(t.body(), t.name(), Term::var(renamed, t.type()));
        return Term::lam(renamed, t.type(), substitute(body, var, replacement));
      }
      return Term::lam(t.name(), t.type(), substitute(t.body(), var, replacement));
    }
    case Term::Kind::TyLam: {
      if (count_free_occurrences(t.body(), var) == 0) return t;
      if (free_type_vars(replacement).count(t.name())) {
        std::set<std::string> avoid = all_type_var_names(replacement);
        auto body_tys = all_type_var_names(t.body());
        avoid.insert(body_tys.begin(), body_tys.end());
        std::string renamed = fresh_name(t.name(), avoid);
        Term body = substitute_type(t.body(), t.name(), Type::var(renamed));
        return Term::ty_lam(renamed, substitute(body, var, replacement));
      }
      return Term::ty_lam(t.name(), substitute(t.body(), var, replacement));
    }
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

Term substitute_type(const Term& t, const std::string& tyvar, const Type& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return Term::var(t.name(), type_substitute(t.type(), tyvar, replacement));
    case Term::Kind::Const:
      return Term::constant(t.name(), type_substitute(t.type(), tyvar, replacement));
    case Term::Kind::App:
      return Term::app(substitute_type(t.fn(), tyvar, replacement),
                       substitute_type(t.arg(), tyvar, replacement));
    case Term::Kind::TyApp:
      return Term::ty_app(substitute_type(t.fn(), tyvar, replacement),
                          type_substitute(t.type(), tyvar, replacement));
    case Term::Kind::Lam:
      return Term::lam(t.name(), type_substitute(t.type(), tyvar, replacement),
                       substitute_type(t.body(), tyvar, replacement));
    case Term::Kind::TyLam: {
      if (t.name() == tyvar) return t;
      if (type_var_free_in(t.name(), replacement) && free_type_vars(t.body()).count(tyvar)) {
        std::set<std::string> avoid = free_type_vars(replacement);
        auto body_tys = all_type_var_names(t.body());
        avoid.insert(body_tys.begin(), body_tys.end());
        avoid.insert(tyvar);
        std::string renamed = fresh_name(t.name(), avoid);
        Term body = substitute_type(t.body(), t.name(), Type::var(renamed));
        return Term::ty_lam(renamed, substitute_type(body, tyvar, replacement));
      }
      return Term::ty_lam(t.name(), substitute_type(t.body(), tyvar, replacement));
    }
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

std::size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return 1;
    case Term::Kind::App:
      return 1 + term_size(t.fn()) + term_size(t.arg());
    case Term::Kind::TyApp:
    case Term::Kind::Lam:
    case Term::Kind::TyLam:
      return 1 + term_size(t.body());
  }
  return 1;
}

namespace {

// Binders are not self-delimiting, so they get parentheses whenever they
// appear as the function or argument of an application.
void print_term(std::ostream& os, const Term& t, bool atom_position) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      os << t.name();
      return;
    case Term::Kind::App:
      os << '(';
      print_term(os, t.fn(), /*atom_position=*/true);
      os << ' ';
      print_term(os, t.arg(), /*atom_position=*/true);
      os << ')';
      return;
    case Term::Kind::TyApp:
      print_term(os, t.fn(), /*atom_position=*/true);
      os << '{' << to_string(t.type()) << '}';
      return;
    case Term::Kind::Lam:
      if (atom_position) os << '(';
      os << "lam " << t.name() << ':' << to_string(t.type()) << ". ";
      print_term(os, t.body(), /*atom_position=*/false);
      if (atom_position) os << ')';
      return;
    case Term::Kind::TyLam:
      if (atom_position) os << '(';
      os << "Lam " << t.name() << ". ";
      print_term(os, t.body(), /*atom_position=*/false);
      if (atom_position) os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t, /*atom_position=*/false);
  return os.str();
}

}  // namespace mgl
