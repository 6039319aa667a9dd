#include "mgl/reduction.hpp"

#include "mgl/check.hpp"
#include "mgl/error.hpp"

namespace mgl {
namespace {

struct Budget {
  std::size_t remaining;
  const Signature* unfold;

  void tick() {
    if (remaining == 0)
      fail(ErrorCode::StepLimitExceeded, "reduction exceeded the configured step bound");
    --remaining;
  }

  const Term* definition(const Term& t) const {
    if (!unfold || !t.is_const()) return nullptr;
    return unfold->definition(t.name());
  }
};

// Reduces until the outermost constructor is stable: contracts head redexes
// and unfolds defined constants in head position.
Term whnf(const Term& t, Budget& budget) {
  switch (t.kind()) {
    case Term::Kind::App: {
      Term fn = whnf(t.fn(), budget);
      if (fn.is_lam()) {
        budget.tick();
        return whnf(substitute(fn.body(), fn.name(), t.arg()), budget);
      }
      return fn.same_node(t.fn()) ? t : Term::app(fn, t.arg());
    }
    case Term::Kind::TyApp: {
      Term fn = whnf(t.fn(), budget);
      if (fn.is_ty_lam()) {
        budget.tick();
        return whnf(substitute_type(fn.body(), fn.name(), t.type()), budget);
      }
      return fn.same_node(t.fn()) ? t : Term::ty_app(fn, t.type());
    }
    case Term::Kind::Const:
      if (const Term* def = budget.definition(t)) {
        budget.tick();
        return whnf(*def, budget);
      }
      return t;
    default:
      return t;
  }
}

Term nf(const Term& t, Budget& budget) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const:
      if (const Term* def = budget.definition(t)) {
        budget.tick();
        return nf(*def, budget);
      }
      return t;
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.type(), nf(t.body(), budget));
    case Term::Kind::TyLam:
      return Term::ty_lam(t.name(), nf(t.body(), budget));
    case Term::Kind::App:
    case Term::Kind::TyApp: {
      Term head = whnf(t, budget);
      if (head.is_app())
        return Term::app(nf(head.fn(), budget), nf(head.arg(), budget));
      if (head.is_ty_app())
        return Term::ty_app(nf(head.fn(), budget), head.type());
      return nf(head, budget);
    }
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

Term nf_innermost(const Term& t, Budget& budget) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const:
      if (const Term* def = budget.definition(t)) {
        budget.tick();
        return nf_innermost(*def, budget);
      }
      return t;
    case Term::Kind::Lam:
      return Term::lam(t.name(), t.type(), nf_innermost(t.body(), budget));
    case Term::Kind::TyLam:
      return Term::ty_lam(t.name(), nf_innermost(t.body(), budget));
    case Term::Kind::App: {
      Term arg = nf_innermost(t.arg(), budget);
      Term fn = nf_innermost(t.fn(), budget);
      if (fn.is_lam()) {
        budget.tick();
        return nf_innermost(substitute(fn.body(), fn.name(), arg), budget);
      }
      return Term::app(fn, arg);
    }
    case Term::Kind::TyApp: {
      Term fn = nf_innermost(t.fn(), budget);
      if (fn.is_ty_lam()) {
        budget.tick();
        return nf_innermost(substitute_type(fn.body(), fn.name(), t.type()), budget);
      }
      return Term::ty_app(fn, t.type());
    }
  }
  fail(ErrorCode::BadInput, "malformed term node");
}

NormalForm decompose_rec(const Term& t) {
  NormalForm out{{}, t, {}};
  Term current = t;
  while (current.is_lam() || current.is_ty_lam()) {
    if (current.is_lam())
      out.binders.push_back(NormalForm::TermBinder{current.name(), current.type()});
    else
      out.binders.push_back(NormalForm::TypeBinder{current.name()});
    current = current.body();
  }
  std::vector<NormalForm::Arg> reversed;
  while (current.is_app() || current.is_ty_app()) {
    if (current.is_app()) {
      reversed.push_back(NormalForm::Arg{
          std::nullopt, std::make_shared<const NormalForm>(decompose_rec(current.arg()))});
      current = current.fn();
    } else {
      reversed.push_back(NormalForm::Arg{current.type(), nullptr});
      current = current.fn();
    }
  }
  if (!current.is_var() && !current.is_const())
    fail(ErrorCode::NotNormal, "redex in head position");
  out.head = current;
  out.args.assign(reversed.rbegin(), reversed.rend());
  return out;
}

}  // namespace

std::optional<Term> step(const Term& t, const Signature* unfold) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return std::nullopt;
    case Term::Kind::Const:
      if (unfold)
        if (const Term* def = unfold->definition(t.name())) return *def;
      return std::nullopt;
    case Term::Kind::App: {
      if (t.fn().is_lam()) return substitute(t.fn().body(), t.fn().name(), t.arg());
      if (auto fn = step(t.fn(), unfold)) return Term::app(*fn, t.arg());
      if (auto arg = step(t.arg(), unfold)) return Term::app(t.fn(), *arg);
      return std::nullopt;
    }
    case Term::Kind::TyApp: {
      if (t.fn().is_ty_lam())
        return substitute_type(t.fn().body(), t.fn().name(), t.type());
      if (auto fn = step(t.fn(), unfold)) return Term::ty_app(*fn, t.type());
      return std::nullopt;
    }
    case Term::Kind::Lam: {
      if (auto body = step(t.body(), unfold)) return Term::lam(t.name(), t.type(), *body);
      return std::nullopt;
    }
    case Term::Kind::TyLam: {
      if (auto body = step(t.body(), unfold)) return Term::ty_lam(t.name(), *body);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_normal(const Term& t, const Signature* unfold) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::Const:
      return !(unfold && unfold->definition(t.name()));
    case Term::Kind::App:
      return !t.fn().is_lam() && is_normal(t.fn(), unfold) && is_normal(t.arg(), unfold);
    case Term::Kind::TyApp:
      return !t.fn().is_ty_lam() && is_normal(t.fn(), unfold);
    case Term::Kind::Lam:
    case Term::Kind::TyLam:
      return is_normal(t.body(), unfold);
  }
  return false;
}

Term normalize(const Term& t, const NormalizeOptions& options) {
  Budget budget{options.max_steps, options.unfold};
  return nf(t, budget);
}

Term normalize_innermost(const Term& t, const NormalizeOptions& options) {
  Budget budget{options.max_steps, options.unfold};
  return nf_innermost(t, budget);
}

namespace {

Term eta_expand(const Term& t, const Type& ty) {
  if (ty.is_arrow()) {
    if (t.is_lam()) return Term::lam(t.name(), t.type(), eta_expand(t.body(), ty.codomain()));
    std::set<std::string> avoid = all_term_var_names(t);
    std::string x = fresh_name("x", avoid);
    Term applied = Term::app(t, Term::var(x, ty.domain()));
    return Term::lam(x, ty.domain(), eta_expand(applied, ty.codomain()));
  }
  if (ty.is_forall()) {
    if (t.is_ty_lam()) {
      Type body_ty = type_substitute(ty.body(), ty.binder(), Type::var(t.name()));
      return Term::ty_lam(t.name(), eta_expand(t.body(), body_ty));
    }
    std::set<std::string> avoid = all_type_var_names(t);
    auto ty_frees = free_type_vars(ty);
    avoid.insert(ty_frees.begin(), ty_frees.end());
    std::string a = fresh_name("a", avoid);
    Type body_ty = type_substitute(ty.body(), ty.binder(), Type::var(a));
    return Term::ty_lam(a, eta_expand(Term::ty_app(t, Type::var(a)), body_ty));
  }
  // Base or variable type: t is a neutral spine. The head stays as it is;
  // each term argument is expanded at the type the head expects there.
  struct Op {
    std::optional<Type> type_argument;
    std::optional<Term> term_argument;
  };
  std::vector<Op> reversed;
  Term current = t;
  while (current.is_app() || current.is_ty_app()) {
    if (current.is_app()) {
      reversed.push_back(Op{std::nullopt, current.arg()});
      current = current.fn();
    } else {
      reversed.push_back(Op{current.type(), std::nullopt});
      current = current.fn();
    }
  }
  Term out = current;
  Type spine_ty = annotated_type(current);
  for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
    if (it->type_argument) {
      out = Term::ty_app(out, *it->type_argument);
      spine_ty = type_substitute(spine_ty.body(), spine_ty.binder(), *it->type_argument);
    } else {
      out = Term::app(out, eta_expand(*it->term_argument, spine_ty.domain()));
      spine_ty = spine_ty.codomain();
    }
  }
  return out;
}

}  // namespace

Term eta_long(const Term& t) {
  if (!is_normal(t))
    fail(ErrorCode::NotNormal, "eta expansion expects a beta-normal term");
  return eta_expand(t, annotated_type(t));
}

NormalForm head_decompose(const Term& t) {
  if (!is_normal(t)) fail(ErrorCode::NotNormal, "term still has a redex");
  return decompose_rec(t);
}

Term reassemble(const NormalForm& nf) {
  Term out = nf.head;
  for (const auto& arg : nf.args) {
    if (arg.type_argument)
      out = Term::ty_app(out, *arg.type_argument);
    else
      out = Term::app(out, reassemble(*arg.term_argument));
  }
  for (auto it = nf.binders.rbegin(); it != nf.binders.rend(); ++it) {
    if (std::holds_alternative<NormalForm::TermBinder>(*it)) {
      const auto& binder = std::get<NormalForm::TermBinder>(*it);
      out = Term::lam(binder.name, binder.type, out);
    } else {
      out = Term::ty_lam(std::get<NormalForm::TypeBinder>(*it).name, out);
    }
  }
  return out;
}

}  // namespace mgl
