#include "mgl/logic.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "mgl/check.hpp"
#include "mgl/error.hpp"
#include "mgl/reduction.hpp"

namespace mgl {

using nlohmann::json;

namespace {

struct SpineOp {
  std::optional<Type> type_argument;
  std::optional<Term> term_argument;
};

// Splits a beta-normal application spine into head and arguments.
Term split_spine(const Term& t, std::vector<SpineOp>& ops) {
  Term current = t;
  std::vector<SpineOp> reversed;
  while (current.is_app() || current.is_ty_app()) {
    if (current.is_app()) {
      reversed.push_back(SpineOp{std::nullopt, current.arg()});
      current = current.fn();
    } else {
      reversed.push_back(SpineOp{current.type(), std::nullopt});
      current = current.fn();
    }
  }
  ops.assign(reversed.rbegin(), reversed.rend());
  return current;
}

bool is_choice_operator(const Signature& sig, const std::string& name) {
  if (is_hilbert_operator(name)) return true;
  auto declared = sig.constant_type(name);
  return declared && type_eq(*declared, hilbert_type());
}

struct Converter {
  const Signature& sig;

  LogicTerm make_hilbert(const Term& head, const Type& over, const Term& predicate) {
    LogicTerm out;
    out.kind = LogicTerm::Kind::Hilbert;
    out.name = head.name();
    out.op_type = head.type();
    out.bound_type = over;
    std::vector<Formula> body;
    bind_predicate(predicate, over, out.bound, body);
    out.body = std::make_shared<const Formula>(std::move(body.front()));
    return out;
  }

  Formula formula(const Term& t) {
    std::vector<SpineOp> ops;
    Term head = split_spine(t, ops);

    if (head.is_lam() || head.is_ty_lam())
      fail(ErrorCode::NonLogicalHead, "abstraction where a proposition was expected");

    const std::string& name = head.name();

    if (head.is_const() && is_connective(name)) {
      Formula out;
      out.kind = Formula::Kind::Connective;
      out.connective = name;
      for (const auto& op : ops) {
        if (!op.term_argument)
          fail(ErrorCode::NonLogicalHead, "connective applied to a type");
        out.operands.push_back(formula(*op.term_argument));
      }
      std::size_t expected = name == "not" ? 1 : 2;
      if (out.operands.size() != expected)
        fail(ErrorCode::NonLogicalHead, "connective " + name + " not fully applied");
      return out;
    }

    if (head.is_const() && is_quantifier(name)) {
      if (ops.size() != 2 || !ops[0].type_argument || !ops[1].term_argument)
        fail(ErrorCode::NonLogicalHead, "quantifier " + name + " not fully applied");
      Formula out;
      out.kind = Formula::Kind::Quant;
      out.quantifier = name;
      out.var_type = *ops[0].type_argument;
      bind_predicate(*ops[1].term_argument, out.var_type, out.var, out.quant_body);
      return out;
    }

    if (head.is_const() && is_choice_operator(sig, name)) {
      // An applied generic element (c{A}(P)) a1 ... ak of type t.
      if (ops.size() < 2 || !ops[0].type_argument || !ops[1].term_argument)
        fail(ErrorCode::NonLogicalHead, "choice operator " + name + " not fully applied");
      Formula out;
      out.kind = Formula::Kind::Atom;
      out.predicate_term = std::make_shared<const LogicTerm>(
          make_hilbert(head, *ops[0].type_argument, *ops[1].term_argument));
      for (std::size_t i = 2; i < ops.size(); ++i) {
        if (!ops[i].term_argument)
          fail(ErrorCode::NonLogicalHead, "type application of a generic element");
        out.args.push_back(term(*ops[i].term_argument));
      }
      return out;
    }

    if (head.is_const() && !sig.has_constant(name))
      fail(ErrorCode::NonLogicalHead, "constant " + name + " is not declared");

    Formula out;
    out.kind = Formula::Kind::Atom;
    out.predicate = name;
    out.predicate_type = head.type();
    out.predicate_is_var = head.is_var();
    for (const auto& op : ops) {
      if (op.type_argument)
        out.type_args.push_back(*op.type_argument);
      else
        out.args.push_back(term(*op.term_argument));
    }
    return out;
  }

  // Fills `var` and `body` from a predicate-position argument, eta-expanding
  // neutral terms on the fly.
  void bind_predicate(const Term& p, const Type& over, std::string& var,
                      std::vector<Formula>& body) {
    if (p.is_lam()) {
      var = p.name();
      body.push_back(formula(p.body()));
      return;
    }
    std::set<std::string> avoid = all_term_var_names(p);
    var = fresh_name("x", avoid);
    body.push_back(formula(Term::app(p, Term::var(var, over))));
  }

  LogicTerm term(const Term& t) {
    if (t.is_lam()) {
      Type body_type = annotated_type(t.body());
      if (!body_type.is_prop())
        fail(ErrorCode::NonLogicalHead,
             "abstraction argument with non-propositional body of type " +
                 to_string(body_type));
      LogicTerm out;
      out.kind = LogicTerm::Kind::Abs;
      out.bound = t.name();
      out.bound_type = t.type();
      out.body = std::make_shared<const Formula>(formula(t.body()));
      return out;
    }
    if (t.is_ty_lam())
      fail(ErrorCode::NonLogicalHead, "type abstraction in argument position");

    Type t_type = annotated_type(t);
    if (t_type.is_prop()) {
      LogicTerm out;
      out.kind = LogicTerm::Kind::Prop;
      out.body = std::make_shared<const Formula>(formula(t));
      return out;
    }

    std::vector<SpineOp> ops;
    Term head = split_spine(t, ops);

    if (head.is_const() && is_choice_operator(sig, head.name())) {
      if (ops.size() < 2 || !ops[0].type_argument || !ops[1].term_argument)
        fail(ErrorCode::NonLogicalHead,
             "choice operator " + head.name() + " not fully applied");
      LogicTerm hilbert =
          make_hilbert(head, *ops[0].type_argument, *ops[1].term_argument);
      if (ops.size() == 2) return hilbert;
      LogicTerm out;
      out.kind = LogicTerm::Kind::App;
      out.head_term = std::make_shared<const LogicTerm>(std::move(hilbert));
      for (std::size_t i = 2; i < ops.size(); ++i) {
        if (!ops[i].term_argument)
          fail(ErrorCode::NonLogicalHead, "type application of a generic element");
        out.args.push_back(term(*ops[i].term_argument));
      }
      return out;
    }

    if (head.is_const() && !sig.has_constant(head.name()))
      fail(ErrorCode::NonLogicalHead, "constant " + head.name() + " is not declared");

    LogicTerm out;
    out.name = head.name();
    out.type = head.type();
    if (ops.empty()) {
      out.kind = head.is_var() ? LogicTerm::Kind::Var : LogicTerm::Kind::Const;
      return out;
    }
    out.kind = LogicTerm::Kind::App;
    out.head_is_var = head.is_var();
    for (const auto& op : ops) {
      if (op.type_argument)
        out.type_args.push_back(*op.type_argument);
      else
        out.args.push_back(term(*op.term_argument));
    }
    return out;
  }
};

}  // namespace

Formula term_to_formula(const Signature& sig, const Term& term) {
  if (!is_normal(term))
    fail(ErrorCode::NotNormal, "formula conversion expects a beta-normal term");
  Type type = annotated_type(term);
  if (!type.is_prop())
    fail(ErrorCode::BadInput, "expected a term of type t, got " + to_string(type));
  Converter converter{sig};
  return converter.formula(term);
}

namespace {

Term rebuild_atom_head(const std::string& name, const Type& type, bool is_var) {
  return is_var ? Term::var(name, type) : Term::constant(name, type);
}

}  // namespace

static Term logic_term_to_term(const LogicTerm& term);

Term formula_to_term(const Formula& formula) {
  switch (formula.kind) {
    case Formula::Kind::Atom: {
      Term out = rebuild_atom_head(formula.predicate, formula.predicate_type,
                                   formula.predicate_is_var);
      for (const auto& ty : formula.type_args) out = Term::ty_app(out, ty);
      for (const auto& arg : formula.args) out = Term::app(out, logic_term_to_term(arg));
      return out;
    }
    case Formula::Kind::Connective: {
      Type prop = Type::prop();
      Type binary = Type::arrow(prop, Type::arrow(prop, prop));
      Type unary = Type::arrow(prop, prop);
      Term head = Term::constant(formula.connective,
                                 formula.connective == "not" ? unary : binary);
      Term out = head;
      for (const auto& operand : formula.operands)
        out = Term::app(out, formula_to_term(operand));
      return out;
    }
    case Formula::Kind::Quant: {
      Term head = Term::ty_app(Term::constant(formula.quantifier, quantifier_type()),
                               formula.var_type);
      Term body = formula_to_term(formula.quant_body.front());
      return Term::app(head, Term::lam(formula.var, formula.var_type, body));
    }
  }
  fail(ErrorCode::BadInput, "malformed formula node");
}

static Term logic_term_to_term(const LogicTerm& term) {
  switch (term.kind) {
    case LogicTerm::Kind::Var:
      return Term::var(term.name, term.type);
    case LogicTerm::Kind::Const:
      return Term::constant(term.name, term.type);
    case LogicTerm::Kind::App: {
      Term out = rebuild_atom_head(term.name, term.type, term.head_is_var);
      for (const auto& ty : term.type_args) out = Term::ty_app(out, ty);
      for (const auto& arg : term.args) out = Term::app(out, logic_term_to_term(arg));
      return out;
    }
    case LogicTerm::Kind::Hilbert: {
      Term head = Term::ty_app(Term::constant(term.name, term.op_type), term.bound_type);
      Term body = formula_to_term(*term.body);
      return Term::app(head, Term::lam(term.bound, term.bound_type, body));
    }
    case LogicTerm::Kind::Abs:
      return Term::lam(term.bound, term.bound_type, formula_to_term(*term.body));
    case LogicTerm::Kind::Prop:
      return formula_to_term(*term.body);
  }
  fail(ErrorCode::BadInput, "malformed logic term");
}

std::vector<Formula> presuppositions(const Signature& sig, const Term& term) {
  std::vector<Formula> out;
  std::map<std::string, bool> seen;

  struct Walk {
    const Signature& sig;
    std::vector<Formula>& out;
    std::map<std::string, bool>& seen;

    void consider(const Term& t) {
      // Looking for c{A}(P) with c one of the presupposing choice operators.
      if (!t.is_app() || !t.fn().is_ty_app() || !t.fn().fn().is_const()) return;
      const std::string& op = t.fn().fn().name();
      if (op != "iota" && op != "epsilon" && op != "eta") return;
      if (!free_vars(t).empty()) return;  // only closed generic elements presuppose
      Term applied = normalize(Term::app(t.arg(), t));
      Formula presup = term_to_formula(sig, applied);
      std::string key = alpha_key(applied);
      if (seen.emplace(key, true).second) out.push_back(std::move(presup));
    }

    void go(const Term& t) {
      consider(t);
      switch (t.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
          return;
        case Term::Kind::App:
          go(t.fn());
          go(t.arg());
          return;
        case Term::Kind::TyApp:
        case Term::Kind::Lam:
        case Term::Kind::TyLam:
          go(t.body());
          return;
      }
    }
  } walk{sig, out, seen};
  walk.go(term);
  return out;
}

Term tau_epsilon_rewrite(const Term& term, TauEpsilonDirection direction) {
  const std::string source = direction == TauEpsilonDirection::TauToEpsilon ? "tau" : "epsilon";
  const std::string target = direction == TauEpsilonDirection::TauToEpsilon ? "epsilon" : "tau";

  struct Rewrite {
    const std::string& source;
    const std::string& target;

    Term go(const Term& t) {
      Term rewritten = rebuild(t);
      // c{A}(P)  ->  c'{A}(lam x:A. not (P x))
      if (rewritten.is_app() && rewritten.fn().is_ty_app() &&
          rewritten.fn().fn().is_const() && rewritten.fn().fn().name() == source) {
        Type over = rewritten.fn().type();
        Term p = rewritten.arg();
        std::set<std::string> avoid = all_term_var_names(p);
        std::string x = fresh_name("x", avoid);
        Term negated = Term::app(
            Term::constant("not", Type::arrow(Type::prop(), Type::prop())),
            normalize(Term::app(p, Term::var(x, over))));
        Term head = Term::ty_app(Term::constant(target, rewritten.fn().fn().type()), over);
        return Term::app(head, Term::lam(x, over, negated));
      }
      return rewritten;
    }

    Term rebuild(const Term& t) {
      switch (t.kind()) {
        case Term::Kind::Var:
        case Term::Kind::Const:
          return t;
        case Term::Kind::App:
          return Term::app(go(t.fn()), go(t.arg()));
        case Term::Kind::TyApp:
          return Term::ty_app(go(t.fn()), t.type());
        case Term::Kind::Lam:
          return Term::lam(t.name(), t.type(), go(t.body()));
        case Term::Kind::TyLam:
          return Term::ty_lam(t.name(), go(t.body()));
      }
      fail(ErrorCode::BadInput, "malformed term node");
    }
  } rewrite{source, target};
  return rewrite.go(term);
}

namespace {

struct Symbols {
  const char* conj;
  const char* disj;
  const char* impl;
  const char* neg;
  const char* forall_sym;
  const char* exists_sym;
  const char* lambda_sym;
  bool unicode;
};

const Symbols kUnicode{"∧", "∨", "⇒", "¬", "∀", "∃",
                       "λ", true};
const Symbols kAscii{"and", "or", "=>", "not", "forall", "exists", "lam", false};

std::string operator_name(const std::string& name, bool unicode) {
  if (!unicode) return name;
  if (name == "iota") return "ι";
  if (name == "epsilon") return "ε";
  if (name == "tau") return "τ";
  if (name == "eta") return "η";
  return name;
}

std::string render_formula(const Formula& f, const Symbols& sym);

std::string render_logic_term(const LogicTerm& t, const Symbols& sym) {
  switch (t.kind) {
    case LogicTerm::Kind::Var:
    case LogicTerm::Kind::Const:
      return t.name;
    case LogicTerm::Kind::App: {
      std::string out = t.name;
      for (const auto& ty : t.type_args) out += "{" + to_string(ty) + "}";
      out += "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += render_logic_term(t.args[i], sym);
      }
      out += ")";
      return out;
    }
    case LogicTerm::Kind::Hilbert: {
      const Formula& body = *t.body;
      bool compact = body.kind == Formula::Kind::Atom && !body.predicate_is_var &&
                     body.args.size() == 1 &&
                     body.args[0].kind == LogicTerm::Kind::Var &&
                     body.args[0].name == t.bound;
      std::string op = operator_name(t.name, sym.unicode);
      if (compact) return op + "(" + body.predicate + ")";
      return op + " " + t.bound + ":" + to_string(t.bound_type) + " (" +
             render_formula(body, sym) + ")";
    }
    case LogicTerm::Kind::Abs:
      return std::string(sym.lambda_sym) + (sym.unicode ? "" : " ") + t.bound + ":" +
             to_string(t.bound_type) + " (" + render_formula(*t.body, sym) + ")";
    case LogicTerm::Kind::Prop:
      return "(" + render_formula(*t.body, sym) + ")";
  }
  return "?";
}

std::string render_atom(const Formula& f, const Symbols& sym) {
  if (f.predicate == "eq" && f.args.size() == 2) {
    return render_logic_term(f.args[0], sym) + " = " + render_logic_term(f.args[1], sym);
  }
  std::string out = f.predicate;
  for (const auto& ty : f.type_args) out += "{" + to_string(ty) + "}";
  if (f.args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i) out += ", ";
    out += render_logic_term(f.args[i], sym);
  }
  out += ")";
  return out;
}

std::string render_operand(const Formula& f, const Symbols& sym) {
  std::string body = render_formula(f, sym);
  if (f.kind == Formula::Kind::Atom) return body;
  return "(" + body + ")";
}

std::string render_formula(const Formula& f, const Symbols& sym) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return render_atom(f, sym);
    case Formula::Kind::Connective: {
      if (f.connective == "not") return std::string(sym.neg) + render_operand(f.operands[0], sym);
      const char* op = f.connective == "and" ? sym.conj
                       : f.connective == "or" ? sym.disj
                                              : sym.impl;
      return render_operand(f.operands[0], sym) + " " + op + " " +
             render_operand(f.operands[1], sym);
    }
    case Formula::Kind::Quant: {
      const char* q = f.quantifier == "forall" ? sym.forall_sym : sym.exists_sym;
      std::string head = std::string(q) + (sym.unicode ? "" : " ") + f.var + ":" +
                         to_string(f.var_type) + " ";
      const Formula& body = f.quant_body.front();
      if (body.kind == Formula::Kind::Connective)
        return head + "(" + render_formula(body, sym) + ")";
      return head + render_formula(body, sym);
    }
  }
  return "?";
}

json logic_term_json(const LogicTerm& t);

json formula_json(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      json out{{"kind", "atom"}, {"predicate", f.predicate}};
      out["args"] = json::array();
      for (const auto& arg : f.args) out["args"].push_back(logic_term_json(arg));
      if (!f.type_args.empty()) {
        out["type_args"] = json::array();
        for (const auto& ty : f.type_args) out["type_args"].push_back(to_string(ty));
      }
      return out;
    }
    case Formula::Kind::Connective: {
      json out{{"kind", "connective"}, {"op", f.connective}};
      out["operands"] = json::array();
      for (const auto& operand : f.operands) out["operands"].push_back(formula_json(operand));
      return out;
    }
    case Formula::Kind::Quant: {
      return json{{"kind", "quant"},
                  {"op", f.quantifier},
                  {"var", f.var},
                  {"var_type", to_string(f.var_type)},
                  {"body", formula_json(f.quant_body.front())}};
    }
  }
  return json();
}

json logic_term_json(const LogicTerm& t) {
  switch (t.kind) {
    case LogicTerm::Kind::Var:
      return json{{"kind", "var"}, {"name", t.name}};
    case LogicTerm::Kind::Const:
      return json{{"kind", "const"}, {"name", t.name}};
    case LogicTerm::Kind::App: {
      json out{{"kind", "app"}, {"fn", t.name}};
      out["args"] = json::array();
      for (const auto& arg : t.args) out["args"].push_back(logic_term_json(arg));
      if (!t.type_args.empty()) {
        out["type_args"] = json::array();
        for (const auto& ty : t.type_args) out["type_args"].push_back(to_string(ty));
      }
      return out;
    }
    case LogicTerm::Kind::Hilbert:
      return json{{"kind", "hilbert"},
                  {"op", t.name},
                  {"var", t.bound},
                  {"var_type", to_string(t.bound_type)},
                  {"body", formula_json(*t.body)}};
    case LogicTerm::Kind::Abs:
      return json{{"kind", "abs"},
                  {"var", t.bound},
                  {"var_type", to_string(t.bound_type)},
                  {"body", formula_json(*t.body)}};
    case LogicTerm::Kind::Prop:
      return json{{"kind", "prop"}, {"body", formula_json(*t.body)}};
  }
  return json();
}

}  // namespace

std::string render(const Formula& formula, LogicFormat format) {
  switch (format) {
    case LogicFormat::Unicode:
      return render_formula(formula, kUnicode);
    case LogicFormat::Ascii:
      return render_formula(formula, kAscii);
    case LogicFormat::Json:
      return formula_json(formula).dump();
  }
  return "";
}

bool formula_eq(const Formula& a, const Formula& b) {
  return alpha_eq(formula_to_term(a), formula_to_term(b));
}

}  // namespace mgl
