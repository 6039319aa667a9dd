#include "mgl/plurals.hpp"

#include "mgl/error.hpp"

namespace mgl {
namespace {

Term var(const char* name, const Type& type) { return Term::var(name, type); }

Term binary(const Signature& sig, const char* op, Term lhs, Term rhs) {
  Term head = Term::constant(op, *sig.constant_type(op));
  return Term::app(Term::app(std::move(head), std::move(lhs)), std::move(rhs));
}

Term quantify(const Signature& sig, const char* q, const Type& over, Term body_lam) {
  Term head = Term::ty_app(Term::constant(q, *sig.constant_type(q)), over);
  return Term::app(std::move(head), std::move(body_lam));
}

}  // namespace

Signature install_plural_operators(const Signature& sig) {
  if (!sig.has_sort("N"))
    fail(ErrorCode::MissingPrerequisite, "plural operators need the number sort N");
  Type expected_eq =
      Type::forall("a", Type::arrow(Type::var("a"),
                                    Type::arrow(Type::var("a"), Type::prop())));
  auto eq_type = sig.constant_type("eq");
  if (!eq_type || !type_eq(*eq_type, expected_eq))
    fail(ErrorCode::MissingPrerequisite,
         "plural operators need eq : " + to_string(expected_eq));

  Signature out = sig;
  install_logical_constants(out);

  Type a = Type::var("a");
  Type pred = Type::arrow(a, Type::prop());         // a -> t
  Type set_pred = Type::arrow(pred, Type::prop());  // (a -> t) -> t

  // q := Lam a. lam x:a. lam y:a. eq{a} x y
  {
    Term eq_a = Term::ty_app(Term::constant("eq", expected_eq), a);
    Term body = Term::app(Term::app(eq_a, var("x", a)), var("y", a));
    Term def = Term::ty_lam("a", Term::lam("x", a, Term::lam("y", a, body)));
    out.add_defined_constant(kIndividualAsSet,
                             Type::forall("a", Type::arrow(a, Type::arrow(a, Type::prop()))),
                             def);
  }

  // star := Lam a. lam P:a->t. lam Q:a->t. forall{a} (lam x:a. Q x => P x)
  {
    Term inner = binary(out, "implies", Term::app(var("Q", pred), var("x", a)),
                        Term::app(var("P", pred), var("x", a)));
    Term body = quantify(out, "forall", a, Term::lam("x", a, inner));
    Term def = Term::ty_lam("a", Term::lam("P", pred, Term::lam("Q", pred, body)));
    out.add_defined_constant(kDistributive,
                             Type::forall("a", Type::arrow(pred, Type::arrow(pred, Type::prop()))),
                             def);
  }

  // sharp := Lam a. lam R:(a->t)->t. lam S:(a->t)->t. forall{a->t} (lam P. S P => R P)
  {
    Term inner = binary(out, "implies", Term::app(var("S", set_pred), var("P", pred)),
                        Term::app(var("R", set_pred), var("P", pred)));
    Term body = quantify(out, "forall", pred, Term::lam("P", pred, inner));
    Term def = Term::ty_lam("a", Term::lam("R", set_pred, Term::lam("S", set_pred, body)));
    out.add_defined_constant(
        kSetDistributive,
        Type::forall("a", Type::arrow(set_pred, Type::arrow(set_pred, Type::prop()))),
        def);
  }

  // cover := Lam a. lam R:(a->t)->t. lam P:a->t.
  //            forall{a} (lam x:a. P x =>
  //              exists{a->t} (lam Q:a->t.
  //                Q x and ((forall{a} (lam y:a. Q y => P y)) and R Q)))
  {
    Term member = Term::app(var("Q", pred), var("x", a));
    Term subset_body = binary(out, "implies", Term::app(var("Q", pred), var("y", a)),
                              Term::app(var("P", pred), var("y", a)));
    Term subset = quantify(out, "forall", a, Term::lam("y", a, subset_body));
    Term in_family = Term::app(var("R", set_pred), var("Q", pred));
    Term witness = binary(out, "and", member, binary(out, "and", subset, in_family));
    Term exists_part = quantify(out, "exists", pred, Term::lam("Q", pred, witness));
    Term covered =
        binary(out, "implies", Term::app(var("P", pred), var("x", a)), exists_part);
    Term body = quantify(out, "forall", a, Term::lam("x", a, covered));
    Term def = Term::ty_lam("a", Term::lam("R", set_pred, Term::lam("P", pred, body)));
    out.add_defined_constant(
        kCovering, Type::forall("a", Type::arrow(set_pred, Type::arrow(pred, Type::prop()))),
        def);
  }

  // card : Pi a. (a -> t) -> N  stays opaque; no rules are provided for it.
  out.add_constant(kCardinality, Type::forall("a", Type::arrow(pred, Type::base("N"))));

  out.validate();
  return out;
}

}  // namespace mgl
