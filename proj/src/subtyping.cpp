#include "mgl/subtyping.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mgl/check.hpp"
#include "mgl/error.hpp"
#include "mgl/reduction.hpp"

namespace mgl {

const char* to_string(SubtypeRule rule) {
  switch (rule) {
    case SubtypeRule::Reflexivity: return "Reflexivity";
    case SubtypeRule::BaseEdge: return "BaseEdge";
    case SubtypeRule::Transitivity: return "Transitivity";
    case SubtypeRule::ArrowCoCo: return "ArrowCoCo";
    case SubtypeRule::ArrowCovariant: return "ArrowCovariant";
    case SubtypeRule::ArrowContravariant: return "ArrowContravariant";
    case SubtypeRule::ForallIntro: return "ForallIntro";
    case SubtypeRule::ForallElim: return "ForallElim";
  }
  return "?";
}

namespace {

using DerivationPtr = std::shared_ptr<const SubtypeDerivation>;

DerivationPtr make_node(SubtypeDerivation d) {
  return std::make_shared<const SubtypeDerivation>(std::move(d));
}

SubtypeDerivation reflexivity(const Type& s) {
  return SubtypeDerivation{SubtypeRule::Reflexivity, s, s, {}, {}, {}, {}};
}

// Chain of declared edges from one sort to another, empty if unreachable.
std::optional<std::vector<BaseCoercion>> edge_path(const Signature& sig,
                                                   const std::string& from,
                                                   const std::string& to) {
  if (auto direct = sig.coercion_name(from, to))
    return std::vector<BaseCoercion>{BaseCoercion{from, to, *direct}};
  // Breadth-first search; for composition-closed graphs the direct edge above
  // always exists, this handles unclosed signatures gracefully.
  std::map<std::string, BaseCoercion> parent;
  std::vector<std::string> queue{from};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& edge : sig.base_coercions()) {
      if (edge.from != queue[i] || parent.count(edge.to) || edge.to == from) continue;
      parent.emplace(edge.to, edge);
      if (edge.to == to) {
        std::vector<BaseCoercion> path;
        std::string at = to;
        while (at != from) {
          path.push_back(parent.at(at));
          at = parent.at(at).from;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(edge.to);
    }
  }
  return std::nullopt;
}

struct Search {
  const Signature& sig;
  int depth_left = 64;

  std::optional<SubtypeDerivation> derive(const Type& s, const Type& t) {
    if (depth_left <= 0) return std::nullopt;
    --depth_left;
    auto out = derive_inner(s, t);
    ++depth_left;
    return out;
  }

  std::optional<SubtypeDerivation> derive_inner(const Type& s, const Type& t) {
    if (type_eq(s, t)) return reflexivity(s);

    if (t.is_forall()) {
      // The binder must not capture anything free in s.
      std::string binder = t.binder();
      Type body = t.body();
      if (type_var_free_in(binder, s)) {
        std::set<std::string> avoid = free_type_vars(s);
        auto body_frees = free_type_vars(body);
        avoid.insert(body_frees.begin(), body_frees.end());
        binder = fresh_name(binder, avoid);
        body = type_substitute(t.body(), t.binder(), Type::var(binder));
      }
      if (auto premise = derive(s, body)) {
        return SubtypeDerivation{SubtypeRule::ForallIntro, s, t,
                                 {make_node(std::move(*premise))},
                                 {}, binder, {}};
      }
      return std::nullopt;
    }

    if (s.is_base() && t.is_base() && !s.is_prop() && !t.is_prop()) {
      auto path = edge_path(sig, s.name(), t.name());
      if (!path) return std::nullopt;
      SubtypeDerivation chain{SubtypeRule::BaseEdge, Type::base(path->front().from),
                              Type::base(path->front().to), {},
                              path->front().name, {}, {}};
      for (std::size_t i = 1; i < path->size(); ++i) {
        SubtypeDerivation next{SubtypeRule::BaseEdge, Type::base((*path)[i].from),
                               Type::base((*path)[i].to), {},
                               (*path)[i].name, {}, {}};
        Type from = chain.sub, to = next.super;
        chain = SubtypeDerivation{SubtypeRule::Transitivity, from, to,
                                  {make_node(std::move(chain)), make_node(std::move(next))},
                                  {}, {}, {}};
      }
      return chain;
    }

    if (s.is_arrow() && t.is_arrow()) {
      bool domains_equal = type_eq(s.domain(), t.domain());
      bool codomains_equal = type_eq(s.codomain(), t.codomain());
      if (domains_equal) {
        if (auto cod = derive(s.codomain(), t.codomain())) {
          return SubtypeDerivation{SubtypeRule::ArrowCovariant, s, t,
                                   {make_node(std::move(*cod))}, {}, {}, {}};
        }
        return std::nullopt;
      }
      if (codomains_equal) {
        if (auto dom = derive(t.domain(), s.domain())) {
          return SubtypeDerivation{SubtypeRule::ArrowContravariant, s, t,
                                   {make_node(std::move(*dom))}, {}, {}, {}};
        }
        return std::nullopt;
      }
      auto cod = derive(s.codomain(), t.codomain());
      if (!cod) return std::nullopt;
      auto dom = derive(t.domain(), s.domain());
      if (!dom) return std::nullopt;
      return SubtypeDerivation{SubtypeRule::ArrowCoCo, s, t,
                               {make_node(std::move(*cod)), make_node(std::move(*dom))},
                               {}, {}, {}};
    }

    if (s.is_forall()) {
      // Instantiate and continue: S < S'[W] by elimination on a reflexive
      // premise, then transitivity toward the goal.
      std::vector<Type> candidates;
      candidates.push_back(t);
      collect_subterm_types(t, candidates);
      for (const auto& sort : sig.sorts()) candidates.push_back(Type::base(sort));
      candidates.push_back(Type::prop());
      std::set<std::string> seen;
      for (const auto& w : candidates) {
        if (!seen.insert(alpha_key(w)).second) continue;
        Type instantiated = type_substitute(s.body(), s.binder(), w);
        SubtypeDerivation elim{SubtypeRule::ForallElim, s, instantiated,
                               {make_node(reflexivity(s))}, {}, {}, w};
        if (type_eq(instantiated, t)) return elim;
        if (auto rest = derive(instantiated, t)) {
          return SubtypeDerivation{SubtypeRule::Transitivity, s, t,
                                   {make_node(std::move(elim)),
                                    make_node(std::move(*rest))},
                                   {}, {}, {}};
        }
      }
      return std::nullopt;
    }

    return std::nullopt;
  }

  static void collect_subterm_types(const Type& t, std::vector<Type>& out) {
    out.push_back(t);
    switch (t.kind()) {
      case Type::Kind::Arrow:
        collect_subterm_types(t.domain(), out);
        collect_subterm_types(t.codomain(), out);
        return;
      case Type::Kind::Forall:
        collect_subterm_types(t.body(), out);
        return;
      default:
        return;
    }
  }
};

struct Extraction {
  int counter = 0;

  std::string fresh(const char* base) { return std::string(base) + std::to_string(++counter); }

  // Returns the coercion body and the name of its single free variable.
  std::pair<Term, std::string> go(const SubtypeDerivation& d) {
    switch (d.rule) {
      case SubtypeRule::Reflexivity: {
        std::string x = fresh("x");
        return {Term::var(x, d.sub), x};
      }
      case SubtypeRule::BaseEdge: {
        std::string x = fresh("x");
        Term c = Term::constant(*d.edge_name, Type::arrow(d.sub, d.super));
        return {Term::app(c, Term::var(x, d.sub)), x};
      }
      case SubtypeRule::Transitivity: {
        auto [t, xt] = go(*d.premises[0]);
        auto [u, xu] = go(*d.premises[1]);
        return {substitute(u, xu, t), xt};
      }
      case SubtypeRule::ArrowCoCo: {
        // premises: codomain A < B (body t over x), domain C < D (body u over z);
        // f : D -> A yields lam z:C. t[x := f u].
        auto [t, xt] = go(*d.premises[0]);
        auto [u, xu] = go(*d.premises[1]);
        std::string f = fresh("f");
        Term fn = Term::var(f, d.sub);
        return {Term::lam(xu, d.super.domain(), substitute(t, xt, Term::app(fn, u))), f};
      }
      case SubtypeRule::ArrowCovariant: {
        auto [t, xt] = go(*d.premises[0]);
        std::string f = fresh("f");
        std::string w = fresh("w");
        Term fn = Term::var(f, d.sub);
        Term applied = Term::app(fn, Term::var(w, d.super.domain()));
        return {Term::lam(w, d.super.domain(), substitute(t, xt, applied)), f};
      }
      case SubtypeRule::ArrowContravariant: {
        auto [t, xt] = go(*d.premises[0]);
        std::string g = fresh("g");
        Term fn = Term::var(g, d.sub);
        return {Term::lam(xt, d.super.domain(), Term::app(fn, t)), g};
      }
      case SubtypeRule::ForallIntro: {
        auto [t, xt] = go(*d.premises[0]);
        return {Term::ty_lam(*d.binder, t), xt};
      }
      case SubtypeRule::ForallElim: {
        auto [t, xt] = go(*d.premises[0]);
        return {Term::ty_app(t, *d.instantiation), xt};
      }
    }
    fail(ErrorCode::BadInput, "malformed derivation node");
  }
};

}  // namespace

std::optional<SubtypeDerivation> derive_subtype(const Signature& sig, const Type& s,
                                                const Type& t) {
  Search search{sig};
  return search.derive(s, t);
}

CoercionTerm coercion_term(const SubtypeDerivation& derivation) {
  Extraction extraction;
  auto [term, var] = extraction.go(derivation);
  return CoercionTerm{term, var, derivation.sub, derivation.super};
}

std::optional<Term> coercive_apply(const Signature& sig, const Term& f, const Term& u) {
  Type f_type = check_type_with_frees(sig, f);
  Type u_type = check_type_with_frees(sig, u);
  if (!f_type.is_arrow()) return std::nullopt;
  if (type_eq(f_type.domain(), u_type)) return Term::app(f, u);
  auto derivation = derive_subtype(sig, u_type, f_type.domain());
  if (!derivation) return std::nullopt;
  CoercionTerm coercion = coercion_term(*derivation);
  return Term::app(f, substitute(coercion.term, coercion.source_var, u));
}

namespace {

void render_rec(std::ostringstream& os, const SubtypeDerivation& d, int indent) {
  os << std::string(indent * 2, ' ') << to_string(d.rule) << ": "
     << to_string(d.sub) << " < " << to_string(d.super);
  if (d.edge_name) os << "  [" << *d.edge_name << "]";
  if (d.instantiation) os << "  [W := " << to_string(*d.instantiation) << "]";
  os << '\n';
  for (const auto& premise : d.premises) render_rec(os, *premise, indent + 1);
}

}  // namespace

std::string render_derivation(const SubtypeDerivation& derivation) {
  std::ostringstream os;
  render_rec(os, derivation, 0);
  return os.str();
}

namespace {

// Coercion enumeration for the coherence check. Works with coercion bodies
// over the fixed variable "x" typed at the pair's source; composition is
// substitution. Sets are memoized per (source, target, depth).
class CoherenceSearch {
 public:
  CoherenceSearch(const Signature& sig, int max_depth) : sig_(sig), max_depth_(max_depth) {
    for (const auto& sort : sig.sorts()) universe_.push_back(Type::base(sort));
    for (const auto& sort : sig.sorts())
      universe_.push_back(Type::forall("X", Type::base(sort)));
  }

  std::vector<Term> coercions(const Type& s, const Type& t) { return terms(s, t, max_depth_); }

 private:
  std::vector<Term> terms(const Type& s, const Type& t, int depth) {
    std::string key = alpha_key(s) + "|" + alpha_key(t) + "|" + std::to_string(depth);
    auto memo = memo_.find(key);
    if (memo != memo_.end()) return memo->second;
    memo_.emplace(key, std::vector<Term>{});  // cut off cycles while computing

    std::map<std::string, Term> out;
    auto add = [&](const Term& candidate) {
      Term normal = normalize(candidate);
      out.emplace(alpha_key(normal), normal);
    };

    if (type_eq(s, t)) add(Term::var("x", s));
    if (s.is_base() && t.is_base()) {
      if (auto edge = sig_.coercion_name(s.name(), t.name())) {
        Term c = Term::constant(*edge, Type::arrow(s, t));
        add(Term::app(c, Term::var("x", s)));
      }
    }
    if (depth > 0) {
      // Transitivity through every universe member.
      for (const auto& middle : universe_) {
        for (const auto& first : terms(s, middle, depth - 1)) {
          for (const auto& second : terms(middle, t, depth - 1)) {
            add(substitute(second, "x", first));
          }
        }
      }
      // Quantifier introduction.
      if (t.is_forall() && !type_var_free_in(t.binder(), s)) {
        for (const auto& body : terms(s, t.body(), depth - 1))
          add(Term::ty_lam(t.binder(), body));
      }
      // Quantifier elimination through derivable quantified types.
      for (const auto& quantified : universe_) {
        if (!quantified.is_forall()) continue;
        for (const auto& w : universe_) {
          if (w.is_forall()) continue;
          Type instantiated =
              type_substitute(quantified.body(), quantified.binder(), w);
          if (!type_eq(instantiated, t)) continue;
          for (const auto& body : terms(s, quantified, depth - 1))
            add(Term::ty_app(body, w));
        }
      }
    }

    std::vector<Term> result;
    result.reserve(out.size());
    for (auto& [_, term] : out) result.push_back(term);
    memo_[key] = result;
    return result;
  }

  const Signature& sig_;
  int max_depth_;
  std::vector<Type> universe_;
  std::map<std::string, std::vector<Term>> memo_;
};

// Collapses a chain of base-edge constants applied to x into the single
// declared composite, using the closure edges of the signature.
Term collapse_chain(const Signature& sig, const Term& t) {
  std::vector<std::string> names;  // innermost first
  Term current = t;
  while (current.is_app() && current.fn().is_const()) {
    names.push_back(current.fn().name());
    current = current.arg();
  }
  if (!current.is_var()) return t;
  std::reverse(names.begin(), names.end());

  // Recover the sort path from the edge constants.
  std::vector<std::string> path;
  for (const auto& name : names) {
    const BaseCoercion* edge = nullptr;
    for (const auto& candidate : sig.base_coercions())
      if (candidate.name == name) edge = &candidate;
    if (!edge) return t;  // not a pure chain of base edges
    if (path.empty()) path.push_back(edge->from);
    if (path.back() != edge->from) return t;
    path.push_back(edge->to);
  }
  if (path.size() <= 2) return t;
  auto direct = sig.coercion_name(path.front(), path.back());
  if (!direct) return t;
  Type from = Type::base(path.front());
  Type to = Type::base(path.back());
  return Term::app(Term::constant(*direct, Type::arrow(from, to)), Term::var("x", from));
}

}  // namespace

CoherenceReport check_coherence(const Signature& sig, int max_depth) {
  CoherenceReport report;
  report.max_depth = max_depth;
  CoherenceSearch search(sig, max_depth);

  for (const auto& from : sig.sorts()) {
    for (const auto& to : sig.sorts()) {
      Type s = Type::base(from);
      Type t = Type::base(to);
      if (from != to && !edge_path(sig, from, to)) continue;
      CoherencePair pair;
      pair.from = from;
      pair.to = to;
      pair.raw_normal_forms = search.coercions(s, t);
      pair.derivable = !pair.raw_normal_forms.empty();

      std::map<std::string, Term> collapsed;
      for (const auto& term : pair.raw_normal_forms) {
        Term reduced = collapse_chain(sig, term);
        collapsed.emplace(alpha_key(reduced), reduced);
      }
      for (auto& [_, term] : collapsed) pair.collapsed_forms.push_back(term);
      pair.unique = pair.collapsed_forms.size() == 1;

      if (pair.unique) {
        Term expected = from == to
                            ? Term::var("x", s)
                            : Term::app(Term::constant(*sig.coercion_name(from, to),
                                                       Type::arrow(s, t)),
                                        Term::var("x", s));
        pair.matches_declared = alpha_eq(pair.collapsed_forms.front(), expected);
      }
      if (pair.derivable && (!pair.unique || !pair.matches_declared))
        report.all_unique = false;
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace mgl
