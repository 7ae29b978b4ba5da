#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relic/signature.hpp"

namespace relic {

// Variable occurrence: bound >= 0 is a De Bruijn index (0 = innermost
// binder); bound < 0 means free, identified by name.  Surface names are
// kept on binders and occurrences for rendering only.
struct VarRef {
  int bound = -1;
  std::string name;
};

enum class FKind { True, False, Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  std::string sym;           // Atom: relation symbol
  std::vector<VarRef> args;  // Atom: arguments; Eq: exactly two
  FormulaPtr lhs, rhs;       // connectives (Not uses lhs only)
  std::string var;           // quantifiers: surface name of the bound variable
  FormulaPtr body;
};

// Constructors.  Programmatic trees may use named variables throughout and
// call bind_formula once at the end to resolve De Bruijn indices.
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(std::string sym, std::vector<std::string> vars);
FormulaPtr f_eq(std::string a, std::string b);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);
// Folds over a list; empty list gives the unit (true for and, false for or).
FormulaPtr f_and_all(std::vector<FormulaPtr> fs);
FormulaPtr f_or_all(std::vector<FormulaPtr> fs);

// Resolves every named occurrence that is in scope of a matching binder to
// its De Bruijn index (innermost wins); other occurrences stay free.
FormulaPtr bind_formula(const FormulaPtr& f);
// Same, with an initial pseudo-binder scope: occurrences of scope[i] resolve
// as if bound by an i-th outer binder (evaluators preload the environment).
FormulaPtr bind_formula_scoped(const FormulaPtr& f, const std::vector<std::string>& scope);

// Grammar:  forall v. f | exists v. f | f & f | f "|" f | f -> f | f <-> f |
//           !f | Sym(v,...) | v = v | true | false | (f)
// Precedence ! > & > "|" > -> > <->;  -> and <-> associate to the right;
// quantifier scope extends maximally to the right.
//
// The checked overload rejects unknown symbols and arity mismatches against
// sig; the loose overload infers a signature from use (arities must be
// consistent within the formula).
FormulaPtr parse_formula(const std::string& text, const Signature& sig);
FormulaPtr parse_formula(const std::string& text);

// Deterministic rendering with minimal parentheses; parses back to an equal
// tree (modulo bound-index resolution, which render preserves).
std::string render_formula(const FormulaPtr& f);

// Free variable names in first-occurrence order.
std::vector<std::string> free_vars(const FormulaPtr& f);
bool is_sentence(const FormulaPtr& f);
// Throws PreconditionError listing the free variables unless f is a sentence.
void require_sentence(const FormulaPtr& f);

int quantifier_rank(const FormulaPtr& f);

// Signature inferred from the atoms of f (symbols in first-use order).
Signature inferred_signature(const FormulaPtr& f);

// Rendering with variables replaced by canonical de-Bruijn-derived names;
// equal keys <=> alpha-equivalent formulas.
std::string alpha_key(const FormulaPtr& f);

}  // namespace relic
