"""Surface syntax: s-expressions for types, terms, formulas and derivations.

Types      i | b | (-> t1 ... tn) | (set t)
Terms      x | T | F | o | (: x type) | (const name type) | (lam (x type) body)
           | (cond z t q) | (cases formula if-false if-true) | (f a1 ... an)
Formulas   0 | bot | (atom P t ...) | (tensor A B) | (with A B) | (plus A B)
           | (lolli A B) | (bang A) | (forall (x type) A) | (exists (x type) A)
           | (eqb t q) | (in t s) | (and A B) | (or A B) | (imp A B)
           | (diamond z A B) | (iff A B)            ; expanded while reading
Derivation (rule premise ... [formula] [:key value] ...)

A bare symbol that is not bound by an enclosing binder reads as a free
variable of type i; free variables of other types are written ``(: x type)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .syntax import (
    BOT, FALSE, INHABITANT, TRUE, ZERO, And, App, Arrow, Atom, B, Bang, BoolEq, Bot,
    Cond, Const, DecCases, Exists, FinSet, Forall, I, Implies, Lam, Lolli, Member,
    Or, Plus, Tensor, Var, With, Zero, diamond, iff, spine, Base, BoolT,
)


@dataclass(frozen=True)
class Sym:
    text: str
    line: int
    col: int


class SList(list):
    line = 1
    col = 1


def tokenize(src):
    line, col = 1, 1
    i = 0
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and src[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            i += 1
            col += 1
        else:
            start, scol = i, col
            while i < n and not src[i].isspace() and src[i] not in "();":
                i += 1
                col += 1
            yield src[start:i], line, scol


def read_all(src):
    """Parse every top-level s-expression in ``src``."""
    stack = [SList()]
    for tok, line, col in tokenize(src):
        if tok == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack.append(lst)
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", line, col)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(Sym(tok, line, col))
    if len(stack) != 1:
        lst = stack[-1]
        raise ParseError("unclosed '('", lst.line, lst.col)
    return list(stack[0])


def read_one(src):
    items = read_all(src)
    if len(items) != 1:
        raise ParseError(f"expected one expression, found {len(items)}")
    return items[0]


def _pos(x):
    return (x.line, x.col)


def _err(x, msg):
    line, col = _pos(x)
    return ParseError(msg, line, col)


def _head(x):
    if isinstance(x, SList) and x and isinstance(x[0], Sym):
        return x[0].text
    return None


# ---------------------------------------------------------------------------
# Types

def type_from(x):
    if isinstance(x, Sym):
        if x.text == "i":
            return I
        if x.text == "b":
            return B
        raise _err(x, f"unknown type {x.text!r}")
    h = _head(x)
    if h == "->" and len(x) >= 3:
        parts = [type_from(p) for p in x[1:]]
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out = Arrow(p, out)
        return out
    if h == "set" and len(x) == 2:
        return FinSet(type_from(x[1]))
    raise _err(x, "malformed type")


def type_to_str(ty):
    return str(ty)


# ---------------------------------------------------------------------------
# Terms

RESERVED = {"T": TRUE, "F": FALSE, "o": INHABITANT}


def _binder(x, scope):
    if not (isinstance(x, SList) and len(x) == 2 and isinstance(x[0], Sym)):
        raise _err(x, "expected a binder (name type)")
    return Var(x[0].text, type_from(x[1]))


def term_from(x, scope=None):
    scope = scope or {}
    if isinstance(x, Sym):
        if x.text in scope:
            return scope[x.text]
        if x.text in RESERVED:
            return RESERVED[x.text]
        if x.text[0].isdigit() or x.text.startswith(":"):
            raise _err(x, f"bad term symbol {x.text!r}")
        return Var(x.text, I)
    if not x:
        raise _err(x, "empty term")
    h = _head(x)
    if h == ":" and len(x) == 3 and isinstance(x[1], Sym):
        return Var(x[1].text, type_from(x[2]))
    if h == "const" and len(x) == 3 and isinstance(x[1], Sym):
        return Const(x[1].text, type_from(x[2]))
    if h == "lam" and len(x) == 3:
        v = _binder(x[1], scope)
        return Lam(v, term_from(x[2], {**scope, v.name: v}))
    if h == "cond" and len(x) == 4:
        return Cond(*(term_from(p, scope) for p in x[1:]))
    if h == "cases" and len(x) == 4:
        return DecCases(formula_from(x[1], scope), term_from(x[2], scope),
                        term_from(x[3], scope))
    if len(x) < 2:
        raise _err(x, "application needs an argument")
    out = term_from(x[0], scope)
    for a in x[1:]:
        out = App(out, term_from(a, scope))
    return out


def term_to_str(t, scope=frozenset()):
    match t:
        case Var(name, ty):
            if t in scope or (ty == I and name not in {v.name for v in scope}
                              and name not in RESERVED):
                return name
            return f"(: {name} {ty})"
        case Const():
            for key, c in RESERVED.items():
                if c == t:
                    return key
            return f"(const {t.name} {t.type})"
        case App():
            head, args = spine(t)
            return "(" + " ".join([term_to_str(head, scope)] + [term_to_str(a, scope) for a in args]) + ")"
        case Lam(v, body):
            inner = (scope - {w for w in scope if w.name == v.name}) | {v}
            return f"(lam ({v.name} {v.type}) {term_to_str(body, inner)})"
        case Cond(z, a, b):
            return f"(cond {term_to_str(z, scope)} {term_to_str(a, scope)} {term_to_str(b, scope)})"
        case DecCases(m, a, b):
            return (f"(cases {formula_to_str(m, scope)} {term_to_str(a, scope)} "
                    f"{term_to_str(b, scope)})")
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Formulas

_BIN = {"tensor": Tensor, "with": With, "plus": Plus, "lolli": Lolli,
        "and": And, "or": Or, "imp": Implies}
_BIN_NAMES = {v: k for k, v in _BIN.items()}


def formula_from(x, scope=None):
    scope = scope or {}
    if isinstance(x, Sym):
        if x.text == "0":
            return ZERO
        if x.text == "bot":
            return BOT
        raise _err(x, f"unknown formula {x.text!r}")
    h = _head(x)
    if h == "atom" and len(x) >= 2 and isinstance(x[1], Sym):
        return Atom(x[1].text, tuple(term_from(a, scope) for a in x[2:]))
    if h in _BIN and len(x) == 3:
        return _BIN[h](formula_from(x[1], scope), formula_from(x[2], scope))
    if h == "bang" and len(x) == 2:
        return Bang(formula_from(x[1], scope))
    if h in ("forall", "exists") and len(x) == 3:
        v = _binder(x[1], scope)
        body = formula_from(x[2], {**scope, v.name: v})
        return (Forall if h == "forall" else Exists)(v, body)
    if h == "eqb" and len(x) == 3:
        return BoolEq(term_from(x[1], scope), term_from(x[2], scope))
    if h == "in" and len(x) == 3:
        return Member(term_from(x[1], scope), term_from(x[2], scope))
    if h == "diamond" and len(x) == 4:
        return diamond(term_from(x[1], scope), formula_from(x[2], scope),
                       formula_from(x[3], scope))
    if h == "iff" and len(x) == 3:
        return iff(formula_from(x[1], scope), formula_from(x[2], scope))
    raise _err(x, "malformed formula")


def formula_to_str(f, scope=frozenset()):
    match f:
        case Zero():
            return "0"
        case Bot():
            return "bot"
        case Atom(p, args):
            return "(" + " ".join(["atom", p] + [term_to_str(a, scope) for a in args]) + ")"
        case Bang(body):
            return f"(bang {formula_to_str(body, scope)})"
        case Forall(v, body) | Exists(v, body):
            kw = "forall" if isinstance(f, Forall) else "exists"
            inner = (scope - {w for w in scope if w.name == v.name}) | {v}
            return f"({kw} ({v.name} {v.type}) {formula_to_str(body, inner)})"
        case BoolEq(l, r):
            return f"(eqb {term_to_str(l, scope)} {term_to_str(r, scope)})"
        case Member(l, r):
            return f"(in {term_to_str(l, scope)} {term_to_str(r, scope)})"
    name = _BIN_NAMES.get(type(f))
    if name is None:
        raise TypeError(f"not a formula: {f!r}")
    return f"({name} {formula_to_str(f.left, scope)} {formula_to_str(f.right, scope)})"


def parse_type(src):
    return type_from(read_one(src))


def parse_term(src):
    return term_from(read_one(src))


def parse_formula(src):
    return formula_from(read_one(src))


def var_from(x):
    return _binder(x, {})


def var_to_str(v):
    return f"({v.name} {v.type})"


def show(x):
    """Surface syntax for any term, formula, type or derivation."""
    from .calculus import Derivation, Sequent
    from .syntax import is_formula, is_term
    if isinstance(x, (Base, BoolT, Arrow, FinSet)):
        return str(x)
    if is_term(x):
        return term_to_str(x)
    if is_formula(x):
        return formula_to_str(x)
    if isinstance(x, Derivation):
        return derivation_to_str(x)
    if isinstance(x, Sequent):
        hyps = ", ".join(formula_to_str(h) for h in x.hyps)
        return f"{hyps} |- {formula_to_str(x.concl)}"
    if isinstance(x, tuple):
        return "(" + " ".join(show(y) for y in x) + ")"
    raise TypeError(f"cannot show {x!r}")


# ---------------------------------------------------------------------------
# Derivations

def derivation_from(x):
    from .calculus import RULES, Derivation

    h = _head(x)
    if h not in RULES:
        raise _err(x, f"unknown rule {h!r}")
    fields = {"premises": []}
    items = list(x[1:])
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, Sym) and item.text.startswith(":"):
            if i + 1 >= len(items):
                raise _err(item, f"missing value for {item.text}")
            key, val = item.text[1:], items[i + 1]
            i += 2
            if key in ("formula", "at"):
                fields["formula"] = formula_from(val)
            elif key == "term":
                fields["term"] = term_from(val)
            elif key == "terms":
                fields["terms"] = tuple(term_from(t) for t in _as_list(val))
            elif key == "var":
                fields["var"] = var_from(val)
            elif key == "perm":
                fields["perm"] = tuple(_int(p) for p in _as_list(val))
            elif key == "context":
                fields["context"] = tuple(formula_from(f) for f in _as_list(val))
            elif key in ("k", "pos"):
                fields[key] = _int(val)
            else:
                raise _err(item, f"unknown key {item.text}")
            continue
        if _head(item) in RULES:
            fields["premises"].append(derivation_from(item))
        else:
            if "formula" in fields:
                raise _err(item, "more than one formula payload")
            fields["formula"] = formula_from(item)
        i += 1
    fields["premises"] = tuple(fields["premises"])
    return Derivation(h, **fields)


def _as_list(x):
    if not isinstance(x, SList):
        raise _err(x, "expected a list")
    return list(x)


def _int(x):
    if isinstance(x, Sym):
        try:
            return int(x.text)
        except ValueError:
            pass
    raise _err(x, "expected an integer")


def derivation_to_str(d, indent=None):
    parts = [d.rule]
    parts += [derivation_to_str(p) for p in d.premises]
    if d.k is not None:
        parts += [":k", str(d.k)]
    if d.pos is not None:
        parts += [":pos", str(d.pos)]
    if d.formula is not None:
        parts += [":formula", formula_to_str(d.formula)]
    if d.term is not None:
        parts += [":term", term_to_str(d.term)]
    if d.terms:
        parts += [":terms", "(" + " ".join(term_to_str(t) for t in d.terms) + ")"]
    if d.var is not None:
        parts += [":var", var_to_str(d.var)]
    if d.perm:
        parts += [":perm", "(" + " ".join(str(p) for p in d.perm) + ")"]
    if d.context:
        parts += [":context", "(" + " ".join(formula_to_str(f) for f in d.context) + ")"]
    return "(" + " ".join(parts) + ")"


def parse_derivation(src):
    return derivation_from(read_one(src))
