"""The operation-expression language and decidable predicates over it.

Expressions combine language arguments with boolean connectives, fixed
roots ``root[m]`` (membership of the m-th power) and the infinitary
``Root`` (some positive power is a member).  An ``EPredicate`` is the
decidable stand-in for a set of characteristic tuples: an explicit finite
set, a compiled expression, or the named ``wheel`` family.

Evaluation happens on ``CharTuple`` values.  An argument ``Lj`` reads the
bit at index 1 of component j (a word is its own first power); a root
rescales indices; ``Root`` scans exponents 1 .. A+C where A is the longest
component prefix and C the lcm of the component periods, which covers all
behaviors because rescaled tuples repeat with period C beyond A.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Sequence, Union

from .automata import Dfa
from .errors import CapExceeded, ParseError
from .transforms import TransFn, TransTuple, tuple_compose, tuple_identity
from .upseq import ZERO, ZERO_ONE, CharTuple, at, char_tuple, parse_eset, scale_tuple

DEFAULT_SCAN_CAP = 10**6


@dataclass(frozen=True)
class Arg:
    index: int  # 1-based language argument


@dataclass(frozen=True)
class Not:
    inner: "OpExpr"


@dataclass(frozen=True)
class And:
    left: "OpExpr"
    right: "OpExpr"


@dataclass(frozen=True)
class Or:
    left: "OpExpr"
    right: "OpExpr"


@dataclass(frozen=True)
class Xor:
    left: "OpExpr"
    right: "OpExpr"


@dataclass(frozen=True)
class RootM:
    m: int  # m >= 0
    inner: "OpExpr"


@dataclass(frozen=True)
class RootStar:
    inner: "OpExpr"


@dataclass(frozen=True)
class Wheel:
    k: int  # built-in wheel predicate on arguments 1..k


OpExpr = Union[Arg, Not, And, Or, Xor, RootM, RootStar, Wheel]


def expr_arity(e: OpExpr) -> int:
    """Highest argument index appearing in the expression."""
    if isinstance(e, Arg):
        return e.index
    if isinstance(e, Wheel):
        return e.k
    if isinstance(e, Not):
        return expr_arity(e.inner)
    if isinstance(e, (RootM, RootStar)):
        return expr_arity(e.inner)
    return max(expr_arity(e.left), expr_arity(e.right))


def format_expr(e: OpExpr) -> str:
    """Deterministic, re-parseable rendering (binaries fully parenthesized)."""
    if isinstance(e, Arg):
        return f"L{e.index}"
    if isinstance(e, Wheel):
        return f"wheel {e.k}"
    if isinstance(e, Not):
        return f"!{format_expr(e.inner)}"
    if isinstance(e, RootM):
        return f"root[{e.m}]({format_expr(e.inner)})"
    if isinstance(e, RootStar):
        return f"Root({format_expr(e.inner)})"
    op = {And: "&", Or: "|", Xor: "^"}[type(e)]
    return f"({format_expr(e.left)} {op} {format_expr(e.right)})"


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<sym>[!&^|()\[\]]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at_pos = len(text) - len(stripped)
            raise ParseError(f"syntax error at position {at_pos}: unexpected character {stripped[0]!r}")
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"syntax error at position {len(self.text)}: unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"syntax error at position {tok[2]}: expected {want!r}, got {tok[1]!r}")
        return tok

    def parse(self) -> OpExpr:
        e = self.or_expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"syntax error at position {tok[2]}: unexpected {tok[1]!r}")
        return e

    def or_expr(self) -> OpExpr:
        e = self.xor_expr()
        while (tok := self.peek()) is not None and tok[1] == "|":
            self.take()
            e = Or(e, self.xor_expr())
        return e

    def xor_expr(self) -> OpExpr:
        e = self.and_expr()
        while (tok := self.peek()) is not None and tok[1] == "^":
            self.take()
            e = Xor(e, self.and_expr())
        return e

    def and_expr(self) -> OpExpr:
        e = self.not_expr()
        while (tok := self.peek()) is not None and tok[1] == "&":
            self.take()
            e = And(e, self.not_expr())
        return e

    def not_expr(self) -> OpExpr:
        tok = self.peek()
        if tok is not None and tok[1] == "!":
            self.take()
            return Not(self.not_expr())
        return self.atom()

    def atom(self) -> OpExpr:
        kind, value, pos = self.take()
        if value == "(":
            e = self.or_expr()
            self.expect("sym", ")")
            return e
        if kind == "word" and value == "L":
            itok = self.expect("int")
            index = int(itok[1])
            if index == 0:
                raise ParseError(f"syntax error at position {itok[2]}: argument index 0")
            return Arg(index)
        if kind == "word" and value == "root":
            self.expect("sym", "[")
            m = int(self.expect("int")[1])
            self.expect("sym", "]")
            self.expect("sym", "(")
            e = self.or_expr()
            self.expect("sym", ")")
            return RootM(m, e)
        if kind == "word" and value == "Root":
            self.expect("sym", "(")
            e = self.or_expr()
            self.expect("sym", ")")
            return RootStar(e)
        if kind == "word" and value == "wheel":
            ktok = self.expect("int")
            k = int(ktok[1])
            if k == 0:
                raise ParseError(f"syntax error at position {ktok[2]}: wheel arity 0")
            return Wheel(k)
        raise ParseError(f"syntax error at position {pos}: unexpected {value!r}")


def parse_expr(text: str) -> OpExpr:
    """Parse an operation expression (precedence ! > & > ^ > |)."""
    return _Parser(text).parse()


@dataclass(frozen=True)
class Explicit:
    """Membership in an explicit finite set of characteristic tuples."""

    tuples: tuple[CharTuple, ...]
    arity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "tuples", tuple(self.tuples))
        if self.arity < 1:
            raise ValueError("arity must be positive")
        for chi in self.tuples:
            if chi.arity != self.arity:
                raise ValueError(f"tuple arity {chi.arity} != predicate arity {self.arity}")


@dataclass(frozen=True)
class Compiled:
    """A predicate compiled from an operation expression."""

    expr: OpExpr

    @property
    def arity(self) -> int:
        return expr_arity(self.expr)


@dataclass(frozen=True)
class Builtin:
    """A named predicate family; only "wheel" exists."""

    name: str
    arity: int

    def __post_init__(self) -> None:
        if self.name != "wheel":
            raise ValueError(f"unknown builtin {self.name!r}")
        if self.arity < 1:
            raise ValueError("arity must be positive")


EPredicate = Union[Explicit, Compiled, Builtin]


def wheel_builtin(k: int) -> Builtin:
    """The wheel predicate: every component constant-0 or 0-then-1.

    For k = 1 that is the whole condition; for k >= 2 the all-zero tuple
    is excluded.
    """
    if k < 1:
        raise ValueError("wheel arity must be positive")
    return Builtin("wheel", k)


def _wheel_member(components: Sequence) -> bool:
    if not all(u in (ZERO, ZERO_ONE) for u in components):
        return False
    if len(components) == 1:
        return True
    return any(u != ZERO for u in components)


def eval_expr(e: OpExpr, chi: CharTuple, *, scan_cap: int = DEFAULT_SCAN_CAP) -> bool:
    """Evaluate an expression on a characteristic tuple."""
    if isinstance(e, Arg):
        return at(chi.components[e.index - 1], 1) == 1
    if isinstance(e, Wheel):
        return _wheel_member(chi.components[: e.k])
    if isinstance(e, Not):
        return not eval_expr(e.inner, chi, scan_cap=scan_cap)
    if isinstance(e, And):
        return eval_expr(e.left, chi, scan_cap=scan_cap) and eval_expr(e.right, chi, scan_cap=scan_cap)
    if isinstance(e, Or):
        return eval_expr(e.left, chi, scan_cap=scan_cap) or eval_expr(e.right, chi, scan_cap=scan_cap)
    if isinstance(e, Xor):
        return eval_expr(e.left, chi, scan_cap=scan_cap) != eval_expr(e.right, chi, scan_cap=scan_cap)
    if isinstance(e, RootM):
        return eval_expr(e.inner, scale_tuple(chi, e.m), scan_cap=scan_cap)
    if isinstance(e, RootStar):
        bound = max(len(u.prefix) for u in chi.components) + lcm(*(len(u.period) for u in chi.components))
        if bound > scan_cap:
            raise CapExceeded(f"Root scan bound {bound} exceeds cap {scan_cap}")
        return any(eval_expr(e.inner, scale_tuple(chi, p), scan_cap=scan_cap) for p in range(1, bound + 1))
    raise TypeError(f"not an expression node: {e!r}")


def eval_pred(pred: EPredicate, chi: CharTuple, *, scan_cap: int = DEFAULT_SCAN_CAP) -> bool:
    """Membership of a characteristic tuple in the predicate's set."""
    if chi.arity != pred.arity:
        raise ValueError(f"arity mismatch: tuple has {chi.arity}, predicate needs {pred.arity}")
    if isinstance(pred, Explicit):
        return chi in pred.tuples
    if isinstance(pred, Compiled):
        return eval_expr(pred.expr, chi, scan_cap=scan_cap)
    if isinstance(pred, Builtin):
        return _wheel_member(chi.components)
    raise TypeError(f"not a predicate: {pred!r}")


def word_oracle(
    pred: EPredicate,
    dfas: Sequence[Dfa],
    word: Sequence[str],
    *,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> bool:
    """Direct word-membership test for the operation named by ``pred``.

    Folds the word into one transition function per input automaton and
    evaluates the predicate on the resulting characteristic tuple.  This
    is the reference semantics that DFA constructions are checked against.
    """
    if pred.arity != len(dfas):
        raise ValueError(f"arity mismatch: {len(dfas)} automata, predicate needs {pred.arity}")
    alphabet = dfas[0].alphabet
    for d in dfas[1:]:
        if d.alphabet != alphabet:
            raise ValueError("alphabet mismatch across inputs")
    index = {tok: li for li, tok in enumerate(alphabet)}
    f = tuple_identity(d.n_states for d in dfas)
    for tok in word:
        li = index.get(tok)
        if li is None:
            raise ValueError(f"unknown letter {tok!r}")
        step = TransTuple(tuple(TransFn(d.trans[li]) for d in dfas))
        f = tuple_compose(step, f)
    chi = char_tuple(f, [d.initial for d in dfas], [d.finals for d in dfas])
    return eval_pred(pred, chi, scan_cap=scan_cap)


def explicit_from_file(text: str) -> Explicit:
    """Load an "eset v1" document into an Explicit predicate.

    Tuples are canonical by construction; duplicate lines collapse,
    keeping first-occurrence order.
    """
    k, tuples = parse_eset(text)
    seen: dict[CharTuple, None] = {}
    for chi in tuples:
        seen.setdefault(chi, None)
    return Explicit(tuple(seen), k)
