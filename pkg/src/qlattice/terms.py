"""Lattice terms: syntax, normal forms, and evaluation over subspaces.

Grammar (loosest to tightest): ``v`` join, ``^`` meet, ``~`` complement,
with constants ``0`` and ``1`` and variables as identifiers.  Binary
operators associate to the left; ``v`` is a reserved word and cannot be a
variable.  The same tokenizer also covers the first-order sentence layer
(``forall``/``exists``, connectives, ``=`` and ``<=``), so sentence parsing
can share the term sub-parser.

Terms are immutable trees with cached structural hashes.  Equal subterms
hash-cons into the same memo slots during evaluation, so iterated formulas
that share structure evaluate in time proportional to the number of
distinct subterms, not the tree size.
"""

from __future__ import annotations

from typing import Iterator, Mapping, NamedTuple, Sequence

from . import subspaces as _sub
from .subspaces import AmbientMismatch, Subspace


class ParseError(ValueError):
    """Syntax error with a position into the source text."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"syntax error at position {pos}: {message}")
        self.pos = pos


class UnboundVariableError(LookupError):
    """A term variable has no binding in the assignment."""

    def __init__(self, name: str) -> None:
        super().__init__(f"unbound variable {name!r}")
        self.name = name


# --- abstract syntax --------------------------------------------------------


class Term:
    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_term(self)

    def __repr__(self) -> str:
        return f"<term {format_term(self)}>"


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is Var and other.name == self.name)

    __hash__ = Term.__hash__


class _TopTerm(Term):
    __slots__ = ()

    def __init__(self) -> None:
        self._hash = hash("top")

    def __eq__(self, other: object) -> bool:
        return type(other) is _TopTerm

    __hash__ = Term.__hash__


class _BotTerm(Term):
    __slots__ = ()

    def __init__(self) -> None:
        self._hash = hash("bot")

    def __eq__(self, other: object) -> bool:
        return type(other) is _BotTerm

    __hash__ = Term.__hash__


TOP = _TopTerm()
BOT = _BotTerm()


class Not(Term):
    __slots__ = ("child",)

    def __init__(self, child: Term) -> None:
        self.child = child
        self._hash = hash(("not", child._hash))

    def __eq__(self, other: object) -> bool:
        return self is other or (type(other) is Not and other.child == self.child)

    __hash__ = Term.__hash__


class Meet(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term) -> None:
        self.left = left
        self.right = right
        self._hash = hash(("meet", left._hash, right._hash))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Meet and other.left == self.left and other.right == self.right
        )

    __hash__ = Term.__hash__


class Join(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term) -> None:
        self.left = left
        self.right = right
        self._hash = hash(("join", left._hash, right._hash))

    def __eq__(self, other: object) -> bool:
        return self is other or (
            type(other) is Join and other.left == self.left and other.right == self.right
        )

    __hash__ = Term.__hash__


class Equation:
    """A pair of terms asserted equal under every relevant assignment."""

    __slots__ = ("lhs", "rhs", "_hash")

    def __init__(self, lhs: Term, rhs: Term) -> None:
        self.lhs = lhs
        self.rhs = rhs
        self._hash = hash(("eq", lhs._hash, rhs._hash))

    @property
    def free_vars(self) -> tuple[str, ...]:
        """Free variables, sorted by name."""
        return tuple(sorted(free_vars(self.lhs) | free_vars(self.rhs)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Equation)
            and other.lhs == self.lhs
            and other.rhs == self.rhs
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"

    def __repr__(self) -> str:
        return f"<equation {self}>"


class Assignment:
    """Finite map from variable names to subspaces of one ambient space."""

    __slots__ = ("ambient", "bindings")

    def __init__(self, ambient: int, bindings: Mapping[str, Subspace]) -> None:
        if ambient < 1:
            raise AmbientMismatch("ambient dimension must be at least 1")
        for name, s in bindings.items():
            if s.ambient != ambient:
                raise AmbientMismatch(
                    f"binding {name!r} lives in ambient {s.ambient}, expected {ambient}"
                )
        self.ambient = ambient
        self.bindings = dict(bindings)

    def __getitem__(self, name: str) -> Subspace:
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundVariableError(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.bindings

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.bindings))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:dim{v.dim}" for k, v in sorted(self.bindings.items()))
        return f"Assignment(C^{self.ambient}; {inner})"


# --- tokens -----------------------------------------------------------------


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_KEYWORDS = {"v": "JOIN", "forall": "FORALL", "exists": "EXISTS"}
_SINGLE = {
    "^": "MEET",
    "~": "NOT",
    "(": "LP",
    ")": "RP",
    "=": "EQ",
    "&": "AND",
    "|": "OR",
    "!": "BANG",
    ".": "DOT",
    ",": "COMMA",
}

RESERVED_WORDS = frozenset(_KEYWORDS)


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if src.startswith("<->", i):
            tokens.append(Token("IFF", "<->", i))
            i += 3
            continue
        if src.startswith("<=", i):
            tokens.append(Token("LEQ", "<=", i))
            i += 2
            continue
        if src.startswith("->", i):
            tokens.append(Token("ARROW", "->", i))
            i += 2
            continue
        if ch == "0":
            tokens.append(Token("ZERO", "0", i))
            i += 1
            continue
        if ch == "1":
            tokens.append(Token("ONE", "1", i))
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append(Token(_SINGLE[ch], ch, i))
            i += 1
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            tokens.append(Token(_KEYWORDS.get(word, "ID"), word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("EOF", "", n))
    return tokens


class TokenStream:
    """Cursor over a token list with one-token lookahead and backtracking."""

    __slots__ = ("tokens", "index")

    def __init__(self, tokens: Sequence[Token]) -> None:
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "EOF":
            self.index += 1
        return tok

    def match(self, kind: str) -> Token | None:
        if self.tokens[self.index].kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str, what: str) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", tok.pos)
        return self.advance()


# --- parsing ----------------------------------------------------------------
#
# term := meet ('v' meet)*
# meet := unary ('^' unary)*
# unary := '~' unary | '(' term ')' | '0' | '1' | identifier


def parse_term_stream(ts: TokenStream) -> Term:
    """Parse a term and stop at the first token that cannot extend it."""
    return _parse_join(ts)


def _parse_join(ts: TokenStream) -> Term:
    t = _parse_meet(ts)
    while ts.match("JOIN"):
        t = Join(t, _parse_meet(ts))
    return t


def _parse_meet(ts: TokenStream) -> Term:
    t = _parse_unary(ts)
    while ts.match("MEET"):
        t = Meet(t, _parse_unary(ts))
    return t


def _parse_unary(ts: TokenStream) -> Term:
    tok = ts.peek()
    if tok.kind == "NOT":
        ts.advance()
        return Not(_parse_unary(ts))
    if tok.kind == "LP":
        ts.advance()
        t = _parse_join(ts)
        ts.expect("RP", "')'")
        return t
    if tok.kind == "ZERO":
        ts.advance()
        return BOT
    if tok.kind == "ONE":
        ts.advance()
        return TOP
    if tok.kind == "ID":
        ts.advance()
        return Var(tok.text)
    shown = tok.text or "end of input"
    raise ParseError(f"expected a term, found {shown!r}", tok.pos)


def parse_term(src: str) -> Term:
    """Parse a complete lattice term."""
    ts = TokenStream(tokenize(src))
    t = _parse_join(ts)
    ts.expect("EOF", "end of term")
    return t


def parse_equation(src: str) -> Equation:
    """Parse ``term = term``."""
    ts = TokenStream(tokenize(src))
    lhs = _parse_join(ts)
    ts.expect("EQ", "'='")
    rhs = _parse_join(ts)
    ts.expect("EOF", "end of equation")
    return Equation(lhs, rhs)


# --- printing ---------------------------------------------------------------

_PREC_JOIN, _PREC_MEET, _PREC_UNARY = 1, 2, 3


def format_term(t: Term) -> str:
    """Print with minimal parentheses; ``parse_term`` inverts this exactly."""

    def go(t: Term, prec: int) -> str:
        tt = type(t)
        if tt is Var:
            return t.name
        if tt is _TopTerm:
            return "1"
        if tt is _BotTerm:
            return "0"
        if tt is Not:
            return "~" + go(t.child, _PREC_UNARY)
        if tt is Meet:
            s = f"{go(t.left, _PREC_MEET)} ^ {go(t.right, _PREC_UNARY)}"
            return f"({s})" if prec > _PREC_MEET else s
        s = f"{go(t.left, _PREC_JOIN)} v {go(t.right, _PREC_MEET)}"
        return f"({s})" if prec > _PREC_JOIN else s

    return go(t, 0)


# --- structural operations --------------------------------------------------


def free_vars(t: Term) -> frozenset[str]:
    """Variable names occurring in `t`; linear in the number of distinct subterms."""
    seen: set[int] = set()
    out: set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        tt = type(node)
        if tt is Var:
            out.add(node.name)
        elif tt is Not:
            stack.append(node.child)
        elif tt is Meet or tt is Join:
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)


def subterms(t: Term) -> Iterator[Term]:
    """Distinct subterms in post-order (children before parents)."""
    seen: set[Term] = set()

    def go(node: Term):
        if node in seen:
            return
        tt = type(node)
        if tt is Not:
            yield from go(node.child)
        elif tt is Meet or tt is Join:
            yield from go(node.left)
            yield from go(node.right)
        seen.add(node)
        yield node

    yield from go(t)


def to_nnf(t: Term) -> Term:
    """Negation normal form: ``~`` applies to variables only.

    Double negations cancel, De Morgan pushes ``~`` through ``^`` and ``v``,
    and negated constants collapse (``~1`` to ``0``, ``~0`` to ``1``).
    Subterms already in normal form are reused, not rebuilt.
    """
    pos_memo: dict[Term, Term] = {}
    neg_memo: dict[Term, Term] = {}

    def pos(t: Term) -> Term:
        r = pos_memo.get(t)
        if r is None:
            tt = type(t)
            if tt is Not:
                r = t if type(t.child) is Var else neg(t.child)
            elif tt is Meet:
                l, rr = pos(t.left), pos(t.right)
                r = t if l is t.left and rr is t.right else Meet(l, rr)
            elif tt is Join:
                l, rr = pos(t.left), pos(t.right)
                r = t if l is t.left and rr is t.right else Join(l, rr)
            else:
                r = t
            pos_memo[t] = r
        return r

    def neg(t: Term) -> Term:
        r = neg_memo.get(t)
        if r is None:
            tt = type(t)
            if tt is Var:
                r = Not(t)
            elif tt is Not:
                r = pos(t.child)
            elif tt is Meet:
                r = Join(neg(t.left), neg(t.right))
            elif tt is Join:
                r = Meet(neg(t.left), neg(t.right))
            elif tt is _TopTerm:
                r = BOT
            else:
                r = TOP
            neg_memo[t] = r
        return r

    return pos(t)


def restrict(t: Term, bound: Term) -> Term:
    """Relativise `t` below `bound`.

    The term is first brought to negation normal form; then every literal
    leaf ``p`` or ``~p`` becomes its meet with `bound`.  Constant leaves are
    left alone.  The `bound` term itself is shared across all leaves.
    """
    memo: dict[Term, Term] = {}

    def go(t: Term) -> Term:
        r = memo.get(t)
        if r is None:
            tt = type(t)
            if tt is Var or tt is Not:
                r = Meet(t, bound)
            elif tt is Meet:
                r = Meet(go(t.left), go(t.right))
            elif tt is Join:
                r = Join(go(t.left), go(t.right))
            else:
                r = t
            memo[t] = r
        return r

    return go(to_nnf(t))


def substitute(t: Term, replacements: Mapping[str, Term]) -> Term:
    """Simultaneous substitution of terms for variables."""
    memo: dict[Term, Term] = {}

    def go(t: Term) -> Term:
        r = memo.get(t)
        if r is None:
            tt = type(t)
            if tt is Var:
                r = replacements.get(t.name, t)
            elif tt is Not:
                c = go(t.child)
                r = t if c is t.child else Not(c)
            elif tt is Meet:
                l, rr = go(t.left), go(t.right)
                r = t if l is t.left and rr is t.right else Meet(l, rr)
            elif tt is Join:
                l, rr = go(t.left), go(t.right)
                r = t if l is t.left and rr is t.right else Join(l, rr)
            else:
                r = t
            memo[t] = r
        return r

    return go(t)


def rename(t: Term, mapping: Mapping[str, str]) -> Term:
    """Rename variables by name."""
    return substitute(t, {old: Var(new) for old, new in mapping.items()})


# --- evaluation -------------------------------------------------------------


class Evaluator:
    """Evaluates terms under one assignment with a persistent memo table.

    Reusing an Evaluator across several terms lets common subterms (and
    cached complements inside the subspace layer) be computed once.  The
    meet operation is injectable so an independent implementation can be
    swapped in for cross-checks.
    """

    __slots__ = ("assignment", "_memo", "_meet")

    def __init__(self, assignment: Assignment, meet_op=None) -> None:
        self.assignment = assignment
        self._memo: dict[Term, Subspace] = {}
        self._meet = meet_op if meet_op is not None else _sub.meet

    def eval(self, t: Term) -> Subspace:
        memo = self._memo
        v = memo.get(t)
        if v is not None:
            return v
        tt = type(t)
        if tt is Var:
            v = self.assignment[t.name]
        elif tt is Meet:
            v = self._meet(self.eval(t.left), self.eval(t.right))
        elif tt is Join:
            v = _sub.join(self.eval(t.left), self.eval(t.right))
        elif tt is Not:
            v = _sub.complement(self.eval(t.child))
        elif tt is _TopTerm:
            v = _sub.Subspace.full(self.assignment.ambient)
        else:
            v = _sub.Subspace.zero(self.assignment.ambient)
        memo[t] = v
        return v


def evaluate(t: Term, assignment: Assignment, meet_op=None) -> Subspace:
    """Value of `t` under `assignment`.

    Raises:
        UnboundVariableError: if a free variable of `t` has no binding.
    """
    return Evaluator(assignment, meet_op).eval(t)


def holds(eq: Equation, assignment: Assignment, meet_op=None) -> bool:
    """Whether both sides of `eq` evaluate to the same subspace."""
    ev = Evaluator(assignment, meet_op)
    return ev.eval(eq.lhs) == ev.eval(eq.rhs)
