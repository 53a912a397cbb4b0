"""Minimal SMT-LIB v2 reader used to validate emitted solver text.

This is a checker, not a solver: it parses s-expressions, verifies the
script structure (``set-logic`` first, then asserts, ``check-sat``,
optionally ``get-model``), and walks every asserted formula checking
operator arities, binder shapes, and that each symbol is bound by an
enclosing quantifier.  Anything the emitter could plausibly get wrong
is rejected loudly.
"""

from __future__ import annotations

import re


class SmtError(ValueError):
    pass


_SYMBOL = re.compile(r"[A-Za-z~!@$%^&*_+=<>.?/-][0-9A-Za-z~!@$%^&*_+=<>.?/-]*\Z")
_NUMERAL = re.compile(r"(0|[1-9][0-9]*)\Z")
_DECIMAL = re.compile(r"(0|[1-9][0-9]*)\.[0-9]+\Z")


def tokenize_sexpr(text: str) -> list[str]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in "()":
            tokens.append(ch)
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isspace():
            i += 1
        elif ch == '"':
            raise SmtError(f"string literals are not supported (offset {i})")
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def parse_script(text: str) -> list:
    """Nested lists, one per top-level command."""
    tokens = tokenize_sexpr(text)
    commands = []
    stack: list[list] = []
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise SmtError("unbalanced ')'")
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                commands.append(done)
        else:
            if not stack:
                raise SmtError(f"atom {tok!r} outside any command")
            stack[-1].append(tok)
    if stack:
        raise SmtError("unterminated '('")
    return commands


_COMMANDS = {"set-logic", "assert", "check-sat", "get-model"}


def validate_script(commands: list) -> None:
    if not commands:
        raise SmtError("empty script")
    for cmd in commands:
        if not isinstance(cmd, list) or not cmd or not isinstance(cmd[0], str):
            raise SmtError(f"malformed command: {cmd!r}")
        if cmd[0] not in _COMMANDS:
            raise SmtError(f"unsupported command {cmd[0]!r}")
    head = commands[0]
    if head[0] != "set-logic" or len(head) != 2 or not _SYMBOL.match(head[1]):
        raise SmtError("script must start with (set-logic <symbol>)")
    if sum(1 for c in commands if c[0] == "set-logic") != 1:
        raise SmtError("set-logic must appear exactly once")
    if not any(c[0] == "assert" for c in commands):
        raise SmtError("script has no assert")
    if not any(c[0] == "check-sat" for c in commands):
        raise SmtError("script has no check-sat")
    for cmd in commands:
        if cmd[0] == "assert":
            if len(cmd) != 2:
                raise SmtError("assert takes exactly one term")
            _validate_term(cmd[1], frozenset())
        elif cmd[0] in ("check-sat", "get-model") and len(cmd) != 1:
            raise SmtError(f"{cmd[0]} takes no arguments")


def _validate_binders(binders, scope: frozenset) -> frozenset:
    if not isinstance(binders, list) or not binders:
        raise SmtError("quantifier needs a nonempty binder list")
    names = []
    for b in binders:
        if (
            not isinstance(b, list)
            or len(b) != 2
            or not isinstance(b[0], str)
            or not _SYMBOL.match(b[0])
            or b[1] != "Real"
        ):
            raise SmtError(f"malformed binder {b!r}")
        names.append(b[0])
    if len(set(names)) != len(names):
        raise SmtError("duplicate name in one binder list")
    return scope | frozenset(names)


def _validate_term(t, scope: frozenset) -> None:
    if isinstance(t, str):
        if t in ("true", "false"):
            return
        if _NUMERAL.match(t) or _DECIMAL.match(t):
            return
        if not _SYMBOL.match(t):
            raise SmtError(f"invalid symbol {t!r}")
        if t not in scope:
            raise SmtError(f"unbound symbol {t!r}")
        return
    if not isinstance(t, list) or not t:
        raise SmtError(f"malformed term {t!r}")
    head = t[0]
    args = t[1:]
    if head in ("forall", "exists"):
        if len(args) != 2:
            raise SmtError(f"{head} takes a binder list and a body")
        inner = _validate_binders(args[0], scope)
        _validate_term(args[1], inner)
        return
    if not isinstance(head, str):
        raise SmtError(f"malformed application head {head!r}")
    arity_ok = {
        "not": len(args) == 1,
        "=>": len(args) >= 2,
        "and": len(args) >= 2,
        "or": len(args) >= 2,
        "=": len(args) >= 2,
        "+": len(args) >= 2,
        "*": len(args) >= 2,
        "-": len(args) in (1, 2),
        "/": len(args) == 2,
    }
    if head not in arity_ok:
        raise SmtError(f"unsupported operator {head!r}")
    if not arity_ok[head]:
        raise SmtError(f"wrong arity for {head!r}: {len(args)}")
    for a in args:
        _validate_term(a, scope)


def check_solver_text(text: str) -> None:
    """Parse and validate in one step; raises SmtError on any problem."""
    validate_script(parse_script(text))
