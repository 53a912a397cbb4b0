"""Plain-text fixtures for subspaces and assignments.

A subspace fixture is the ambient dimension on its own line followed by
spanning rows in matrix text; rows are canonicalised on load, so a fixture
need not be in echelon form.  An assignment fixture starts with the
ambient dimension and then one block per variable::

    4
    p = {
    1 0 0 0
    0 1 0 0
    }
    q = { }

``{ }`` (or ``{}``) denotes the zero subspace.  Blank lines and ``#``
comments are ignored.  Formatting always writes the canonical basis, so
parse and format round-trip exactly.
"""

from __future__ import annotations

import re

from .linalg import Matrix, ScalarFormatError, format_matrix, parse_scalar
from .subspaces import Subspace
from .terms import Assignment


class FixtureError(ValueError):
    """Malformed fixture text, with the offending line number."""

    def __init__(self, message: str, lineno: int) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_row(line: str, lineno: int, ambient: int) -> list:
    try:
        row = [parse_scalar(tok) for tok in line.split()]
    except ScalarFormatError as exc:
        raise FixtureError(str(exc), lineno) from None
    if len(row) != ambient:
        raise FixtureError(
            f"row has {len(row)} entries, ambient is {ambient}", lineno
        )
    return row


def _parse_ambient(lines: list[tuple[int, str]]) -> int:
    if not lines:
        raise FixtureError("empty fixture", 1)
    lineno, head = lines[0]
    if not re.fullmatch(r"\d+", head):
        raise FixtureError(f"expected ambient dimension, found {head!r}", lineno)
    ambient = int(head)
    if ambient < 1:
        raise FixtureError("ambient dimension must be at least 1", lineno)
    return ambient


def parse_subspace_fixture(text: str) -> Subspace:
    """Read a single subspace: ambient line, then spanning rows."""
    lines = _significant_lines(text)
    ambient = _parse_ambient(lines)
    rows = [_parse_row(line, lineno, ambient) for lineno, line in lines[1:]]
    if not rows:
        return Subspace.zero(ambient)
    return Subspace.from_spanning(Matrix.from_rows(rows), ambient)


def format_subspace_fixture(s: Subspace) -> str:
    """Write a subspace fixture with its canonical basis rows."""
    body = format_matrix(s.basis)
    return f"{s.ambient}\n{body}\n" if body else f"{s.ambient}\n"


_BLOCK_OPEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)\s*=\s*\{\s*(\}?)\s*$")


def parse_assignment_fixture(text: str) -> Assignment:
    """Read an assignment: ambient line, then ``name = { rows }`` blocks."""
    lines = _significant_lines(text)
    ambient = _parse_ambient(lines)
    bindings: dict[str, Subspace] = {}
    idx = 1
    while idx < len(lines):
        lineno, line = lines[idx]
        m = _BLOCK_OPEN.match(line)
        if m is None:
            raise FixtureError(f"expected 'name = {{', found {line!r}", lineno)
        name = m.group(1)
        if name in bindings:
            raise FixtureError(f"duplicate binding for {name!r}", lineno)
        idx += 1
        rows = []
        closed = bool(m.group(2))
        while not closed:
            if idx >= len(lines):
                raise FixtureError(f"unterminated block for {name!r}", lineno)
            rowno, row_line = lines[idx]
            idx += 1
            if row_line == "}":
                closed = True
            else:
                rows.append(_parse_row(row_line, rowno, ambient))
        if rows:
            bindings[name] = Subspace.from_spanning(
                Matrix.from_rows(rows), ambient
            )
        else:
            bindings[name] = Subspace.zero(ambient)
    return Assignment(ambient, bindings)


def format_assignment_fixture(a: Assignment) -> str:
    """Write an assignment fixture, variables in sorted order."""
    parts = [str(a.ambient)]
    for name in sorted(a.bindings):
        s = a.bindings[name]
        if s.is_zero():
            parts.append(f"{name} = {{ }}")
        else:
            parts.append(f"{name} = {{")
            parts.append(format_matrix(s.basis))
            parts.append("}")
    return "\n".join(parts) + "\n"
