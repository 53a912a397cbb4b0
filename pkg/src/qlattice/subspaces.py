"""The lattice of linear subspaces of complex n-space.

A :class:`Subspace` holds a canonical reduced-echelon basis, so two
subspaces are equal as sets exactly when their representations are equal.
Lattice operations: ``meet`` is intersection, ``join`` is linear span,
``complement`` is the orthogonal complement under the Hermitian inner
product (conjugate-linear in the first argument).

The production ``meet`` intersects constraint matrices directly;
``meet_via_demorgan`` is an independent route through complements kept for
cross-checking, never called by the evaluator.
"""

from __future__ import annotations

from random import Random
from typing import Sequence

from .linalg import (
    Matrix,
    _conj_int_rows,
    _fracs_from_int_rows,
    _int_rows_from_matrix,
    _kernel_int,
    _reduce_int_rows,
    _strip_content,
)

_MAX_SAMPLE_TRIES = 200


class AmbientMismatch(ValueError):
    """Operands live in different ambient spaces, or coordinates overflow."""


class Subspace:
    """A linear subspace of complex `ambient`-space.

    Internally the canonical basis is kept as primitive Gaussian-integer
    rows (interleaved re/im), which makes equality, hashing and further
    elimination cheap; the Fraction-level basis matrix is materialised on
    first access.
    """

    __slots__ = ("ambient", "_rows", "_basis", "_complement", "_hash")

    def __init__(self) -> None:
        raise TypeError("use Subspace.zero/full/from_spanning")

    @classmethod
    def _make(cls, ambient: int, int_rows: Sequence[Sequence[int]]) -> "Subspace":
        self = object.__new__(cls)
        self.ambient = ambient
        self._rows = tuple(tuple(r) for r in int_rows)
        self._basis = None
        self._complement = None
        self._hash = None
        return self

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        """The trivial subspace of complex `ambient`-space."""
        if ambient < 1:
            raise AmbientMismatch("ambient dimension must be at least 1")
        return cls._make(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        """The whole space."""
        if ambient < 1:
            raise AmbientMismatch("ambient dimension must be at least 1")
        rows = []
        for i in range(ambient):
            row = [0] * (2 * ambient)
            row[2 * i] = 1
            rows.append(row)
        return cls._make(ambient, rows)

    @classmethod
    def from_spanning(cls, vectors: Matrix, ambient: int | None = None) -> "Subspace":
        """Span of the rows of `vectors`; the rows need not be independent."""
        n = vectors.cols if ambient is None else ambient
        if vectors.cols != n:
            raise AmbientMismatch(
                f"spanning vectors have {vectors.cols} coordinates, ambient is {n}"
            )
        red, _ = _reduce_int_rows(_int_rows_from_matrix(vectors), n)
        return cls._make(n, red)

    @classmethod
    def line(cls, ambient: int, coeffs: Sequence[object]) -> "Subspace":
        """One-dimensional span of a single coordinate row."""
        return cls.from_spanning(Matrix.from_rows([list(coeffs)]), ambient)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> Matrix:
        """Canonical reduced-echelon basis; ``dim`` rows, ``ambient`` columns."""
        if self._basis is None:
            red, pivots = _reduce_int_rows(self._rows, self.ambient)
            self._basis = Matrix(
                _fracs_from_int_rows(red, pivots, self.ambient), self.ambient
            )
        return self._basis

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.ambient

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self is other:
            return True
        return self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.ambient, self._rows))
        return h

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    # Operator sugar mirroring the module-level lattice operations.
    def __and__(self, other: "Subspace") -> "Subspace":
        return meet(self, other)

    def __or__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def __invert__(self) -> "Subspace":
        return complement(self)

    def __le__(self, other: "Subspace") -> bool:
        return leq(self, other)


def _check_ambient(p: Subspace, q: Subspace) -> None:
    if p.ambient != q.ambient:
        raise AmbientMismatch(
            f"subspaces live in different ambients: {p.ambient} and {q.ambient}"
        )


def join(p: Subspace, q: Subspace) -> Subspace:
    """Smallest subspace containing both: the span of the union."""
    _check_ambient(p, q)
    if not p._rows:
        return q
    if not q._rows:
        return p
    red, _ = _reduce_int_rows(p._rows + q._rows, p.ambient)
    return Subspace._make(p.ambient, red)


def complement(p: Subspace) -> Subspace:
    """Orthogonal complement; cached, and ``~~p`` returns `p` itself."""
    c = p._complement
    if c is None:
        rows, _ = _kernel_int(_conj_int_rows(p._rows), p.ambient)
        c = Subspace._make(p.ambient, rows)
        p._complement = c
        c._complement = p
    return c


def _constraint_rows(p: Subspace) -> list[list[int]]:
    # Rows whose joint kernel is exactly p: the conjugated basis of its
    # orthogonal complement.
    return _conj_int_rows(complement(p)._rows)


def meet(p: Subspace, q: Subspace) -> Subspace:
    """Intersection, computed as the kernel of stacked constraint rows."""
    _check_ambient(p, q)
    if p is q:
        return p
    if len(p._rows) == p.ambient:
        return q
    if len(q._rows) == q.ambient:
        return p
    if not p._rows or not q._rows:
        return p if not p._rows else q
    rows, _ = _kernel_int(_constraint_rows(p) + _constraint_rows(q), p.ambient)
    return Subspace._make(p.ambient, rows)


def meet_via_demorgan(p: Subspace, q: Subspace) -> Subspace:
    """Intersection through the De Morgan dual; independent of :func:`meet`."""
    _check_ambient(p, q)
    return complement(join(complement(p), complement(q)))


def leq(p: Subspace, q: Subspace) -> bool:
    """Containment ``p <= q``; equivalent to ``meet(p, q) == p``."""
    _check_ambient(p, q)
    if not p._rows or p is q:
        return True
    if len(p._rows) > len(q._rows):
        return False
    red, _ = _reduce_int_rows(q._rows + p._rows, p.ambient)
    return len(red) == len(q._rows)


def embed(p: Subspace, bigger_ambient: int, pad: Subspace) -> Subspace:
    """Transport `p` into a larger space as ``p (+) pad``.

    `p` occupies the first ``p.ambient`` coordinates of the larger space and
    `pad` the remaining ones, so the two coordinate blocks must tile
    `bigger_ambient` exactly.
    """
    if p.ambient + pad.ambient != bigger_ambient:
        raise AmbientMismatch(
            f"blocks of {p.ambient} and {pad.ambient} coordinates do not tile "
            f"an ambient of {bigger_ambient}"
        )
    head = 2 * p.ambient
    tail = 2 * pad.ambient
    rows = [list(r) + [0] * tail for r in p._rows]
    rows += [[0] * head + list(r) for r in pad._rows]
    # Block-diagonal stacking of canonical rows is already canonical.
    return Subspace._make(bigger_ambient, rows)


def _random_from(rng: Random, ambient: int, dim: int, coeff_bound: int) -> Subspace:
    if dim == 0:
        return Subspace.zero(ambient)
    if not 0 <= dim <= ambient:
        raise AmbientMismatch(f"dimension {dim} not in 0..{ambient}")
    randint = rng.randint
    for _ in range(_MAX_SAMPLE_TRIES):
        rows = []
        for _ in range(dim):
            row = [randint(-coeff_bound, coeff_bound) for _ in range(2 * ambient)]
            _strip_content(row)
            rows.append(row)
        red, _ = _reduce_int_rows(rows, ambient)
        if len(red) == dim:
            return Subspace._make(ambient, red)
    raise RuntimeError(
        f"could not sample a rank-{dim} subspace in {_MAX_SAMPLE_TRIES} tries"
    )


def random_subspace(
    ambient: int, dim: int, seed: int, coeff_bound: int = 3
) -> Subspace:
    """Deterministic random subspace of the given dimension.

    Spanning rows get Gaussian-integer entries with components drawn
    uniformly from ``[-coeff_bound, coeff_bound]``, resampled until the rank
    is exactly `dim`.  The same arguments always return the same subspace.
    """
    return _random_from(Random(seed), ambient, dim, coeff_bound)
