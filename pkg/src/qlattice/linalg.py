"""Exact linear algebra over the Gaussian rationals.

Scalars are complex numbers a + b*i with rational a, b, held exactly as a
pair of :class:`fractions.Fraction`.  Matrices are immutable and row-major.
Row reduction, kernels and products are exact; no floating point is used
anywhere.

Internally, elimination runs on integer rows: each row is scaled by the
lcm of its denominators, entries become Gaussian integers stored as
interleaved ``(re, im)`` machine-int pairs, and every row operation is
followed by a content strip (division by the gcd of all components) so
coefficients stay small.  Fractions reappear only when a canonical reduced
row echelon basis is materialised, with each pivot normalised to 1.
"""

from __future__ import annotations

import re as _regex
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

_Int = int  # Gaussian-integer rows are flat lists [re0, im0, re1, im1, ...]


class DimensionMismatch(ValueError):
    """Operand shapes are incompatible for the requested operation."""


class ScalarFormatError(ValueError):
    """Malformed scalar or matrix text."""


class GaussianRational:
    """Exact complex scalar ``re + im*i`` with rational components.

    Instances are immutable by convention; all arithmetic returns new
    objects.  Components are always in lowest terms with positive
    denominator because they are stored as :class:`Fraction`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def norm2(self) -> Fraction:
        """Squared modulus ``re**2 + im**2`` (a rational)."""
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _coerce(value: object) -> "GaussianRational | None":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        return None

    def __add__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n2 = o.norm2()
        if not n2:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n2,
            (self.im * o.re - self.re * o.im) / n2,
        )

    def __rtruediv__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


# --- scalar and matrix text -------------------------------------------------
#
# scalar   := rational | rational sign rat-imag | rat-imag | sign rat-imag
# rational := ['-'] digits ['/' digits]
# rat-imag := rational '*' 'i' | 'i' | '-i'
#
# This is the single parse point for scalars; fixture and matrix readers
# delegate here.

_RAT = r"-?\d+(?:/\d+)?"
_PURE_RAT = _regex.compile(rf"^({_RAT})$")
_BARE_I = _regex.compile(r"^(-?)i$")
_COEF_I = _regex.compile(rf"^({_RAT})\*i$")
_FULL = _regex.compile(rf"^({_RAT})([+-])(?:(\d+(?:/\d+)?)\*)?i$")


def _parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise ScalarFormatError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_scalar(text: str) -> GaussianRational:
    """Parse Gaussian-rational text such as ``3``, ``-1/2``, ``2*i``, ``1/2-3/4*i``.

    Accepted forms: a rational, a rational imaginary part (``2*i``, ``i``,
    ``-i``), or both joined by ``+`` or ``-``.

    Raises:
        ScalarFormatError: if `text` is not a scalar.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ScalarFormatError("empty scalar")
    m = _PURE_RAT.match(s)
    if m:
        return GaussianRational(_parse_rational(m[1]))
    m = _BARE_I.match(s)
    if m:
        return GaussianRational(0, -1 if m[1] else 1)
    m = _COEF_I.match(s)
    if m:
        return GaussianRational(0, _parse_rational(m[1]))
    m = _FULL.match(s)
    if m:
        re_part = _parse_rational(m[1])
        im_part = _parse_rational(m[3]) if m[3] else Fraction(1)
        return GaussianRational(re_part, -im_part if m[2] == "-" else im_part)
    raise ScalarFormatError(f"bad scalar {text!r}")


def _format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Print a scalar in the grammar accepted by :func:`parse_scalar`."""
    if not z.im:
        return _format_rational(z.re)
    if not z.re:
        return f"{_format_rational(z.im)}*i"
    sign = "+" if z.im > 0 else "-"
    return f"{_format_rational(z.re)}{sign}{_format_rational(abs(z.im))}*i"


class Matrix:
    """Immutable row-major matrix of :class:`GaussianRational` entries."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(
        self, entries: tuple[tuple[GaussianRational, ...], ...], cols: int | None = None
    ) -> None:
        self.entries = entries
        self.rows = len(entries)
        if entries:
            self.cols = len(entries[0])
        elif cols is None:
            raise DimensionMismatch("empty matrix needs an explicit column count")
        else:
            self.cols = cols
        self._hash: int | None = None

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[object]], cols: int | None = None
    ) -> "Matrix":
        """Build a matrix, coercing int and Fraction entries to scalars."""
        out = []
        width = None
        for row in rows:
            coerced = tuple(
                e if isinstance(e, GaussianRational) else GaussianRational(e)
                for e in row
            )
            if width is None:
                width = len(coerced)
            elif len(coerced) != width:
                raise DimensionMismatch("ragged rows")
            out.append(coerced)
        return cls(tuple(out), cols if width is None else width)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            tuple(
                tuple(GR_ONE if i == j else GR_ZERO for j in range(n))
                for i in range(n)
            ),
            n,
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(tuple(tuple(GR_ZERO for _ in range(cols)) for _ in range(rows)), cols)

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return self.entries[i]

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch(
                f"cannot stack {self.cols}-column and {other.cols}-column matrices"
            )
        return Matrix(self.entries + other.entries, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.cols, self.entries))
        return h

    def __str__(self) -> str:
        return format_matrix(self)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


def parse_matrix(text: str, cols: int | None = None) -> Matrix:
    """Parse matrix text: one row per line, whitespace-separated scalars.

    Blank lines and ``#`` comment lines are skipped.  An input with no rows
    yields a 0 x `cols` matrix (`cols` is then required).
    """
    rows: list[list[GaussianRational]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            row = [parse_scalar(tok) for tok in line.split()]
        except ScalarFormatError as exc:
            raise ScalarFormatError(f"line {lineno}: {exc}") from exc
        if rows and len(row) != len(rows[0]):
            raise ScalarFormatError(
                f"line {lineno}: expected {len(rows[0])} entries, got {len(row)}"
            )
        rows.append(row)
    if not rows:
        if cols is None:
            raise ScalarFormatError("matrix text has no rows and no column count given")
        return Matrix((), cols)
    if cols is not None and len(rows[0]) != cols:
        raise ScalarFormatError(f"expected {cols} columns, got {len(rows[0])}")
    return Matrix.from_rows(rows)


def format_matrix(m: Matrix) -> str:
    """Print a matrix in the grammar accepted by :func:`parse_matrix`."""
    return "\n".join(" ".join(format_scalar(e) for e in row) for row in m.entries)


# --- integer elimination core ----------------------------------------------


def _strip_content(row: list[_Int]) -> None:
    g = gcd(*row)
    if g > 1:
        for k in range(len(row)):
            row[k] //= g


def _row_from_fracs(fracs: Iterable[Fraction]) -> list[_Int]:
    fr = list(fracs)
    scale = 1
    for f in fr:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    row = [int(f * scale) for f in fr]
    _strip_content(row)
    return row


def _int_rows_from_matrix(m: Matrix) -> list[list[_Int]]:
    out = []
    for row in m.entries:
        parts: list[Fraction] = []
        for e in row:
            parts.append(e.re)
            parts.append(e.im)
        out.append(_row_from_fracs(parts))
    return out


def _reduce_int_rows(
    rows: Iterable[Sequence[_Int]], ncols: int
) -> tuple[list[list[_Int]], list[int]]:
    """Reduce Gaussian-integer rows to a canonical echelon form.

    Returns the nonzero rows of the reduced echelon form together with their
    pivot columns.  Each returned row is primitive (content 1) and its pivot
    entry is a positive ordinary integer, which makes the form unique; the
    Fraction-level canonical basis is obtained by dividing each row by its
    pivot entry.
    """
    work = [list(r) for r in rows if any(r)]
    width = 2 * ncols
    pivots: list[int] = []
    npiv = 0
    # Content is stripped once per row and phase, not after every combine;
    # with small input entries the intermediate growth stays well within a
    # machine word, and Python ints are exact regardless.
    for pc in range(ncols):
        re_i, im_i = 2 * pc, 2 * pc + 1
        pi = -1
        for i in range(npiv, len(work)):
            if work[i][re_i] or work[i][im_i]:
                pi = i
                break
        if pi < 0:
            continue
        work[npiv], work[pi] = work[pi], work[npiv]
        prow = work[npiv]
        pa, pb = prow[re_i], prow[im_i]
        for i in range(npiv + 1, len(work)):
            r = work[i]
            ta, tb = r[re_i], r[im_i]
            if ta or tb:
                for k in range(re_i, width, 2):
                    ra, rb = r[k], r[k + 1]
                    qa, qb = prow[k], prow[k + 1]
                    r[k] = pa * ra - pb * rb - ta * qa + tb * qb
                    r[k + 1] = pa * rb + pb * ra - ta * qb - tb * qa
                _strip_content(r)
        pivots.append(pc)
        npiv += 1
    work = work[:npiv]
    # Clear above the pivots, last pivot first.
    for k in range(npiv - 1, 0, -1):
        pc = pivots[k]
        re_i, im_i = 2 * pc, 2 * pc + 1
        prow = work[k]
        pa, pb = prow[re_i], prow[im_i]
        for i in range(k):
            r = work[i]
            ta, tb = r[re_i], r[im_i]
            if ta or tb:
                for j in range(0, width, 2):
                    ra, rb = r[j], r[j + 1]
                    qa, qb = prow[j], prow[j + 1]
                    r[j] = pa * ra - pb * rb - ta * qa + tb * qb
                    r[j + 1] = pa * rb + pb * ra - ta * qb - tb * qa
                _strip_content(r)
    # Normalise: multiply by the conjugate of the pivot entry so the pivot
    # becomes |pivot|^2 > 0, then strip content so each row is primitive.
    for k in range(npiv):
        pc = pivots[k]
        prow = work[k]
        pa, pb = prow[2 * pc], prow[2 * pc + 1]
        if pb or pa < 0:
            for j in range(0, width, 2):
                ra, rb = prow[j], prow[j + 1]
                prow[j] = pa * ra + pb * rb
                prow[j + 1] = pa * rb - pb * ra
        _strip_content(prow)
    return work, pivots


def _kernel_int(
    rows: Iterable[Sequence[_Int]], ncols: int
) -> tuple[list[list[_Int]], list[int]]:
    """Canonical integer basis (rows and their pivots) for the right kernel."""
    red, pivots = _reduce_int_rows(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if not free:
        return [], []
    leads = [red[i][2 * pivots[i]] for i in range(len(pivots))]
    scale = 1
    for g in leads:
        scale = scale * g // gcd(scale, g)
    basis: list[list[_Int]] = []
    for f in free:
        row = [0] * (2 * ncols)
        row[2 * f] = scale
        for i, pc in enumerate(pivots):
            mult = scale // leads[i]
            row[2 * pc] = -red[i][2 * f] * mult
            row[2 * pc + 1] = -red[i][2 * f + 1] * mult
        _strip_content(row)
        basis.append(row)
    return _reduce_int_rows(basis, ncols)


def _conj_int_rows(rows: Iterable[Sequence[_Int]]) -> list[list[_Int]]:
    out = []
    for r in rows:
        c = list(r)
        for k in range(1, len(c), 2):
            c[k] = -c[k]
        out.append(c)
    return out


def _fracs_from_int_rows(
    rows: Sequence[Sequence[_Int]], pivots: Sequence[int], ncols: int
) -> tuple[tuple[GaussianRational, ...], ...]:
    out = []
    for i, r in enumerate(rows):
        lead = r[2 * pivots[i]]
        out.append(
            tuple(
                GaussianRational(Fraction(r[2 * c], lead), Fraction(r[2 * c + 1], lead))
                for c in range(ncols)
            )
        )
    return tuple(out)


# --- public operations ------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.

    The result has the same shape as `m`: the canonical basis rows (pivots 1,
    zeros above and below each pivot) followed by zero rows.  rref is
    idempotent and invariant under row scaling and row permutation of the
    input.

    Returns:
        A pair ``(echelon, rank)``.
    """
    red, pivots = _reduce_int_rows(_int_rows_from_matrix(m), m.cols)
    rank = len(red)
    rows = list(_fracs_from_int_rows(red, pivots, m.cols))
    zero_row = tuple(GR_ZERO for _ in range(m.cols))
    rows.extend(zero_row for _ in range(m.rows - rank))
    return Matrix(tuple(rows), m.cols), rank


def kernel(m: Matrix) -> Matrix:
    """Canonical basis for the right kernel ``{v : m @ v^T = 0}``.

    Rows of the result are a reduced-echelon basis of the solution space;
    there are exactly ``cols - rank`` of them (possibly zero).
    """
    red, pivots = _kernel_int(_int_rows_from_matrix(m), m.cols)
    return Matrix(_fracs_from_int_rows(red, pivots, m.cols), m.cols)


def transpose(m: Matrix) -> Matrix:
    """Plain transpose, no conjugation."""
    return Matrix(
        tuple(
            tuple(m.entries[r][c] for r in range(m.rows)) for c in range(m.cols)
        ),
        m.rows,
    )


def conj_transpose(m: Matrix) -> Matrix:
    """Conjugate transpose (Hermitian adjoint)."""
    return Matrix(
        tuple(
            tuple(m.entries[r][c].conjugate() for r in range(m.rows))
            for c in range(m.cols)
        ),
        m.rows,
    )


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product.

    Raises:
        DimensionMismatch: unless ``a.cols == b.rows``.
    """
    if a.cols != b.rows:
        raise DimensionMismatch(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    bt = list(zip(*b.entries)) if b.rows else [() for _ in range(b.cols)]
    out = []
    for row in a.entries:
        out_row = []
        for col in range(b.cols):
            acc = GR_ZERO
            bcol = bt[col] if b.rows else ()
            for x, y in zip(row, bcol):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return Matrix(tuple(out), b.cols)


def hermitian_dot(u: Sequence[GaussianRational], v: Sequence[GaussianRational]) -> GaussianRational:
    """Hermitian inner product, conjugate-linear in the first argument."""
    if len(u) != len(v):
        raise DimensionMismatch("vectors of different length")
    acc = GR_ZERO
    for x, y in zip(u, v):
        acc = acc + x.conjugate() * y
    return acc
