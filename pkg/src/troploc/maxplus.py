"""Dense linear algebra over the idempotent semifield R_max,+.

Addition is ``max``, multiplication is ``+``, the zero element is a
dedicated :data:`BOTTOM` sentinel standing for minus infinity and the one
element is the real number ``0``.  Finite scalars are plain floats.

All containers are immutable and every function is pure.  Comparisons are
exact; there is no epsilon anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    InversionOfZero,
    ShapeMismatch,
    StarDiverges,
    UndefinedPower,
    ZeroVector,
)

__all__ = [
    "BOTTOM",
    "ONE",
    "Bottom",
    "TropScalar",
    "TropVector",
    "TropMatrix",
    "as_scalar",
    "is_bottom",
    "tadd",
    "tmul",
    "tinv",
    "tpow",
    "tsum",
    "tle",
    "vec_add",
    "mat_add",
    "mat_mul",
    "scale",
    "conjugate",
    "trace",
    "tr_sum",
    "kleene_star",
]


class Bottom:
    """The tropical zero.  Singleton; compares below every real number."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (Bottom, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("troploc.BOTTOM")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, (int, float)):
            return True
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, (int, float)):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, (int, float)):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, (int, float)):
            return False
        return NotImplemented


BOTTOM = Bottom()
ONE = 0.0

TropScalar = Union[float, Bottom]


def is_bottom(a) -> bool:
    return a is BOTTOM


def as_scalar(a) -> TropScalar:
    """Normalise user input to a tropical scalar.

    ``None`` and ``BOTTOM`` map to BOTTOM; numbers become floats.  Infinite
    or NaN floats are rejected so that bottom stays explicit.
    """
    if a is None or a is BOTTOM:
        return BOTTOM
    v = float(a)
    if v != v or v in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value {a!r}; use BOTTOM for the tropical zero")
    return v


# -- scalar operations ---------------------------------------------------------

def tadd(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def tmul(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def tinv(a: TropScalar) -> float:
    if a is BOTTOM:
        raise InversionOfZero("the tropical zero has no inverse")
    return -a if a != 0 else 0.0


def tpow(a: TropScalar, r: float) -> TropScalar:
    """``a`` to the tropical power ``r``, i.e. the product ``r * a``."""
    if a is BOTTOM:
        if r > 0:
            return BOTTOM
        raise UndefinedPower(f"BOTTOM ** {r!r} is undefined")
    v = r * a
    return v if v != 0 else 0.0


def tsum(values: Iterable[TropScalar]) -> TropScalar:
    """Tropical sum (maximum) of an iterable; BOTTOM when empty."""
    acc = BOTTOM
    for v in values:
        acc = tadd(acc, v)
    return acc


def tle(a: TropScalar, b: TropScalar) -> bool:
    """Order induced by idempotent addition: ``a <= b`` iff ``a + b == b``."""
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    return a <= b


# -- containers ----------------------------------------------------------------

@dataclass(frozen=True)
class TropVector:
    """A row or column vector of tropical scalars."""

    elements: tuple
    orientation: str = "column"

    def __post_init__(self):
        elems = tuple(as_scalar(e) for e in self.elements)
        if not elems:
            raise ShapeMismatch("vectors need at least one element")
        if self.orientation not in ("column", "row"):
            raise ValueError(f"bad orientation {self.orientation!r}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def column(cls, *values) -> "TropVector":
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        return cls(tuple(values), "column")

    @classmethod
    def row(cls, *values) -> "TropVector":
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        return cls(tuple(values), "row")

    @classmethod
    def zeros(cls, n: int, orientation: str = "column") -> "TropVector":
        return cls((BOTTOM,) * n, orientation)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def is_regular(self) -> bool:
        return all(e is not BOTTOM for e in self.elements)

    @property
    def is_zero(self) -> bool:
        return all(e is BOTTOM for e in self.elements)

    def transpose(self) -> "TropVector":
        return TropVector(self.elements, "row" if self.orientation == "column" else "column")

    def to_matrix(self) -> "TropMatrix":
        if self.orientation == "column":
            return TropMatrix(tuple((e,) for e in self.elements))
        return TropMatrix((self.elements,))

    def to_floats(self) -> list:
        """Conventional floats, with BOTTOM rendered as ``-inf``."""
        return [float("-inf") if e is BOTTOM else e for e in self.elements]

    def leq(self, other: "TropVector") -> bool:
        """Entry-wise order."""
        _same_length(self, other)
        return all(tle(a, b) for a, b in zip(self.elements, other.elements))


@dataclass(frozen=True)
class TropMatrix:
    """A dense matrix stored as a tuple of row tuples."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_scalar(e) for e in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ShapeMismatch("matrices need at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeMismatch("ragged rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "TropMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls(tuple(tuple(ONE if i == j else BOTTOM for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "TropMatrix":
        n_cols = n_rows if n_cols is None else n_cols
        return cls(((BOTTOM,) * n_cols,) * n_rows)

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_floats(self) -> list:
        return [[float("-inf") if e is BOTTOM else e for e in r] for r in self.rows]

    def leq(self, other: "TropMatrix") -> bool:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return all(tle(a, b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))


def _same_length(a: TropVector, b: TropVector) -> None:
    if len(a) != len(b) or a.orientation != b.orientation:
        raise ShapeMismatch(
            f"vectors of length {len(a)} ({a.orientation}) and {len(b)} ({b.orientation})"
        )


# -- vector and matrix operations ----------------------------------------------

def vec_add(a: TropVector, b: TropVector) -> TropVector:
    _same_length(a, b)
    return TropVector(tuple(tadd(x, y) for x, y in zip(a, b)), a.orientation)


def mat_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.shape != b.shape:
        raise ShapeMismatch(f"cannot add {a.shape} and {b.shape}")
    return TropMatrix(
        tuple(tuple(tadd(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows))
    )


def _rows_product(a_rows, b_rows):
    cols = list(zip(*b_rows))
    out = []
    for ra in a_rows:
        out_row = []
        for cb in cols:
            acc = BOTTOM
            for x, y in zip(ra, cb):
                if x is BOTTOM or y is BOTTOM:
                    continue
                s = x + y
                if acc is BOTTOM or s > acc:
                    acc = s
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_mul(a, c):
    """Tropical product of matrices and/or vectors.

    Vectors are treated as single-column (or single-row) matrices.  The
    result type follows the shapes: row times column gives a scalar, matrix
    times column gives a column, row times matrix gives a row, and anything
    else gives a :class:`TropMatrix`.
    """
    ma = a.to_matrix() if isinstance(a, TropVector) else a
    mc = c.to_matrix() if isinstance(c, TropVector) else c
    if ma.shape[1] != mc.shape[0]:
        raise ShapeMismatch(f"cannot multiply {ma.shape} by {mc.shape}")
    rows = _rows_product(ma.rows, mc.rows)
    a_row = isinstance(a, TropVector) and a.orientation == "row"
    c_col = isinstance(c, TropVector) and c.orientation == "column"
    if a_row and c_col:
        return rows[0][0]
    if c_col:
        return TropVector(tuple(r[0] for r in rows), "column")
    if a_row:
        return TropVector(rows[0], "row")
    return TropMatrix(rows)


def scale(x: TropScalar, a):
    """Multiply every entry of a vector or matrix by the scalar ``x``."""
    if isinstance(a, TropVector):
        return TropVector(tuple(tmul(x, e) for e in a), a.orientation)
    return TropMatrix(tuple(tuple(tmul(x, e) for e in r) for r in a.rows))


def conjugate(v: TropVector) -> TropVector:
    """Multiplicative conjugate transpose ``v^-``."""
    if v.is_zero:
        raise ZeroVector("conjugate of the zero vector is undefined")
    flipped = "row" if v.orientation == "column" else "column"
    return TropVector(tuple(BOTTOM if e is BOTTOM else tinv(e) for e in v), flipped)


def trace(a: TropMatrix) -> TropScalar:
    if not a.is_square:
        raise ShapeMismatch(f"trace of non-square {a.shape} matrix")
    return tsum(a.rows[i][i] for i in range(a.shape[0]))


def tr_sum(a: TropMatrix) -> TropScalar:
    """``tr A + tr A^2 + ... + tr A^n`` (tropically)."""
    if not a.is_square:
        raise ShapeMismatch(f"Tr of non-square {a.shape} matrix")
    n = a.shape[0]
    power = a
    acc = trace(a)
    for _ in range(n - 1):
        power = mat_mul(power, a)
        acc = tadd(acc, trace(power))
    return acc


def kleene_star(a: TropMatrix) -> TropMatrix:
    """The asterate ``I + A + ... + A^(n-1)``.

    Computed by repeated squaring of ``I + A``; when ``Tr(A) <= 0`` powers
    beyond ``n - 1`` add nothing, so the result equals the finite sum.
    """
    tr = tr_sum(a)
    if not tle(tr, ONE):
        raise StarDiverges(f"Tr(A) = {tr} > 0; the Kleene star does not exist")
    n = a.shape[0]
    ident = TropMatrix.identity(n)
    if n == 1:
        return ident
    s = mat_add(ident, a)
    reach = 1
    while reach < n - 1:
        s = mat_mul(s, s)
        reach *= 2
    return s
