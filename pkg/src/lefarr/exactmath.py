"""Exact dense linear algebra over Q, or over GF(p) on request.

Matrices always store exact rationals (``int`` or ``Fraction``).  The field
used for elimination is chosen per computation with :func:`prime_mode`; the
default is the rationals, where elimination is fraction-free (Bareiss) on
integer rows.  Pivoting always takes the first nonzero entry, so kernels and
complements are reproducible.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

import gmpy2

from .errors import BadPrimeError, DimensionMismatchError, InputError

Scalar = Union[int, Fraction]

_MINUS_SIGNS = str.maketrans({"−": "-", "–": "-"})


def scalar(value) -> Scalar:
    """Coerce ``value`` to an exact rational; integral values become ``int``.

    Strings such as ``"-3/7"`` (ASCII or typographic minus) and ``"2"`` are
    accepted.  Floats are rejected.
    """
    if type(value) is int:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return int(value)
    if isinstance(value, str):
        text = value.strip().translate(_MINUS_SIGNS)
        if "." in text or "e" in text.lower():
            raise InputError(f"not an exact rational: {value!r}")
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not an exact rational: {value!r}") from exc
        return q.numerator if q.denominator == 1 else q
    raise InputError(f"not an exact rational: {value!r}")


def format_scalar(value: Scalar) -> str:
    return str(value)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p <= 2**30 or not gmpy2.is_prime(self.p):
            raise InputError(f"prime mode needs a prime p > 2^30, got {self.p}")

    def reduce(self, value: Scalar) -> int:
        if type(value) is int:
            return value % self.p
        den = value.denominator % self.p
        if den == 0:
            raise BadPrimeError(f"denominator of {value} vanishes mod {self.p}")
        return value.numerator * pow(den, -1, self.p) % self.p

    def __str__(self):
        return f"prime({self.p})"


_ACTIVE_FIELD: contextvars.ContextVar = contextvars.ContextVar("lefarr_field", default=None)


def active_field() -> PrimeField | None:
    """The prime field in force, or ``None`` for the rationals."""
    return _ACTIVE_FIELD.get()


@contextlib.contextmanager
def prime_mode(p: int):
    token = _ACTIVE_FIELD.set(PrimeField(p))
    try:
        yield
    finally:
        _ACTIVE_FIELD.reset(token)


@contextlib.contextmanager
def rational_mode():
    token = _ACTIVE_FIELD.set(None)
    try:
        yield
    finally:
        _ACTIVE_FIELD.reset(token)


class ExactMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(scalar(v) for v in row) for row in rows)
        if ncols is None:
            if not data:
                raise InputError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise DimensionMismatchError(f"row of length {len(row)} in a {ncols}-column matrix")
        self._rows = data
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "ExactMatrix":
        if not columns:
            return cls([[] for _ in range(nrows)], 0)
        return cls(zip(*columns), len(columns))

    @property
    def rows(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    def transpose(self) -> "ExactMatrix":
        if not self._rows:
            return ExactMatrix.zeros(self._ncols, 0)
        return ExactMatrix(zip(*self._rows), len(self._rows))

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols != self.ncols:
            raise DimensionMismatchError(f"cannot stack {self.shape} on {other.shape}")
        return ExactMatrix(self._rows + other._rows, self._ncols)

    def apply(self, vector: Sequence) -> tuple[Scalar, ...]:
        """Return M @ vector."""
        if len(vector) != self._ncols:
            raise DimensionMismatchError(f"vector of length {len(vector)} for {self.shape}")
        return tuple(scalar(sum(a * b for a, b in zip(row, vector))) for row in self._rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self._ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return ExactMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
            other.ncols,
        )

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self):
        return hash((self._ncols, self._rows))

    def __repr__(self):
        return f"ExactMatrix({[list(map(str, r)) for r in self._rows]}, ncols={self._ncols})"


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            if type(v) is not int:
                den = lcm(den, v.denominator)
        if den == 1:
            if any(row):
                out.append(list(row))
        else:
            ints = [int(v * den) for v in row]
            if any(ints):
                out.append(ints)
    return out


def _bareiss(rows: list[list[int]], ncols: int, reduced: bool):
    """Fraction-free elimination.

    Returns ``(pivot_rows, pivots, D)``.  With ``reduced`` the result is
    ``D`` times the reduced row echelon form (every pivot equals ``D``).
    Entries grow like minors, so the inner loop runs on gmpy2 integers.
    """
    mpz, divexact = gmpy2.mpz, gmpy2.divexact
    A = [[mpz(v) for v in row] for row in rows]
    m = len(A)
    r = 0
    prev = mpz(1)
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        pv = pr[c]
        for i in range(0 if reduced else r + 1, m):
            if i == r:
                continue
            Ai = A[i]
            f = Ai[c]
            if f:
                A[i] = [divexact(pv * a - f * b, prev) for a, b in zip(Ai, pr)]
            elif prev != pv:
                A[i] = [divexact(pv * a, prev) for a in Ai]
        prev = pv
        pivots.append(c)
        r += 1
    return [[int(v) for v in row] for row in A[:r]], pivots, int(prev)


def _echelon_mod(rows: list[list[int]], ncols: int, p: int, reduced: bool):
    A = [row for row in rows if any(row)]
    m = len(A)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        pr = [v * inv % p for v in A[r]]
        A[r] = pr
        for i in range(0 if reduced else r + 1, m):
            if i == r:
                continue
            Ai = A[i]
            f = Ai[c]
            if f:
                A[i] = [(a - f * b) % p for a, b in zip(Ai, pr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots, 1


def _eliminate(M: ExactMatrix, reduced: bool):
    field = active_field()
    if field is None:
        return _bareiss(_integer_rows(M.rows), M.ncols, reduced)
    rows = [[field.reduce(v) for v in row] for row in M.rows]
    return _echelon_mod(rows, M.ncols, field.p, reduced)


def rank(M: ExactMatrix) -> int:
    """Exact rank over the active field."""
    return len(_eliminate(M, reduced=False)[1])


def rref(M: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows, pivots, D = _eliminate(M, reduced=True)
    if active_field() is None:
        rows = [[Fraction(v, D) for v in row] for row in rows]
    return ExactMatrix(rows, M.ncols), pivots


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Basis of the right null space, one vector per row.

    Over Q the vectors are primitive integer vectors, normalized so the
    entry at their free column is positive.
    """
    rows, pivots, D = _eliminate(M, reduced=True)
    field = active_field()
    pivot_set = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivot_set:
            continue
        v = [0] * M.ncols
        v[f] = D
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        if field is None:
            g = 0
            for a in v:
                g = gcd(g, a)
            if v[f] < 0:
                g = -g
            v = [a // g for a in v]
        else:
            v = [a % field.p for a in v]
        basis.append(v)
    return ExactMatrix(basis, M.ncols)


def row_space_dim_sum_and_intersection(A: ExactMatrix, B: ExactMatrix) -> tuple[int, int]:
    """Dimensions of rowspace(A) + rowspace(B) and of their intersection."""
    if A.ncols != B.ncols:
        raise DimensionMismatchError(f"row spaces live in K^{A.ncols} and K^{B.ncols}")
    dim_sum = rank(A.stack(B))
    return dim_sum, rank(A) + rank(B) - dim_sum


class RowSpace:
    """A subspace U of K^n with normal forms modulo U.

    The complement basis is the set of unit vectors at the non-pivot columns
    of the reduced echelon form of U, so ``K^n = U + span(complement)``.
    """

    def __init__(self, spanning: ExactMatrix):
        self.ncols = spanning.ncols
        self._field = active_field()
        self._rows, self.pivots, self._D = _eliminate(spanning, reduced=True)
        pivot_set = set(self.pivots)
        self.complement = [c for c in range(self.ncols) if c not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return len(self.complement)

    def coordinates(self, vector: Sequence) -> tuple[Scalar, ...]:
        """Coordinates of ``vector`` modulo U on the complement basis."""
        if len(vector) != self.ncols:
            raise DimensionMismatchError(f"vector of length {len(vector)} in K^{self.ncols}")
        field = self._field
        if field is not None:
            v = [field.reduce(scalar(a)) for a in vector]
            p = field.p
            out = []
            for f in self.complement:
                acc = v[f]
                for row, pc in zip(self._rows, self.pivots):
                    if v[pc]:
                        acc -= v[pc] * row[f]
                out.append(acc % p)
            return tuple(out)
        v = [scalar(a) for a in vector]
        D = self._D
        out = []
        for f in self.complement:
            acc = D * v[f]
            for row, pc in zip(self._rows, self.pivots):
                if v[pc]:
                    acc -= v[pc] * row[f]
            out.append(scalar(Fraction(acc) / D))
        return tuple(out)


def cross_check(compute, p: int):
    """Run ``compute()`` modulo ``p`` and again over Q.

    Returns ``(rational_value, prime_value, agree)``; the rational value is
    the one to trust when they differ (a bad prime can only lose rank).
    """
    with prime_mode(p):
        modular = compute()
    with rational_mode():
        exact = compute()
    return exact, modular, exact == modular
