"""Graded pieces of K[x_0, ..., x_n] in a fixed monomial basis.

Monomials of degree t are ordered graded-lexicographically with
x_0 > x_1 > ... > x_n, so ``monomial_basis(ctx, 2)`` in three variables is
x^2, xy, xz, y^2, yz, z^2.  Every matrix in the package uses this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .errors import DimensionMismatchError, InputError
from .exactmath import ExactMatrix, Scalar, scalar


@lru_cache(maxsize=None)
def _monomials(num_vars: int, t: int) -> tuple[tuple[int, ...], ...]:
    if t < 0:
        return ()
    if num_vars == 1:
        return ((t,),)
    out = []
    for a in range(t, -1, -1):
        for rest in _monomials(num_vars - 1, t - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _index(num_vars: int, t: int) -> dict:
    return {m: i for i, m in enumerate(_monomials(num_vars, t))}


@dataclass(frozen=True)
class RingContext:
    num_vars: int

    def __post_init__(self):
        if self.num_vars < 1:
            raise InputError("a polynomial ring needs at least one variable")

    @property
    def n(self) -> int:
        """Projective dimension."""
        return self.num_vars - 1

    def dim_of_degree(self, t: int) -> int:
        return comb(t + self.n, self.n) if t >= 0 else 0

    def monomials(self, t: int) -> tuple[tuple[int, ...], ...]:
        return _monomials(self.num_vars, t)

    def index(self, t: int) -> dict:
        return _index(self.num_vars, t)


def monomial_basis(ctx: RingContext, t: int) -> list[tuple[int, ...]]:
    return list(ctx.monomials(t))


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(scalar(c) for c in self.coeffs)
        if not any(coeffs):
            raise InputError("the zero linear form is not allowed")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def num_vars(self) -> int:
        return len(self.coeffs)

    def scaled(self, c) -> "LinearForm":
        return LinearForm(tuple(c * a for a in self.coeffs))

    def as_form(self) -> "HomogeneousForm":
        return HomogeneousForm(self.num_vars, 1, self.coeffs)


@dataclass(frozen=True)
class HomogeneousForm:
    num_vars: int
    degree: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(scalar(c) for c in self.coeffs)
        expected = len(_monomials(self.num_vars, self.degree))
        if len(coeffs) != expected:
            raise DimensionMismatchError(
                f"degree-{self.degree} form in {self.num_vars} variables needs {expected} coefficients"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_terms(cls, num_vars: int, terms) -> "HomogeneousForm":
        """Build from ``{exponent tuple: coefficient}`` (all of one degree)."""
        terms = {tuple(e): scalar(c) for e, c in dict(terms).items()}
        degrees = {sum(e) for e in terms}
        if len(degrees) != 1:
            raise InputError(f"terms are not homogeneous of one degree: {sorted(degrees)}")
        degree = degrees.pop()
        if any(len(e) != num_vars for e in terms):
            raise DimensionMismatchError(f"exponent vectors must have length {num_vars}")
        idx = _index(num_vars, degree)
        coeffs = [0] * len(idx)
        for e, c in terms.items():
            coeffs[idx[e]] += c
        return cls(num_vars, degree, tuple(coeffs))

    @classmethod
    def monomial(cls, exponents: Sequence[int]) -> "HomogeneousForm":
        return cls.from_terms(len(exponents), {tuple(exponents): 1})

    def terms(self) -> dict:
        return {m: c for m, c in zip(_monomials(self.num_vars, self.degree), self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if other.num_vars != self.num_vars:
            raise DimensionMismatchError("forms live in different rings")
        degree = self.degree + other.degree
        idx = _index(self.num_vars, degree)
        out = [0] * len(idx)
        b_terms = other.terms()
        for ma, ca in self.terms().items():
            for mb, cb in b_terms.items():
                out[idx[tuple(x + y for x, y in zip(ma, mb))]] += ca * cb
        return HomogeneousForm(self.num_vars, degree, tuple(out))

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if (other.num_vars, other.degree) != (self.num_vars, self.degree):
            raise DimensionMismatchError("cannot add forms of different degree or ring")
        return HomogeneousForm(self.num_vars, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + other.scaled(-1)

    def scaled(self, c) -> "HomogeneousForm":
        c = scalar(c)
        return HomogeneousForm(self.num_vars, self.degree, tuple(c * a for a in self.coeffs))

    def derivative(self, var: int) -> "HomogeneousForm":
        if self.degree == 0:
            return HomogeneousForm(self.num_vars, 0, (0,))
        idx = _index(self.num_vars, self.degree - 1)
        out = [0] * len(idx)
        for m, c in self.terms().items():
            if m[var]:
                lowered = m[:var] + (m[var] - 1,) + m[var + 1:]
                out[idx[lowered]] += c * m[var]
        return HomogeneousForm(self.num_vars, self.degree - 1, tuple(out))

    def evaluate(self, point: Sequence) -> Scalar:
        total = 0
        for m, c in self.terms().items():
            term = c
            for x, e in zip(point, m):
                if e:
                    term *= x**e
            total += term
        return scalar(total)


def _multinomial(d: int, exps: Sequence[int]) -> int:
    out = factorial(d)
    for e in exps:
        out //= factorial(e)
    return out


def power_of_linear(L: LinearForm, d: int) -> HomogeneousForm:
    """Coefficients of L^d by multinomial expansion."""
    if d < 1:
        raise InputError(f"power must be at least 1, got {d}")
    coeffs = []
    for m in _monomials(L.num_vars, d):
        c = _multinomial(d, m)
        for a, e in zip(L.coeffs, m):
            if e:
                c *= a**e
        coeffs.append(c)
    return HomogeneousForm(L.num_vars, d, tuple(coeffs))


def multiplication_matrix(f: HomogeneousForm, source_degree: int) -> ExactMatrix:
    """Matrix of g -> f*g from R_a to R_{a + deg f} (columns indexed by R_a)."""
    target = _index(f.num_vars, source_degree + f.degree)
    nrows = len(target)
    f_terms = f.terms()
    columns = []
    for m in _monomials(f.num_vars, source_degree):
        col = [0] * nrows
        for e, c in f_terms.items():
            col[target[tuple(x + y for x, y in zip(e, m))]] += c
        columns.append(col)
    return ExactMatrix.from_columns(columns, nrows)


def shifted_rows(f: HomogeneousForm, source_degree: int) -> list[list[Scalar]]:
    """Coefficient vectors of m*f for m running over the monomials of R_a."""
    target = _index(f.num_vars, source_degree + f.degree)
    f_terms = f.terms()
    rows = []
    for m in _monomials(f.num_vars, source_degree):
        row = [0] * len(target)
        for e, c in f_terms.items():
            row[target[tuple(x + y for x, y in zip(e, m))]] += c
        rows.append(row)
    return rows


def normalize_point(coords: Sequence) -> tuple[Scalar, ...]:
    """Projective point scaled so its first nonzero coordinate is 1."""
    coords = tuple(scalar(c) for c in coords)
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise InputError("the zero vector is not a projective point")
    if lead == 1:
        return coords
    return tuple(scalar(Fraction(c) / lead) for c in coords)


def _falling(a: int, b: int) -> int:
    out = 1
    for j in range(b):
        out *= a - j
    return out


def derivative_rows(num_vars: int, order: int, t: int, point: Sequence) -> list[list[Scalar]]:
    """Rows: the functionals F -> (d^beta F)(point) on R_t, for |beta| = order."""
    sources = _monomials(num_vars, t)
    rows = []
    for beta in _monomials(num_vars, order):
        row = []
        for alpha in sources:
            if any(a < b for a, b in zip(alpha, beta)):
                row.append(0)
                continue
            c = 1
            for a, b, x in zip(alpha, beta, point):
                c *= _falling(a, b)
                if a > b:
                    c *= x ** (a - b)
            row.append(scalar(c))
        rows.append(row)
    return rows


def vanishing_conditions_matrix(point: Sequence, mult: int, t: int) -> ExactMatrix:
    """Conditions on R_t for a form to have multiplicity >= ``mult`` at ``point``.

    Rows are the partial derivatives of order ``mult - 1`` evaluated at the
    point; by Euler's formula their vanishing forces all lower orders to
    vanish.  A degree-t form of multiplicity above t is zero, so orders
    beyond t are capped at t.
    """
    if mult < 1:
        raise InputError(f"multiplicity must be at least 1, got {mult}")
    if t < 0:
        raise InputError(f"degree must be non-negative, got {t}")
    point = tuple(scalar(c) for c in point)
    order = min(mult - 1, t)
    return ExactMatrix(derivative_rows(len(point), order, t, point), len(_monomials(len(point), t)))
