"""Fat points in the dual space, inverse systems and unexpected curves.

Forms on the dual space are paired with forms on the original space by
differentiation, <x^a, y^b> = a! if a == b and 0 otherwise.  Under this
pairing the annihilator of l^e R_{t-e} in degree t is the space of degree-t
forms vanishing to order t-e+1 at the point with coordinates l.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import HypothesisError, InputError
from .exactmath import ExactMatrix, kernel_basis, rank
from .generic import GenericSampler
from .ideals import GradedIdeal, PowerIdeal, hilbert, ideal_piece
from .polyring import RingContext, normalize_point, vanishing_conditions_matrix


@dataclass(frozen=True)
class FatPointScheme:
    points: tuple

    def __post_init__(self):
        seen = set()
        out = []
        width = None
        for point, mult in self.points:
            p = normalize_point(point)
            if width is None:
                width = len(p)
            elif len(p) != width:
                raise InputError("points have different numbers of coordinates")
            if int(mult) < 1:
                raise InputError(f"multiplicity must be at least 1, got {mult}")
            if p in seen:
                raise InputError(f"duplicate point {tuple(map(str, p))}")
            seen.add(p)
            out.append((p, int(mult)))
        object.__setattr__(self, "points", tuple(out))

    @classmethod
    def reduced(cls, points: Iterable[Sequence]) -> "FatPointScheme":
        return cls(tuple((p, 1) for p in points))

    @property
    def num_vars(self) -> int | None:
        return len(self.points[0][0]) if self.points else None

    def with_point(self, point: Sequence, mult: int) -> "FatPointScheme":
        if mult == 0:
            return self
        return FatPointScheme(self.points + ((point, mult),))


def fat_point_conditions(Z: FatPointScheme, t: int, num_vars: int | None = None) -> ExactMatrix:
    num_vars = num_vars or Z.num_vars
    if num_vars is None:
        raise InputError("the number of variables is needed for an empty scheme")
    width = RingContext(num_vars).dim_of_degree(t)
    rows = []
    for p, m in Z.points:
        rows.extend(vanishing_conditions_matrix(p, m, t).rows)
    return ExactMatrix(rows, width)


def fat_point_system_dim(Z: FatPointScheme, t: int, num_vars: int | None = None) -> int:
    """Dimension of degree-t forms with multiplicity >= m_i at every P_i."""
    if t < 0:
        return 0
    M = fat_point_conditions(Z, t, num_vars)
    return M.ncols - rank(M)


def fat_point_system_basis(Z: FatPointScheme, t: int, num_vars: int | None = None) -> ExactMatrix:
    return kernel_basis(fat_point_conditions(Z, t, num_vars))


def apolarity_weights(ctx: RingContext, t: int) -> list[int]:
    out = []
    for m in ctx.monomials(t):
        w = 1
        for e in m:
            w *= factorial(e)
        out.append(w)
    return out


def inverse_system(I: GradedIdeal, t: int) -> ExactMatrix:
    """Basis (as rows of dual-space forms) of the annihilator of I_t."""
    piece = ideal_piece(I, t)
    weights = apolarity_weights(I.ctx, t)
    scaled = ExactMatrix([[a * w for a, w in zip(row, weights)] for row in piece.rows], piece.ncols)
    return kernel_basis(scaled)


def dual_scheme(I: PowerIdeal, j: int) -> FatPointScheme:
    """The points l_i^dual with multiplicities j - d_i + 1."""
    return FatPointScheme(tuple((L.coeffs, j - e + 1) for L, e in zip(I.linear_forms, I.exponents)))


def ei_duality_sides(I: PowerIdeal, j: int) -> tuple[int, int]:
    if not I.linear_forms:
        raise InputError("duality needs an ideal generated by powers of linear forms")
    if j < max(I.exponents):
        raise HypothesisError(f"duality needs j >= max d_i = {max(I.exponents)}, got j = {j}")
    return hilbert(I, j), fat_point_system_dim(dual_scheme(I, j), j, I.ctx.num_vars)


def ei_duality_check(I: PowerIdeal, j: int) -> bool:
    """dim (R/I)_j equals the fat-point system dimension at the dual points."""
    left, right = ei_duality_sides(I, j)
    return left == right


@dataclass(frozen=True)
class UnexpectedCurveReport:
    j: int
    actual: int
    expected: int
    has_unexpected: bool
    samples_used: int = 0

    def __post_init__(self):
        if self.actual < 0:
            raise InputError("negative linear system dimension")
        if self.has_unexpected != (self.actual > self.expected):
            raise InputError("unexpected-curve flag disagrees with the dimensions")

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "curve_degree": self.j + 1,
            "actual": self.actual,
            "expected": self.expected,
            "has_unexpected": self.has_unexpected,
            "samples_used": self.samples_used,
        }


def _as_points(Z) -> list[tuple]:
    points = getattr(Z, "points", Z)
    if isinstance(Z, FatPointScheme):
        return [p for p, _ in Z.points]
    return [normalize_point(p) for p in points]


def _unexpected(points: list, j: int, sampler: GenericSampler) -> UnexpectedCurveReport:
    Z = FatPointScheme.reduced(points)
    num_vars = len(points[0])
    expected = max(fat_point_system_dim(Z, j + 1, num_vars) - comb(j + 1, 2), 0)
    if j == 0:
        return UnexpectedCurveReport(0, fat_point_system_dim(Z, 1, num_vars), expected, False, 0)
    general = sampler.points(num_vars, label=f"unexpected/{j}", avoid=points)
    actual = min(fat_point_system_dim(Z.with_point(P, j), j + 1, num_vars) for P in general)
    return UnexpectedCurveReport(j, actual, expected, actual > expected, len(general))


def unexpected_curve_check(Z, j: int, sampler: GenericSampler | None = None) -> UnexpectedCurveReport:
    """Compare curves of degree j+1 through Z with a general j-fold point to the naive count.

    The general value is the minimum over the sampled points.
    """
    if j < 1:
        raise InputError(f"j must be at least 1, got {j}")
    points = _as_points(Z)
    if not points:
        raise InputError("the point set is empty")
    FatPointScheme.reduced(points)
    return _unexpected(points, j, sampler or GenericSampler())


def cor_unexp_sides(Z, d: int, sampler: GenericSampler | None = None) -> dict:
    """The three conditions for 2d+1 points with at most d+1 aligned, each computed on its own."""
    from .arrangements import max_aligned
    from .ideals import power_ideal
    from .laplace import osculating_dim_apolar
    from .lefschetz import slp_check
    from .polyring import LinearForm

    sampler = sampler or GenericSampler()
    points = _as_points(Z)
    if len(points) != 2 * d + 1:
        raise InputError(f"expected 2d+1 = {2 * d + 1} points, got {len(points)}")
    FatPointScheme.reduced(points)
    aligned = max_aligned(points)
    if aligned > d + 1:
        raise HypothesisError(f"{aligned} aligned points; the equivalence needs at most d+1 = {d + 1}")
    I = power_ideal([LinearForm(p) for p in points], d)
    curve = _unexpected(points, d - 1, sampler)
    slp = slp_check(I, 0, 2, sampler)
    if d >= 2:
        laplace = osculating_dim_apolar(I, 0, d - 2, sampler)
        laplace_count = laplace.nontrivial_count
    else:
        laplace_count = 0
    return {
        "d": d,
        "max_aligned": aligned,
        "unexpected": curve.as_dict(),
        "slp": slp.as_dict(),
        "laplace_nontrivial": laplace_count,
        "verdicts": [curve.has_unexpected, slp.fails, laplace_count >= 1],
    }


def cor_unexp_equivalence(Z, d: int, sampler: GenericSampler | None = None) -> tuple[bool, bool, bool]:
    """(unexpected curve of degree d, SLP failure at range 2 in degree d-2, Laplace equation of order d-2)."""
    return tuple(cor_unexp_sides(Z, d, sampler)["verdicts"])
