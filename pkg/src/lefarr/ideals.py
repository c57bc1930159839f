"""Homogeneous ideals through their graded pieces: Hilbert functions and syzygies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatchError, HypothesisError, InputError
from .exactmath import ExactMatrix, rank
from .polyring import HomogeneousForm, LinearForm, RingContext, power_of_linear, shifted_rows


@dataclass(frozen=True)
class GradedIdeal:
    ctx: RingContext
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise InputError("an ideal needs at least one generator")
        for g in gens:
            if g.num_vars != self.ctx.num_vars:
                raise DimensionMismatchError(f"generator in {g.num_vars} variables for a ring in {self.ctx.num_vars}")
            if g.is_zero():
                raise InputError("zero generator")
        object.__setattr__(self, "generators", gens)

    @property
    def r(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class EquigeneratedIdeal(GradedIdeal):
    """Ideal generated by r >= 1 forms of a single degree d."""

    def __post_init__(self):
        super().__post_init__()
        degrees = {g.degree for g in self.generators}
        if len(degrees) != 1:
            raise InputError(f"generators have several degrees: {sorted(degrees)}")

    @property
    def d(self) -> int:
        return self.generators[0].degree

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)


@dataclass(frozen=True)
class PowerIdeal(GradedIdeal):
    """(l_1^{d_1}, ..., l_r^{d_r}); keeps the linear forms for duality arguments."""

    linear_forms: tuple = ()
    exponents: tuple = ()

    @classmethod
    def build(cls, forms: Sequence[LinearForm], exponents: Sequence[int]) -> "PowerIdeal":
        forms = tuple(forms)
        exponents = tuple(int(e) for e in exponents)
        if len(forms) != len(exponents):
            raise InputError("one exponent per linear form is required")
        if not forms:
            raise InputError("an ideal needs at least one generator")
        ctx = RingContext(forms[0].num_vars)
        gens = tuple(power_of_linear(L, e) for L, e in zip(forms, exponents))
        return cls(ctx, gens, forms, exponents)

    def equigenerated(self) -> "EquigeneratedPowerIdeal":
        return EquigeneratedPowerIdeal(self.ctx, self.generators, self.linear_forms, self.exponents)


@dataclass(frozen=True)
class EquigeneratedPowerIdeal(EquigeneratedIdeal):
    linear_forms: tuple = ()
    exponents: tuple = ()


def power_ideal(forms: Sequence[LinearForm], d: int) -> EquigeneratedPowerIdeal:
    """(l_1^d, ..., l_r^d)."""
    return PowerIdeal.build(forms, [d] * len(forms)).equigenerated()


def ideal_piece(I: GradedIdeal, t: int) -> ExactMatrix:
    """Spanning rows of I_t: all m * F_j with deg m = t - deg F_j."""
    width = I.ctx.dim_of_degree(t)
    rows = []
    for g in I.generators:
        if t >= g.degree:
            rows.extend(shifted_rows(g, t - g.degree))
    return ExactMatrix(rows, width)


def ideal_dim(I: GradedIdeal, t: int) -> int:
    return rank(ideal_piece(I, t)) if t >= 0 else 0


def hilbert(I: GradedIdeal, t: int) -> int:
    """H_{R/I}(t); zero for t < 0."""
    if t < 0:
        return 0
    return I.ctx.dim_of_degree(t) - ideal_dim(I, t)


@dataclass(frozen=True)
class HilbertProfile:
    values: dict

    def __post_init__(self):
        if self.values and self.values.get(0) != 1:
            raise InputError("H(0) must be 1")

    def __getitem__(self, t: int) -> int:
        return self.values[t]

    def vanishes_from(self) -> int | None:
        """Least t0 with H(t) = 0 for all tabulated t >= t0, if any."""
        t0 = None
        for t in sorted(self.values, reverse=True):
            if self.values[t] != 0:
                break
            t0 = t
        return t0


def hilbert_profile(I: GradedIdeal, t_max: int) -> HilbertProfile:
    return HilbertProfile({t: hilbert(I, t) for t in range(t_max + 1)})


def assert_artinian(I: GradedIdeal, bound: int) -> int:
    """Check that H_{R/I} vanishes by degree ``bound``; return the first zero degree."""
    for t in range(bound + 1):
        if hilbert(I, t) == 0:
            return t
    raise HypothesisError(f"R/I is not zero in any degree <= {bound}; the ideal may not be artinian")


def syzygy_dimension(I: EquigeneratedIdeal, i: int) -> int:
    """h^0(K(i)): dimension of relations sum G_j F_j = 0 with deg G_j = i."""
    if i < 0:
        return 0
    return I.r * I.ctx.dim_of_degree(i) - ideal_dim(I, I.d + i)


def is_minimally_generated(I: EquigeneratedIdeal) -> bool:
    return syzygy_dimension(I, 0) == 0
