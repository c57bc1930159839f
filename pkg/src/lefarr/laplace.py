"""Osculating spaces of projected Veronese varieties and Laplace equations.

X is the image of P^n under v_{d+i} followed by the projection from I_{d+i}.
Its coordinate functions are a basis of the inverse system of I_{d+i}; for
monomial ideals these are the monomials of degree d+i outside I.

Bookkeeping for order m: of the C(n+m, n) derivative vectors, ``delta_total``
is the number of independent linear relations, ``trivial_count`` the number
forced by the projection (N_s^+ + dim I_m), and ``nontrivial_count`` the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .apolarity import fat_point_system_basis, inverse_system, FatPointScheme
from .errors import HypothesisError, InconsistencyError, InputError, UnsupportedInputError
from .exactmath import ExactMatrix, rank, row_space_dim_sum_and_intersection
from .generic import GenericSampler
from .ideals import EquigeneratedIdeal, hilbert, ideal_dim, syzygy_dimension
from .lefschetz import ns_triple, slp_check
from .polyring import RingContext, derivative_rows


@dataclass(frozen=True)
class OsculatingReport:
    order: int
    ambient_dim: int
    expected_dim: int
    actual_dim: int
    delta_total: int
    trivial_count: int
    nontrivial_count: int
    route: str = ""
    samples_used: int = 0

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "ambient_dim": self.ambient_dim,
            "expected_dim": self.expected_dim,
            "actual_dim": self.actual_dim,
            "delta_total": self.delta_total,
            "trivial_count": self.trivial_count,
            "nontrivial_count": self.nontrivial_count,
            "route": self.route,
            "samples_used": self.samples_used,
        }


def _osculating_rank(coordinate_rows, num_vars: int, degree: int, m: int, points) -> int:
    best = 0
    for t in points:
        D = derivative_rows(num_vars, m, degree, t)
        # column j: all order-m partials of coordinate j at t
        M = ExactMatrix([[sum(a * b for a, b in zip(drow, g)) for g in coordinate_rows] for drow in D], len(coordinate_rows))
        best = max(best, rank(M))
    return best


def osculating_dim_monomials(ctx: RingContext, monomials, m: int, sampler: GenericSampler | None = None,
                             trivial_count: int | None = None) -> OsculatingReport:
    """Osculating space of order m of the toric variety parametrized by ``monomials``."""
    sampler = sampler or GenericSampler()
    monomials = list(monomials)
    degree = sum(monomials[0]) if monomials else 0
    idx = ctx.index(degree)
    coords = []
    for mono in monomials:
        row = [0] * len(idx)
        row[idx[tuple(mono)]] = 1
        coords.append(row)
    points = sampler.points(ctx.num_vars, label=f"osculating/{degree}/{m}")
    return _report(ctx, coords, degree, m, points, trivial_count, "monomial")


def _report(ctx, coords, degree, m, points, trivial_count, route) -> OsculatingReport:
    full = comb(ctx.n + m, ctx.n)
    N = len(coords) - 1
    actual = (_osculating_rank(coords, ctx.num_vars, degree, m, points) if coords else 0) - 1
    expected = min(full - 1, N)
    delta_total = full - 1 - actual
    if trivial_count is None:
        trivial_count = max(0, full - 1 - N)
    return OsculatingReport(m, N, expected, actual, delta_total, trivial_count, delta_total - trivial_count,
                            route, len(points))


def _projection_trivial(I: EquigeneratedIdeal, i: int, m: int) -> int:
    k = I.d + i - m
    if k < 1:
        raise InputError(f"order m = {m} must be below d+i = {I.d + i}")
    ns = ns_triple(I.r, i, k, I.d, syzygy_dimension(I, i), I.ctx.num_vars)
    return ns.N_plus + ideal_dim(I, m)


def osculating_dim_direct(I: EquigeneratedIdeal, i: int, m: int, sampler: GenericSampler | None = None) -> OsculatingReport:
    """Monomial ideals only: parametrize by the monomials of degree d+i outside I."""
    if not I.is_monomial():
        raise UnsupportedInputError("direct osculating route needs monomial generators; use the apolar or Lefschetz route")
    degree = I.d + i
    gens = [next(iter(g.terms())) for g in I.generators]
    outside = [mono for mono in I.ctx.monomials(degree)
               if not any(all(a >= b for a, b in zip(mono, gen)) for gen in gens)]
    return osculating_dim_monomials(I.ctx, outside, m, sampler, _projection_trivial(I, i, m))


def osculating_dim_apolar(I: EquigeneratedIdeal, i: int, m: int, sampler: GenericSampler | None = None) -> OsculatingReport:
    """Any ideal: parametrize by a basis of the inverse system of I_{d+i}."""
    sampler = sampler or GenericSampler()
    degree = I.d + i
    coords = [list(row) for row in inverse_system(I, degree).rows]
    points = sampler.points(I.ctx.num_vars, label=f"osculating/{degree}/{m}")
    return _report(I.ctx, coords, degree, m, points, _projection_trivial(I, i, m), "apolar")


def laplace_count_via_lefschetz(I: EquigeneratedIdeal, i: int, k: int, sampler: GenericSampler | None = None) -> OsculatingReport:
    """Laplace bookkeeping read off the kernel and cokernel of x L^k."""
    if syzygy_dimension(I, i - k) != 0:
        raise HypothesisError(f"needs no syzygies of degree i-k = {i - k}")
    rep = slp_check(I, i, k, sampler)
    ctx = I.ctx
    m = I.d + i - k
    ns = rep.ns
    nontrivial = rep.dim_ker - ns.N_plus
    if nontrivial != rep.dim_coker - ns.N_minus:
        raise InconsistencyError("kernel and cokernel give different Laplace counts")
    dim_Im = ideal_dim(I, m)
    full = ctx.dim_of_degree(m)
    actual = full - dim_Im - rep.dim_ker - 1
    N = hilbert(I, I.d + i) - 1
    delta_total = full - 1 - actual
    trivial = ns.N_plus + dim_Im
    return OsculatingReport(m, N, min(full - 1, N), actual, delta_total, trivial, delta_total - trivial,
                            "lefschetz", rep.samples_used)


def hypersurface_route_dim(I: EquigeneratedIdeal, i: int, k: int, sampler: GenericSampler | None = None) -> int:
    """Generic dim of I_{d+i}^perp meeting the forms with multiplicity d+i-k+1 at L^dual."""
    sampler = sampler or GenericSampler()
    degree = I.d + i
    perp = inverse_system(I, degree)
    best = None
    for L in sampler.linear_forms(I.ctx.num_vars, label=f"hypersurface/{i}/{k}"):
        fat = fat_point_system_basis(FatPointScheme(((L.coeffs, degree - k + 1),)), degree, I.ctx.num_vars)
        _, meet = row_space_dim_sum_and_intersection(perp, fat)
        best = meet if best is None else min(best, meet)
    return best


def thgen_routes(I: EquigeneratedIdeal, i: int, k: int, sampler: GenericSampler | None = None) -> dict:
    """delta computed five ways: rank defect, kernel, cokernel, Laplace count, singular hypersurfaces."""
    sampler = sampler or GenericSampler()
    if syzygy_dimension(I, i - k) != 0:
        raise HypothesisError(f"the equivalence needs no syzygies of degree i-k = {i - k}")
    rep = slp_check(I, i, k, sampler)
    ns = rep.ns
    m = I.d + i - k
    if I.is_monomial():
        osc = osculating_dim_direct(I, i, m, sampler)
    else:
        osc = osculating_dim_apolar(I, i, m, sampler)
    via_lefschetz = laplace_count_via_lefschetz(I, i, k, sampler)
    hyp = hypersurface_route_dim(I, i, k, sampler)
    return {
        "rank_defect": rep.delta,
        "kernel": rep.dim_ker - ns.N_plus,
        "cokernel": rep.dim_coker - ns.N_minus,
        "laplace": osc.nontrivial_count,
        "laplace_via_lefschetz": via_lefschetz.nontrivial_count,
        "hypersurface": hyp - ns.N_minus,
        "laplace_route": osc.route,
        "ns": ns.as_dict(),
    }


def thgen_equivalence_check(I: EquigeneratedIdeal, i: int, k: int, sampler: GenericSampler | None = None) -> bool:
    routes = thgen_routes(I, i, k, sampler)
    values = {routes[key] for key in ("rank_defect", "kernel", "cokernel", "laplace", "laplace_via_lefschetz", "hypersurface")}
    return len(values) == 1
