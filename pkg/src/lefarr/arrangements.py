"""Plane line arrangements and their dual point sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import ceil, gcd, lcm
from typing import Sequence

from .apolarity import FatPointScheme, fat_point_system_dim
from .errors import (HypothesisError, InconsistencyError, InputError, InsufficientBoundError,
                     InvalidArrangementError, UnsupportedInputError)
from .exactmath import ExactMatrix, RowSpace, active_field, kernel_basis, rank
from .generic import GenericSampler
from .ideals import is_minimally_generated, power_ideal, syzygy_dimension
from .lefschetz import slp_check
from .polyring import HomogeneousForm, LinearForm, RingContext, normalize_point, power_of_linear, shifted_rows

P2 = RingContext(3)


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


@dataclass(frozen=True)
class LineArrangement:
    lines: tuple

    def __post_init__(self):
        lines = tuple(L if isinstance(L, LinearForm) else LinearForm(tuple(L)) for L in self.lines)
        if len(lines) < 3:
            raise InvalidArrangementError(f"an arrangement needs at least 3 lines, got {len(lines)}")
        seen = {}
        for idx, L in enumerate(lines):
            if L.num_vars != 3:
                raise InvalidArrangementError("lines must be linear forms in 3 variables")
            key = normalize_point(L.coeffs)
            if key in seen:
                raise InvalidArrangementError(f"lines {seen[key]} and {idx} are proportional")
            seen[key] = idx
        object.__setattr__(self, "lines", lines)

    def __len__(self):
        return len(self.lines)

    def defining_polynomial(self) -> HomogeneousForm:
        f = self.lines[0].as_form()
        for L in self.lines[1:]:
            f = f * L.as_form()
        return f


@dataclass(frozen=True)
class DualPointSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(normalize_point(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise InputError("dual points must be pairwise distinct")
        if any(len(p) != 3 for p in pts):
            raise InputError("dual points live in the projective plane")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def dual_points(A: LineArrangement) -> DualPointSet:
    pts = [normalize_point(L.coeffs) for L in A.lines]
    if len(set(pts)) != len(pts):
        raise InvalidArrangementError("proportional lines")
    return DualPointSet(tuple(pts))


def _points(Z) -> list:
    if isinstance(Z, DualPointSet):
        return list(Z.points)
    if isinstance(Z, LineArrangement):
        return list(dual_points(Z).points)
    pts = [normalize_point(p) for p in Z]
    if len(set(pts)) != len(pts):
        raise InputError("points must be pairwise distinct")
    return pts


def _primitive(v) -> tuple[int, ...]:
    """Integer representative with gcd 1 and first nonzero entry positive."""
    den = 1
    for c in v:
        if type(c) is not int:
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    lead = next(c for c in ints if c)
    if lead < 0:
        g = -g
    return tuple(c // g for c in ints)


def collinear_groups(Z, min_size: int = 3) -> list[tuple[tuple, tuple[int, ...]]]:
    """Maximal collinear subsets with at least ``min_size`` points, as (line, indices)."""
    pts = [_primitive(p) for p in _points(Z)]
    groups = {}
    for i, j in itertools.combinations(range(len(pts)), 2):
        line = _primitive(_cross(pts[i], pts[j]))
        if line not in groups:
            groups[line] = tuple(k for k, p in enumerate(pts) if _dot(line, p) == 0)
    out = [(normalize_point(line), members) for line, members in groups.items() if len(members) >= min_size]
    out.sort(key=lambda item: (-len(item[1]), item[1]))
    return out


def max_aligned(Z) -> int:
    """Largest number of points of Z on one line."""
    pts = _points(Z)
    if len(pts) < 2:
        raise InputError("max_aligned needs at least two points")
    groups = collinear_groups(pts, min_size=2)
    return max(len(members) for _, members in groups)


def aligned_criterion_sides(forms: Sequence, d: int) -> tuple[int, int]:
    """(dim of (l_1^d, ..., l_{2d+1}^d)_d, max aligned dual points)."""
    forms = [L if isinstance(L, LinearForm) else LinearForm(tuple(L)) for L in forms]
    if len(forms) != 2 * d + 1:
        raise InputError(f"expected 2d+1 = {2 * d + 1} forms, got {len(forms)}")
    pts = _points([L.coeffs for L in forms])
    powers = ExactMatrix([power_of_linear(L, d).coeffs for L in forms], P2.dim_of_degree(d))
    return rank(powers), max_aligned(pts)


def aligned_criterion_check(forms: Sequence, d: int) -> bool:
    """Whether [rank of the d-th powers < 2d+1] agrees with [at least d+2 aligned duals]."""
    dim, aligned = aligned_criterion_sides(forms, d)
    return (dim < 2 * d + 1) == (aligned >= d + 2)


@dataclass(frozen=True)
class NumericalCharacter:
    s: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.s:
            raise InconsistencyError("numerical character must have s entries")
        if any(a < b for a, b in zip(self.entries, self.entries[1:])):
            raise InconsistencyError(f"numerical character {self.entries} is not non-increasing")
        if any(n < self.s for n in self.entries):
            raise InconsistencyError(f"numerical character {self.entries} has an entry below s = {self.s}")

    @property
    def degree(self) -> int:
        return sum(n - i for i, n in enumerate(self.entries))

    def h1(self, n: int) -> int:
        """h^1(I_Z(n)) predicted by the character."""
        return sum(max(ni - n - 1, 0) for ni in self.entries) - sum(max(i - n - 1, 0) for i in range(self.s))


def _h1_values(pts: list, t_max: int) -> dict[int, int]:
    Z = FatPointScheme.reduced(pts)
    deg = len(pts)
    out = {-1: deg}
    for n in range(t_max + 1):
        out[n] = deg - (P2.dim_of_degree(n) - fat_point_system_dim(Z, n, 3))
    return out


def numerical_character(Z, t_max: int | None = None) -> NumericalCharacter:
    """Recover (n_0 >= ... >= n_{s-1}) from n -> h^1(I_Z(n)) by second differences."""
    pts = _points(Z)
    if not pts:
        raise InputError("empty point set")
    if t_max is None:
        t_max = len(pts)
    h1 = _h1_values(pts, t_max)
    if h1[t_max] != 0:
        raise InsufficientBoundError(f"H_Z has not reached deg Z = {len(pts)} by degree {t_max}")
    Z0 = FatPointScheme.reduced(pts)
    s = next(t for t in range(t_max + 1) if fat_point_system_dim(Z0, t, 3) > 0)

    def g(n):
        return h1[n] + sum(max(i - n - 1, 0) for i in range(s)) if n <= t_max else 0

    def above(n):  # number of n_i >= n + 1
        return g(n - 1) - g(n)

    if above(s - 1) != s:
        raise InconsistencyError(f"h^1 inversion found {above(s - 1)} entries, expected s = {s}")
    entries = []
    for n in range(t_max + 1, s - 1, -1):
        count = above(n - 1) - above(n)
        if count < 0:
            raise InconsistencyError(f"h^1 inversion produced a negative count at {n}")
        entries.extend([n] * count)
    character = NumericalCharacter(s, tuple(entries))
    for n in range(-1, t_max + 1):
        if character.h1(n) != h1[n]:
            raise InconsistencyError(f"character {entries} does not reproduce h^1 at degree {n}")
    return character


def character_gap_subscheme(Z, t: int = 1) -> DualPointSet:
    """For a gap n_0 > n_1 + 1, the points of Z on the line it predicts."""
    if t != 1:
        raise UnsupportedInputError("only t = 1 is implemented")
    pts = _points(Z)
    character = numerical_character(pts)
    if character.s == 1:
        return DualPointSet(tuple(pts))
    n = character.entries
    if not n[0] > n[1] + 1:
        raise HypothesisError(f"numerical character {n} has no gap n_0 > n_1 + 1")
    line, members = collinear_groups(pts, min_size=2)[0]
    if len(members) != n[0]:
        raise InconsistencyError(f"largest collinear subset has {len(members)} points, character predicts {n[0]}")
    return DualPointSet(tuple(pts[i] for i in members))


@dataclass(frozen=True)
class SplittingType:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise InconsistencyError(f"splitting type needs a <= b, got ({self.a}, {self.b})")

    @property
    def gap(self) -> int:
        return self.b - self.a

    @property
    def balanced(self) -> bool:
        return self.gap <= 1

    @property
    def unstable(self) -> bool:
        """Gap >= 2 (equivalent to instability when a + b is even)."""
        return self.gap >= 2

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "gap": self.gap, "non_balanced": not self.balanced,
                "unstable": self.unstable, "chern_parity_even": (self.a + self.b) % 2 == 0}


def splitting_type(Z, sampler: GenericSampler | None = None) -> SplittingType:
    """Generic splitting type: the least a with a curve of degree a+1 through Z and a-fold at P."""
    sampler = sampler or GenericSampler()
    pts = _points(Z)
    if len(pts) < 3:
        raise InputError("splitting type needs at least 3 points")
    if max_aligned(pts) == len(pts):
        raise HypothesisError("all points are collinear; the splitting type needs 1 <= a")
    scheme = FatPointScheme.reduced(pts)
    general = sampler.points(3, label="splitting", avoid=pts)

    def h0(mult, degree):
        return min(fat_point_system_dim(scheme.with_point(P, mult), degree, 3) for P in general)

    for a in range(1, ceil((len(pts) - 1) / 2) + 1):
        if h0(a, a + 1) != 0:
            if h0(a - 1, a) != 0:
                raise InconsistencyError(f"curves of degree {a} with an {a - 1}-fold point exist")
            return SplittingType(a, len(pts) - 1 - a)
    raise InconsistencyError("no splitting type found")


def _jacobian_rows(partials, t: int) -> list:
    rows = []
    for g in partials:
        rows.extend(shifted_rows(g, t))
    return rows


def _vector_to_forms(vec, t: int) -> list[HomogeneousForm]:
    r = P2.dim_of_degree(t)
    return [HomogeneousForm(3, t, tuple(vec[j * r:(j + 1) * r])) for j in range(3)]


def _multiples(vec, t: int, shift: int) -> list[list]:
    comps = _vector_to_forms(vec, t)
    out = []
    for mono in P2.monomials(shift):
        m = HomogeneousForm.monomial(mono)
        row = []
        for c in comps:
            row.extend((m * c).coeffs)
        out.append(row)
    return out


def _proportional(g: HomogeneousForm, f: HomogeneousForm) -> bool:
    field = active_field()
    lead = next(i for i, c in enumerate(f.coeffs) if c)
    if field is None:
        c = g.coeffs[lead] / f.coeffs[lead]
        return c != 0 and all(a == c * b for a, b in zip(g.coeffs, f.coeffs))
    p = field.p
    gv = [field.reduce(a) for a in g.coeffs]
    fv = [field.reduce(a) for a in f.coeffs]
    c = gv[lead] * pow(fv[lead], -1, p) % p
    return c != 0 and all((a - c * b) % p == 0 for a, b in zip(gv, fv))


def _det3(rows) -> HomogeneousForm:
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)


def derivation_report(A: LineArrangement, t_max: int | None = None) -> dict:
    """Graded pieces of D_0 = ker(g -> g . grad f) and the Saito determinant test.

    ``t_max`` defaults to the degree b needed to see the second generator.
    """
    out = _derivation_report(A, t_max)
    out["kernel_dims"] = {t: out["kernel_dims"][t] for t in sorted(out["kernel_dims"])}
    return out


def _derivation_report(A: LineArrangement, t_max: int | None) -> dict:
    f = A.defining_polynomial()
    partials = [f.derivative(v) for v in range(3)]
    n = len(A)
    dims = {}
    kernels = {}

    def jacobian(t):
        return ExactMatrix(_jacobian_rows(partials, t), P2.dim_of_degree(t + n - 1))

    def kernel(t):
        if t not in kernels:
            kernels[t] = kernel_basis(jacobian(t).transpose())
            dims[t] = kernels[t].nrows
        return kernels[t]

    def kernel_dim(t):
        if t not in dims:
            dims[t] = 3 * P2.dim_of_degree(t) - rank(jacobian(t))
        return dims[t]

    search = (n - 1) // 2
    search_limit = min(search, t_max) if t_max is not None else search
    a = next((t for t in range(search_limit + 1) if kernel_dim(t) > 0), None)
    out = {"lines": n, "kernel_dims": dims}
    if a is None:
        if search_limit < search:
            raise InsufficientBoundError(f"no derivation up to degree {t_max}; need t_max >= {search}")
        out.update(free=False, exponents=None, reason=f"no derivation of degree <= {search}")
        return out
    b = n - 1 - a
    if t_max is None:
        t_max = b
    elif t_max < b:
        raise InsufficientBoundError(f"t_max = {t_max} is below the expected exponent b = {b}")
    K_b = kernel(b)
    for t in range(t_max + 1):
        kernel_dim(t)
    pattern = {t: P2.dim_of_degree(t - a) + P2.dim_of_degree(t - b) for t in range(t_max + 1)}
    out["candidate_exponents"] = [a, b]
    if any(dims[t] != pattern[t] for t in range(t_max + 1)):
        out.update(free=False, exponents=None, reason="kernel dimensions do not split")
        return out
    theta1 = list(kernel(a).rows[0])
    if a == b:
        theta2 = list(K_b.rows[1])
    else:
        multiples = RowSpace(ExactMatrix(_multiples(theta1, a, b - a), K_b.ncols))
        theta2 = next((list(v) for v in K_b.rows if any(multiples.coordinates(v))), None)
        if theta2 is None:
            raise InconsistencyError("degree-b derivations all lie in R * theta_1")
    euler = [HomogeneousForm.monomial(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    det = _det3([euler, _vector_to_forms(theta1, a), _vector_to_forms(theta2, b)])
    saito = _proportional(det, f)
    out.update(free=saito, exponents=[a, b] if saito else None, saito_determinant=saito,
               reason="" if saito else "Saito determinant is not a nonzero multiple of f")
    return out


def saito_freeness(A: LineArrangement, t_max: int | None = None) -> tuple[int, int] | None:
    """Exponents (a, b) if the arrangement is free, else ``None``."""
    rep = derivation_report(A, t_max)
    return tuple(rep["exponents"]) if rep["free"] else None


def intersection_points(A: LineArrangement) -> list[tuple[tuple, tuple[int, ...]]]:
    """Every intersection point with the (sorted) indices of the lines through it."""
    lines = [normalize_point(L.coeffs) for L in A.lines]
    found = {}
    for i, j in itertools.combinations(range(len(lines)), 2):
        p = normalize_point(_cross(lines[i], lines[j]))
        if p not in found:
            found[p] = tuple(k for k, L in enumerate(lines) if _dot(L, p) == 0)
    return sorted(found.items(), key=lambda item: (-len(item[1]), item[1]))


EXACT_LATTICE_LIMIT = 12
_SEARCH_CAP = 200_000


def _refine(colors: dict, blocks: list) -> dict:
    """Colour refinement of lines through the blocks (points of multiplicity >= 3)."""
    while True:
        block_sig = [tuple(sorted(colors[v] for v in B)) for B in blocks]
        incident = {v: [] for v in colors}
        for B, sig in zip(blocks, block_sig):
            for v in B:
                incident[v].append(sig)
        sig = {v: (colors[v], tuple(sorted(incident[v]))) for v in colors}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in colors}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _canonical_blocks(vertices: list, blocks: list):
    best = None
    nodes = 0

    def encode(colors):
        return tuple(sorted(tuple(sorted(colors[v] for v in B)) for B in blocks))

    def search(colors):
        nonlocal best, nodes
        nodes += 1
        if nodes > _SEARCH_CAP:
            raise OverflowError
        cells = {}
        for v, c in colors.items():
            cells.setdefault(c, []).append(v)
        if len(cells) == len(colors):
            code = encode(colors)
            if best is None or code < best:
                best = code
            return
        target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c))
        for v in sorted(cells[target]):
            forced = {u: 2 * c + (1 if c >= target and u != v else 0) for u, c in colors.items()}
            forced[v] = 2 * target
            search(_refine(forced, blocks))

    search(_refine({v: 0 for v in vertices}, blocks))
    return best


def intersection_lattice(A: LineArrangement) -> dict:
    """Combinatorial fingerprint; equal fingerprints iff isomorphic lattices (up to 12 lines)."""
    pts = intersection_points(A)
    mults = {}
    for _, members in pts:
        mults[len(members)] = mults.get(len(members), 0) + 1
    out = {
        "lines": len(A),
        "multiplicities": [[m, c] for m, c in sorted(mults.items(), reverse=True)],
    }
    blocks = [members for _, members in pts if len(members) >= 3]
    if len(A) > EXACT_LATTICE_LIMIT:
        out["strength"] = "weak"
        return out
    vertices = sorted({v for B in blocks for v in B})
    try:
        canonical = _canonical_blocks(vertices, blocks) if blocks else ()
    except OverflowError:
        out["strength"] = "weak"
        return out
    out["strength"] = "exact"
    out["canonical_points"] = [list(B) for B in canonical]
    return out


def prop_bundle_sides(forms: Sequence, d: int, sampler: GenericSampler | None = None) -> dict:
    sampler = sampler or GenericSampler()
    forms = [L if isinstance(L, LinearForm) else LinearForm(tuple(L)) for L in forms]
    extra = len(forms) - (2 * d + 1)
    if extra < 0:
        raise InputError(f"need at least 2d+1 = {2 * d + 1} forms, got {len(forms)}")
    I = power_ideal(forms, d)
    if not is_minimally_generated(I):
        raise HypothesisError(
            f"the powers are not minimally generated (s = {syzygy_dimension(I, 0)} degree-0 syzygies); "
            "for 2d+1 forms this happens exactly when at least d+2 dual points are aligned"
        )
    slp = slp_check(I, 0, 2, sampler)
    st = splitting_type([L.coeffs for L in forms], sampler)
    return {
        "d": d,
        "n": extra,
        "slp": slp.as_dict(),
        "splitting_type": st.as_dict(),
        "fails_slp": slp.fails,
        "splitting_gap": st.gap,
        "consistent": slp.fails == (st.a <= d - 1),
    }


def prop_bundle_equivalence(forms: Sequence, d: int, sampler: GenericSampler | None = None) -> tuple[bool, int, bool]:
    """(fails SLP at range 2 in degree d-2, b - a, whether failure matches a <= d-1)."""
    sides = prop_bundle_sides(forms, d, sampler)
    return sides["fails_slp"], sides["splitting_gap"], sides["consistent"]


def terao_compare(A: LineArrangement, B: LineArrangement, b_exp: int, sampler: GenericSampler | None = None) -> dict:
    """Experiment: same combinatorics and <= b+1 aligned duals; compare SLP verdicts at range 2."""
    sampler = sampler or GenericSampler()
    for name, arr in (("first", A), ("second", B)):
        if len(arr) != 2 * b_exp + 1:
            raise InputError(f"{name} arrangement has {len(arr)} lines, expected 2b+1 = {2 * b_exp + 1}")
    fa, fb = intersection_lattice(A), intersection_lattice(B)
    same = fa == fb and fa["strength"] == "exact"
    sides = []
    for arr in (A, B):
        pts = dual_points(arr)
        aligned = max_aligned(pts)
        rep = slp_check(power_ideal(arr.lines, b_exp), 0, 2, sampler)
        sides.append({"max_aligned": aligned, "alignment_ok": aligned <= b_exp + 1, "has_slp": not rep.fails,
                      "slp": rep.as_dict()})
    applicable = same and sides[0]["alignment_ok"] and sides[1]["alignment_ok"]
    agree = sides[0]["has_slp"] == sides[1]["has_slp"]
    return {
        "b": b_exp,
        "fingerprints": [fa, fb],
        "same_combinatorics": same,
        "hypotheses_hold": applicable,
        "arrangements": sides,
        "slp_verdicts_agree": agree,
        "counterexample": applicable and not agree,
    }
