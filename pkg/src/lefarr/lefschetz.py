"""Multiplication by powers of a general linear form on A = R/I.

For an ideal generated in degree d the maps studied are

    x L^k : A_{d+i-k} -> A_{d+i}

and its counterpart on the thickened line L^k = 0,

    (g_1, ..., g_r) -> sum g_j F_j,  R_i/(L^k) ^ r -> R_{d+i}/(L^k),

whose kernels and cokernels differ exactly by the syzygies of degree i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisError, InconsistencyError, InputError
from .exactmath import ExactMatrix, RowSpace, rank
from .generic import GenericSampler
from .ideals import EquigeneratedIdeal, hilbert, ideal_piece, syzygy_dimension
from .polyring import LinearForm, RingContext, power_of_linear, shifted_rows


@dataclass(frozen=True)
class NsTriple:
    N_s: int
    N_plus: int
    N_minus: int
    r: int
    i: int
    k: int
    d: int
    s: int

    def __post_init__(self):
        if self.N_plus != max(0, self.N_s) or self.N_minus != max(0, -self.N_s):
            raise InconsistencyError(f"bad sign split of N_s = {self.N_s}")

    def as_dict(self) -> dict:
        return {
            "N_s": self.N_s,
            "N_plus": self.N_plus,
            "N_minus": self.N_minus,
            "inputs": {"r": self.r, "i": self.i, "k": self.k, "d": self.d, "s": self.s},
        }


def ns_triple(r: int, i: int, k: int, d: int, s: int, num_vars: int = 3) -> NsTriple:
    """N_s = r (r_i - r_{i-k}) - (r_{d+i} - r_{d+i-k}) - s and its sign parts."""
    if k < 1:
        raise InputError(f"range k must be at least 1, got {k}")
    rt = RingContext(num_vars).dim_of_degree
    value = r * (rt(i) - rt(i - k)) - (rt(d + i) - rt(d + i - k)) - s
    return NsTriple(value, max(0, value), max(0, -value), r, i, k, d, s)


def _quotient_rows(source_rows, source_space: RowSpace, target_space: RowSpace) -> list:
    return [target_space.coordinates(source_rows[c]) for c in source_space.complement]


class _TimesLPower:
    """x L^k between fixed quotient bases; one instance serves many L."""

    def __init__(self, I: EquigeneratedIdeal, i: int, k: int):
        if k < 1:
            raise InputError(f"range k must be at least 1, got {k}")
        self.I, self.k = I, k
        self.source_degree = I.d + i - k
        self.target_degree = I.d + i
        self.target = RowSpace(ideal_piece(I, self.target_degree))
        if self.source_degree >= 0:
            self.source = RowSpace(ideal_piece(I, self.source_degree))
        else:
            self.source = None

    def matrix(self, L: LinearForm) -> ExactMatrix:
        width = self.target.codim
        if self.source is None:
            return ExactMatrix([], width)
        images = shifted_rows(power_of_linear(L, self.k), self.source_degree)
        return ExactMatrix(_quotient_rows(images, self.source, self.target), width)


def times_L_power_matrix(I: EquigeneratedIdeal, L: LinearForm, i: int, k: int) -> ExactMatrix:
    """x L^k : A_{d+i-k} -> A_{d+i}; row j is the image of the j-th source basis vector.

    Both quotients use the monomials at the non-pivot columns of the reduced
    echelon form of the ideal piece as basis.
    """
    return _TimesLPower(I, i, k).matrix(L)


@dataclass(frozen=True)
class LefschetzReport:
    k: int
    degree: int
    i: int
    s: int
    dim_source: int
    dim_target: int
    rank: int
    dim_ker: int
    dim_coker: int
    delta: int
    fails: bool
    samples_used: int
    ns: NsTriple
    syzygy_hypothesis: bool
    sample_ranks: tuple = field(default=())

    def __post_init__(self):
        if self.dim_ker != self.dim_source - self.rank or self.dim_coker != self.dim_target - self.rank:
            raise InconsistencyError("kernel/cokernel dimensions disagree with the rank")
        if self.fails != (self.delta >= 1):
            raise InconsistencyError("failure flag disagrees with delta")

    def as_dict(self) -> dict:
        out = {
            "k": self.k,
            "i": self.i,
            "degree": self.degree,
            "s": self.s,
            "dim_source": self.dim_source,
            "dim_target": self.dim_target,
            "rank": self.rank,
            "dim_ker": self.dim_ker,
            "dim_coker": self.dim_coker,
            "delta": self.delta,
            "fails": self.fails,
            "samples_used": self.samples_used,
            "sample_ranks": list(self.sample_ranks),
            "ns": self.ns.as_dict(),
            "no_syzygy_in_degree_i_minus_k": self.syzygy_hypothesis,
        }
        if self.syzygy_hypothesis:
            out["ker_decomposition"] = {"N_plus": self.ns.N_plus, "delta": self.delta}
            out["coker_decomposition"] = {"N_minus": self.ns.N_minus, "delta": self.delta}
        return out


def slp_check(I: EquigeneratedIdeal, i: int, k: int, sampler: GenericSampler | None = None) -> LefschetzReport:
    """Generic rank of x L^k : A_{d+i-k} -> A_{d+i} and the failure defect delta.

    The generic rank is the largest rank seen over the sampled forms.
    """
    sampler = sampler or GenericSampler()
    op = _TimesLPower(I, i, k)
    dim_source = hilbert(I, op.source_degree)
    dim_target = hilbert(I, op.target_degree)
    forms = sampler.linear_forms(I.ctx.num_vars, label=f"slp/{i}/{k}")
    ranks = tuple(rank(op.matrix(L)) for L in forms)
    generic = max(ranks)
    if generic > min(dim_source, dim_target):
        raise InconsistencyError(f"rank {generic} exceeds min({dim_source}, {dim_target})")
    if dim_source == 0 or dim_target == 0:
        delta = 0
    else:
        delta = min(dim_source, dim_target) - generic
    s = syzygy_dimension(I, i)
    hypothesis = syzygy_dimension(I, i - k) == 0
    ns = ns_triple(I.r, i, k, I.d, s, I.ctx.num_vars)
    dim_ker = dim_source - generic
    dim_coker = dim_target - generic
    if hypothesis:
        if ns.N_s != dim_source - dim_target:
            raise InconsistencyError(f"N_s = {ns.N_s} but H(d+i-k) - H(d+i) = {dim_source - dim_target}")
        if dim_ker != ns.N_plus + delta or dim_coker != ns.N_minus + delta:
            raise InconsistencyError("kernel/cokernel do not split as N_plus/N_minus + delta")
    return LefschetzReport(
        k=k,
        degree=op.source_degree,
        i=i,
        s=s,
        dim_source=dim_source,
        dim_target=dim_target,
        rank=generic,
        dim_ker=dim_ker,
        dim_coker=dim_coker,
        delta=delta,
        fails=delta >= 1,
        samples_used=len(forms),
        ns=ns,
        syzygy_hypothesis=hypothesis,
        sample_ranks=ranks,
    )


def wlp_check(I: EquigeneratedIdeal, i: int, sampler: GenericSampler | None = None) -> LefschetzReport:
    return slp_check(I, i, 1, sampler)


def thickened_line_sections_matrix(I: EquigeneratedIdeal, L: LinearForm, i: int, k: int) -> ExactMatrix:
    """(g_1..g_r) -> sum g_j F_j from (R_i/L^k R_{i-k})^r to R_{d+i}/L^k R_{d+i-k}.

    Rows are indexed by (generator, complement monomial of R_i).
    """
    if k < 1:
        raise InputError(f"range k must be at least 1, got {k}")
    ctx = I.ctx
    Lk = power_of_linear(L, k)
    target_rows = shifted_rows(Lk, I.d + i - k) if I.d + i - k >= 0 else []
    target = RowSpace(ExactMatrix(target_rows, ctx.dim_of_degree(I.d + i)))
    if i < 0:
        return ExactMatrix([], target.codim)
    source_rows = shifted_rows(Lk, i - k) if i - k >= 0 else []
    source = RowSpace(ExactMatrix(source_rows, ctx.dim_of_degree(i)))
    rows = []
    for F in I.generators:
        rows.extend(_quotient_rows(shifted_rows(F, i), source, target))
    return ExactMatrix(rows, target.codim)


def p1bis_sides(I: EquigeneratedIdeal, L: LinearForm, i: int, k: int) -> dict:
    """Kernel and cokernel dimensions of both maps for one linear form."""
    if syzygy_dimension(I, i - k) != 0:
        raise HypothesisError(
            f"the kernel/cokernel comparison needs no syzygies of degree i-k = {i - k} (h^0(K(i-k)) = 0)"
        )
    T = thickened_line_sections_matrix(I, L, i, k)
    M = times_L_power_matrix(I, L, i, k)
    rank_T, rank_M = rank(T), rank(M)
    return {
        "thickened": {"dim_source": T.nrows, "dim_target": T.ncols, "dim_ker": T.nrows - rank_T, "dim_coker": T.ncols - rank_T},
        "times_L": {"dim_source": M.nrows, "dim_target": M.ncols, "dim_ker": M.nrows - rank_M, "dim_coker": M.ncols - rank_M},
        "s": syzygy_dimension(I, i),
    }


def p1bis_oracle(I: EquigeneratedIdeal, L: LinearForm, i: int, k: int) -> bool:
    """Same cokernel, and kernels differing by the degree-i syzygies."""
    sides = p1bis_sides(I, L, i, k)
    T, M = sides["thickened"], sides["times_L"]
    return T["dim_coker"] == M["dim_coker"] and T["dim_ker"] == M["dim_ker"] + sides["s"]
