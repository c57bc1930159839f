import random

import pytest

from gen import CHMN_LINES, TOGLIATTI_MONOMIALS, random_points
from lefarr.errors import HypothesisError, InputError
from lefarr.exactmath import ExactMatrix, rank
from lefarr.generic import GenericSampler
from lefarr.ideals import EquigeneratedIdeal, hilbert, ideal_piece, power_ideal, syzygy_dimension
from lefarr.lefschetz import (ns_triple, p1bis_oracle, p1bis_sides, slp_check, thickened_line_sections_matrix,
                              times_L_power_matrix, wlp_check)
from lefarr.polyring import HomogeneousForm, LinearForm, RingContext, power_of_linear, shifted_rows

P2 = RingContext(3)
SAMPLER = GenericSampler()


def togliatti():
    return EquigeneratedIdeal(P2, tuple(HomogeneousForm.monomial(m) for m in TOGLIATTI_MONOMIALS))


@pytest.fixture(scope="module")
def chmn():
    return power_ideal([LinearForm(l) for l in CHMN_LINES], 8)


def image_rank_oracle(I, L, i, k):
    """dim (L^k R_{d+i-k} + I_{d+i}) - dim I_{d+i}, computed without quotient bases."""
    top = I.d + i
    piece = ideal_piece(I, top)
    src = top - k
    if src < 0:
        return 0
    images = ExactMatrix(shifted_rows(power_of_linear(L, k), src), P2.dim_of_degree(top))
    return rank(piece.stack(images)) - rank(piece)


def test_togliatti_fails_wlp_by_one():
    rep = wlp_check(togliatti(), 0, SAMPLER)
    assert (rep.degree, rep.dim_source, rep.dim_target, rep.rank) == (2, 6, 6, 5)
    assert rep.fails and rep.delta == 1
    assert rep.dim_ker == rep.ns.N_plus + 1 and rep.dim_coker == rep.ns.N_minus + 1


def test_complete_intersection_has_wlp():
    I = EquigeneratedIdeal(P2, tuple(HomogeneousForm.monomial(m) for m in [(2, 0, 0), (0, 2, 0), (0, 0, 2)]))
    rep = slp_check(I, 0, 1, SAMPLER)
    assert (rep.dim_source, rep.dim_target, rep.rank, rep.fails) == (3, 3, 3, False)


def test_chmn_has_slp_at_range_two(chmn):
    rep = slp_check(chmn, 0, 2, SAMPLER)
    assert (rep.dim_source, rep.dim_target, rep.rank, rep.delta, rep.fails) == (28, 33, 28, 0, False)
    assert rep.s == 5 and rep.ns.N_minus == 5 and rep.ns.N_s == -5


def test_ns_triple_examples():
    for d in range(1, 11):
        for s in range(0, 4):
            assert ns_triple(2 * d + 1, 0, 2, d, s).N_s == -s
    assert ns_triple(17, 0, 2, 8, 5).N_minus == 5
    for d in range(1, 8):
        rd = P2.dim_of_degree(d)
        assert ns_triple(rd, 0, 1, d, 0).N_s == P2.dim_of_degree(d - 1)
    t = ns_triple(4, 0, 1, 3, 0)
    assert (t.N_s, t.N_plus, t.N_minus) == (0, 0, 0)
    with pytest.raises(InputError):
        ns_triple(4, 0, 0, 3, 0)


def random_equigenerated(rng):
    d = rng.randint(1, 5)
    if rng.random() < 0.5:
        monos = rng.sample(list(P2.monomials(d)), rng.randint(1, P2.dim_of_degree(d)))
        return EquigeneratedIdeal(P2, tuple(HomogeneousForm.monomial(m) for m in monos))
    return power_ideal([LinearForm(p) for p in random_points(rng, rng.randint(1, 9))], d)


def test_rank_matches_image_oracle():
    rng = random.Random("lefschetz/oracle")
    for _ in range(40):
        I = random_equigenerated(rng)
        i, k = rng.randint(-1, 2), rng.randint(1, 3)
        L = LinearForm(tuple(rng.randint(-9, 9) or 1 for _ in range(3)))
        M = times_L_power_matrix(I, L, i, k)
        assert M.nrows == hilbert(I, I.d + i - k) and M.ncols == hilbert(I, I.d + i)
        assert rank(M) == image_rank_oracle(I, L, i, k)


def test_kernel_cokernel_split_on_random_ideals():
    rng = random.Random("lefschetz/split")
    checked = 0
    for _ in range(200):
        I = random_equigenerated(rng)
        i, k = rng.randint(0, 2), rng.randint(1, 2)
        rep = slp_check(I, i, k, SAMPLER)
        assert rep.rank <= min(rep.dim_source, rep.dim_target)
        if syzygy_dimension(I, i - k) == 0:
            checked += 1
            assert rep.dim_ker - rep.ns.N_plus == rep.dim_coker - rep.ns.N_minus == rep.delta
            assert rep.ns.N_s == hilbert(I, I.d + i - k) - hilbert(I, I.d + i)
    assert checked > 100


def test_fixture_split(chmn):
    for I, i, k in [(togliatti(), 0, 1), (togliatti(), 1, 2), (chmn, 0, 2), (chmn, 0, 1)]:
        rep = slp_check(I, i, k, SAMPLER)
        assert rep.syzygy_hypothesis
        assert rep.dim_ker - rep.ns.N_plus == rep.dim_coker - rep.ns.N_minus == rep.delta


def test_scaling_invariance():
    rng = random.Random("lefschetz/scale")
    for _ in range(15):
        I = random_equigenerated(rng)
        L = LinearForm(tuple(rng.randint(-9, 9) or 1 for _ in range(3)))
        k = rng.randint(1, 3)
        base = rank(times_L_power_matrix(I, L, 0, k))
        for c in (-1, 3, 7):
            assert rank(times_L_power_matrix(I, L.scaled(c), 0, k)) == base


def test_repeated_runs_identical():
    I = togliatti()
    a = slp_check(I, 0, 1, GenericSampler(seed=5))
    b = slp_check(I, 0, 1, GenericSampler(seed=5))
    assert a == b and a.as_dict() == b.as_dict()


def test_thickened_line_matrix_shapes():
    I = togliatti()
    L = LinearForm((1, 2, 3))
    assert thickened_line_sections_matrix(I, L, -1, 1).nrows == 0
    T = thickened_line_sections_matrix(I, L, 1, 1)
    # four generators times R_1 / L R_0, into R_4 / L R_3
    assert T.shape == (4 * 2, 15 - 10)


def test_p1bis_examples(chmn):
    L = LinearForm((3, -7, 11))
    assert p1bis_oracle(togliatti(), L, 0, 1)
    sides = p1bis_sides(chmn, L, 0, 2)
    assert sides["s"] == 5
    assert sides["thickened"]["dim_ker"] == sides["times_L"]["dim_ker"] + 5
    assert sides["thickened"]["dim_coker"] == sides["times_L"]["dim_coker"] == 5
    rng = random.Random("lefschetz/quadrics")
    quadrics = power_ideal([LinearForm(p) for p in random_points(rng, 5)], 2)
    assert p1bis_oracle(quadrics, L, 1, 1)
    with pytest.raises(HypothesisError):
        p1bis_oracle(chmn, L, 2, 2)


def test_invalid_range():
    with pytest.raises(InputError):
        slp_check(togliatti(), 0, 0, SAMPLER)
