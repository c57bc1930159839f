import random

import pytest

from gen import (B3_LINES, CHMN_LINES, bounded_alignment_points, planted_aligned, points_on_line, random_points,
                 random_transform, transform_points)
from lefarr.apolarity import FatPointScheme, fat_point_system_dim
from lefarr.arrangements import (LineArrangement, aligned_criterion_check, aligned_criterion_sides,
                                 character_gap_subscheme, collinear_groups, derivation_report, dual_points,
                                 intersection_lattice, max_aligned, numerical_character, prop_bundle_equivalence,
                                 saito_freeness, splitting_type, terao_compare)
from lefarr.errors import (HypothesisError, InputError, InsufficientBoundError, InvalidArrangementError,
                           UnsupportedInputError)
from lefarr.generic import GenericSampler

SAMPLER = GenericSampler()
BRAID = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]


def near_pencil(n):
    return [(1, j, 0) for j in range(n - 1)] + [(0, 0, 1)]


def test_invalid_arrangements():
    with pytest.raises(InvalidArrangementError):
        LineArrangement([(1, 0, 0), (0, 1, 0)])
    with pytest.raises(InvalidArrangementError):
        LineArrangement([(1, 0, 0), (0, 1, 0), (2, 0, 0)])
    with pytest.raises(InvalidArrangementError):
        LineArrangement([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    with pytest.raises(InputError):
        LineArrangement([(0, 0, 0), (0, 1, 0), (0, 0, 1)])
    A = LineArrangement(B3_LINES)
    assert A.defining_polynomial().degree == 9
    assert len(dual_points(A)) == 9


def test_collinear_groups():
    rng = random.Random("arr/collinear")
    for _ in range(20):
        k = rng.randint(3, 7)
        pts = planted_aligned(rng, k + 3, k)
        groups = collinear_groups(pts)
        assert len(groups[0][1]) >= k
        line, members = groups[0]
        assert all(sum(a * b for a, b in zip(line, pts[i])) == 0 for i in members)
    assert max_aligned(dual_points(LineArrangement(CHMN_LINES))) == 14
    assert max_aligned(dual_points(LineArrangement(B3_LINES))) == 4
    with pytest.raises(InputError):
        max_aligned([(1, 0, 0)])


def test_aligned_criterion():
    rng = random.Random("arr/aligned")
    for _ in range(40):
        d = rng.randint(1, 4)
        aligned = rng.randint(2, 2 * d + 1)
        pts = planted_aligned(rng, 2 * d + 1, aligned) if aligned >= 3 else random_points(rng, 2 * d + 1)
        assert aligned_criterion_check(pts, d)
    dim, aligned = aligned_criterion_sides(points_on_line(rng, 5), 2)
    assert (dim, aligned) == (3, 5)
    with pytest.raises(InputError):
        aligned_criterion_sides(random_points(rng, 4), 2)


def test_numerical_character_examples():
    rng = random.Random("arr/character")
    assert numerical_character(random_points(rng, 5, bound=40)).entries == (3, 3)
    assert numerical_character(points_on_line(rng, 6)).entries == (6,)
    chmn = numerical_character(dual_points(LineArrangement(CHMN_LINES)))
    assert chmn.entries == (14, 4)
    assert numerical_character(dual_points(LineArrangement(B3_LINES))).entries == (4, 4, 4)


def test_numerical_character_round_trip():
    rng = random.Random("arr/character-round-trip")
    for _ in range(25):
        n = rng.randint(2, 10)
        pts = bounded_alignment_points(rng, n, rng.randint(2, n))
        ch = numerical_character(pts)
        assert ch.degree == n
        Z = FatPointScheme.reduced(pts)
        for t in range(0, n + 1):
            h1 = n - ((t + 1) * (t + 2) // 2 - fat_point_system_dim(Z, t, 3))
            assert ch.h1(t) == h1


def test_character_needs_enough_degrees():
    rng = random.Random("arr/bound")
    with pytest.raises(InsufficientBoundError):
        numerical_character(random_points(rng, 6), t_max=1)


def test_gap_subscheme():
    Z = dual_points(LineArrangement(CHMN_LINES))
    W = character_gap_subscheme(Z)
    assert len(W) == 14 and max_aligned(W) == 14
    rng = random.Random("arr/gap")
    found = 0
    for _ in range(20):
        k = rng.randint(4, 8)
        pts = planted_aligned(rng, k + rng.randint(1, 2), k)
        ch = numerical_character(pts)
        if ch.s >= 2 and ch.entries[0] > ch.entries[1] + 1:
            W = character_gap_subscheme(pts)
            assert len(W) == ch.entries[0] == max_aligned(pts)
            found += 1
    assert found >= 5
    with pytest.raises(HypothesisError):
        character_gap_subscheme(random_points(rng, 5, bound=40))
    with pytest.raises(UnsupportedInputError):
        character_gap_subscheme(Z, t=2)


def test_splitting_type_examples():
    assert splitting_type(dual_points(LineArrangement(CHMN_LINES)), SAMPLER).as_tuple() == (3, 13)
    st = splitting_type(dual_points(LineArrangement(B3_LINES)), SAMPLER)
    assert st.as_tuple() == (3, 5) and st.unstable and st.as_dict()["chern_parity_even"]
    rng = random.Random("arr/splitting")
    for d in (2, 3, 4):
        st = splitting_type(random_points(rng, 2 * d + 1, bound=40), SAMPLER)
        assert st.as_tuple() == (d, d) and st.balanced
    with pytest.raises(HypothesisError):
        splitting_type(points_on_line(rng, 5), SAMPLER)


def test_splitting_type_properties():
    rng = random.Random("arr/splitting-props")
    for _ in range(40):
        n = rng.randint(3, 11)
        pts = bounded_alignment_points(rng, n, n - 1)
        st = splitting_type(pts, SAMPLER)
        assert st.a + st.b + 1 == n and 1 <= st.a <= st.b
        m = max_aligned(pts)
        # the aligned line plus the cone over the rest gives the bound
        assert st.a <= n - m
        if m >= st.a + 2:
            assert st.a == n - m


def test_saito_free_examples():
    for lines, exps in ((B3_LINES, (3, 5)), (BRAID, (2, 3)), (near_pencil(6), (1, 4))):
        A = LineArrangement(lines)
        assert saito_freeness(A) == exps
        assert splitting_type(dual_points(A), SAMPLER).as_tuple() == exps
    rep = derivation_report(LineArrangement(B3_LINES))
    assert rep["saito_determinant"] and rep["kernel_dims"][3] == 1


def test_generic_arrangement_is_not_free():
    rng = random.Random("arr/generic")
    A = LineArrangement(random_points(rng, 6, bound=40))
    rep = derivation_report(A)
    assert not rep["free"] and saito_freeness(A) is None


def test_saito_bound():
    with pytest.raises(InsufficientBoundError):
        saito_freeness(LineArrangement(B3_LINES), t_max=4)


def test_lattice_invariance():
    rng = random.Random("arr/lattice")
    base = intersection_lattice(LineArrangement(B3_LINES))
    assert base["strength"] == "exact"
    assert base["multiplicities"] == [[4, 3], [3, 4], [2, 6]]
    for _ in range(5):
        lines = list(B3_LINES)
        rng.shuffle(lines)
        moved = transform_points(random_transform(rng), lines)
        assert intersection_lattice(LineArrangement(moved)) == base
    assert intersection_lattice(LineArrangement(random_points(rng, 9, bound=40))) != base
    assert intersection_lattice(LineArrangement(CHMN_LINES))["strength"] == "weak"


def test_lattice_separates_same_multiplicities():
    # two 7-line arrangements with the same point counts but different incidences
    a = LineArrangement([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (1, 2, 3), (3, 1, 7)])
    fa = intersection_lattice(a)
    assert fa["strength"] == "exact"
    rng = random.Random("arr/relabel")
    lines = list(a.lines)
    rng.shuffle(lines)
    assert intersection_lattice(LineArrangement(lines)) == fa


def test_prop_bundle_harness():
    assert prop_bundle_equivalence(B3_LINES, 4, SAMPLER) == (True, 2, True)
    rng = random.Random("arr/bundle")
    for d in (2, 3, 4):
        for _ in range(3):
            fails, gap, consistent = prop_bundle_equivalence(bounded_alignment_points(rng, 2 * d + 1, d + 1), d, SAMPLER)
            assert consistent
    with pytest.raises(HypothesisError):
        prop_bundle_equivalence(CHMN_LINES, 8, SAMPLER)
    with pytest.raises(InputError):
        prop_bundle_equivalence(B3_LINES, 5, SAMPLER)


def test_terao_compare():
    rng = random.Random("arr/terao")
    A = LineArrangement(B3_LINES)
    B = LineArrangement(transform_points(random_transform(rng), B3_LINES))
    rep = terao_compare(A, B, 4, SAMPLER)
    assert rep["same_combinatorics"] and rep["hypotheses_hold"]
    assert rep["slp_verdicts_agree"] and not rep["counterexample"]
    assert [s["has_slp"] for s in rep["arrangements"]] == [False, False]
    G = LineArrangement(random_points(rng, 9, bound=40))
    rep = terao_compare(A, G, 4, SAMPLER)
    assert not rep["same_combinatorics"] and not rep["counterexample"]
    with pytest.raises(InputError):
        terao_compare(A, B, 3, SAMPLER)
