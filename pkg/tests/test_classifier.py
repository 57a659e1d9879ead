import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planar_holant.classifier import (InconsistentCase, classify,
                                      classify_binary, dispatch_solve,
                                      extract_params)
from planar_holant.generators import generate_cubic_bipartite_plane
from planar_holant.holant_core import eval_grid
from planar_holant.plane_graph import grid_from_cubic_bipartite
from planar_holant.signatures import SymSignature

small = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))


ACCEPTANCE_TABLE = [
    ([1, 0, -1, 2], True, 5),
    ([0, 1, 0, 0], False, None),
    ([1, -1, 1, -1], True, 1),
    ([1, 2, 2, 1], True, 4),
    ([5, 0, 0, -5], True, 2),
    ([1, 1, -1, -1], True, 3),
]


@pytest.mark.parametrize("vals,fp,case", ACCEPTANCE_TABLE)
def test_verdict_table(vals, fp, case):
    v = classify(SymSignature(vals))
    assert v.planar_fp == fp
    if case is not None:
        assert v.primary.case == case


def test_case5_params():
    v = classify(SymSignature([1, 0, -1, 2]))
    assert v.primary.params["a"] == Fraction(1, 2)
    assert v.primary.params["b"] == Fraction(-1, 2)


def test_case4_general_hard():
    v = classify(SymSignature([1, 2, 2, 1]))
    assert v.planar_fp and not v.general_fp
    v5 = classify(SymSignature([1, 0, -1, 2]))
    assert v5.planar_fp and not v5.general_fp
    v3 = classify(SymSignature([1, 1, -1, -1]))
    assert v3.planar_fp and v3.general_fp


def test_overlaps_reported_lowest_first():
    v = classify(SymSignature([1, -1, -1, 1]))
    assert [m.case for m in v.cases] == [3, 4]
    v2 = classify(SymSignature([5, 0, 0, -5]))
    assert [m.case for m in v2.cases] == [2, 4]


def test_all_zero_is_degenerate():
    v = classify(SymSignature([0, 0, 0, 0]))
    assert v.primary.case == 1
    assert v.primary.params["scale"] == 0


def test_hard_side_diagnostics():
    v = classify(SymSignature([0, 1, 0, 0]))
    assert not v.planar_fp
    assert "g1_works" in v.diagnostics and "g2_works" in v.diagnostics


@given(small, small, small, small, st.builds(Fraction, st.integers(1, 7), st.integers(1, 3)))
@settings(max_examples=80)
def test_scaling_invariance(f0, f1, f2, f3, c):
    f = SymSignature([f0, f1, f2, f3])
    fc = f.scale(c)
    v1, v2 = classify(f), classify(fc)
    assert v1.planar_fp == v2.planar_fp
    assert v1.general_fp == v2.general_fp
    assert [m.case for m in v1.cases] == [m.case for m in v2.cases]


@given(small, small, small, small)
@settings(max_examples=80)
def test_reversal_invariance(f0, f1, f2, f3):
    f = SymSignature([f0, f1, f2, f3])
    fr = f.reversed()
    v1, v2 = classify(f), classify(fr)
    assert v1.planar_fp == v2.planar_fp
    assert v1.general_fp == v2.general_fp


def test_binary_dichotomy():
    assert classify_binary(SymSignature([2, 1, Fraction(1, 2)]))   # ab = 1
    assert not classify_binary(SymSignature([1, 1, 2]))
    assert classify_binary(SymSignature([3, 0, 7]))                # gen-eq
    assert classify_binary(SymSignature([1, 1, -1]))
    assert classify_binary(SymSignature([-1, 1, 1]))
    assert classify_binary(SymSignature([5, 1, 5]))                # a = b


def test_extract_params_roundtrip_random():
    rng = random.Random(88)
    mk = {
        1: lambda: _deg(rng), 2: lambda: _geneq(rng), 3: lambda: _aff(rng),
        4: lambda: _mg(rng), 5: lambda: _lin(rng),
    }
    done = 0
    while done < 200:
        case = rng.choice([1, 2, 3, 4, 5])
        f = mk[case]()
        params = extract_params(f, case)  # raises unless round-trip holds
        assert params is not None
        done += 1
    with pytest.raises(InconsistentCase):
        extract_params(SymSignature([0, 1, 0, 0]), 5)


def _deg(rng):
    s, t = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
    return SymSignature([s, s * t, s * t ** 2, s * t ** 3])


def _geneq(rng):
    return SymSignature([rng.randint(-3, 3), 0, 0, rng.randint(-3, 3)])


def _aff(rng):
    pat = rng.choice([[1, 0, 1, 0], [1, 0, -1, 0], [0, 1, 0, 1],
                      [0, 1, 0, -1], [1, -1, -1, 1], [1, 1, -1, -1]])
    a = Fraction(rng.randint(1, 4))
    return SymSignature([a * p for p in pat])


def _mg(rng):
    a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
    return SymSignature([a, b, b, a] if rng.random() < 0.5 else [a, b, -b, -a])


def _lin(rng):
    a, b = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))
    return SymSignature([3 * a + b, -a - b, -a + b, 3 * a - b])


def test_dispatch_soundness_random():
    rng = random.Random(1001)
    mk = [_deg, _geneq, _aff, _mg, _lin]
    for seed in range(25):
        f = rng.choice(mk)(rng)
        if not classify(f).planar_fp:
            continue
        g = generate_cubic_bipartite_plane(rng.choice([2, 4, 6, 8]), seed)
        grid = grid_from_cubic_bipartite(g, f)
        assert dispatch_solve(grid, f) == eval_grid(grid)


def test_exhaustive_small_grid():
    # classify never fails on a dense grid and every reported case passes
    # its reconstruction identity
    vals = [Fraction(v) for v in range(-2, 3)]
    total = 0
    for f0 in vals:
        for f1 in vals:
            for f2 in vals:
                for f3 in vals:
                    f = SymSignature([f0, f1, f2, f3])
                    v = classify(f)
                    for m in v.cases:
                        extract_params(f, m.case)
                    total += 1
    assert total == 625
