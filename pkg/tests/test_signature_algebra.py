import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planar_holant import gadgets
from planar_holant.scalars import to_float
from planar_holant.signatures import (EQ3, NormalizationZero, StraddledMatrix,
                                      SymSignature, ZeroSubdiagonal,
                                      connect_unary, eigen2, hadamard3,
                                      hadamard3_inv, sig_is_degenerate, works)

small = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3))


def rand_abc(rng):
    return (Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
            Fraction(rng.randint(-5, 5), rng.randint(1, 3)))


def test_g1_forms():
    a, b, c = Fraction(3), Fraction(-2), Fraction(7)
    assert gadgets.gadget_G1(SymSignature([1, a, b, c])).m == ((1, b), (a, c))
    assert gadgets.gadget_G1(EQ3).m == ((1, 0), (0, 1))


def test_g2_known_value():
    assert gadgets.gadget_G2(SymSignature([1, -1, 0, 2])).m == ((1, 1), (-1, 4))
    assert gadgets.gadget_G2(EQ3).m == ((1, 0), (0, 1))


def test_g3_quoted_specializations():
    rng = random.Random(0)
    for _ in range(5):
        a = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        g = gadgets.gadget_G3(SymSignature([1, a, -1 / a, 0]))
        assert g.values == (3 * a ** 3 + 4, a ** 4 - a - 2 / a ** 2,
                            -a ** 2 + 1 / a + 1 / a ** 4, a ** 3 + 3)
        g2 = gadgets.gadget_G3(SymSignature([1, a, 0, 0]))
        assert g2.values == (3 * a ** 3 + 1, a ** 4 + a, a ** 2, a ** 3)


def test_g4_and_factors():
    f = SymSignature([1, 2, 1, 2])
    mat, z = gadgets.gadget_G4(f)
    assert z == Fraction(3, 2)
    assert mat == gadgets.crossover_pattern(z)
    # component product: A (up-down flip of A) A equals (a + a^2) G4
    A, B = gadgets.factor_AB(SymSignature([1, 3, 1, 3]))
    prod = gadgets._mat4_mul(gadgets._mat4_mul(A, B), A)
    raw, _ = gadgets.gadget_G4(SymSignature([1, 3, 1, 3]))
    norm = 3 + 9
    assert prod == [[v * norm for v in row] for row in raw]
    assert A == [[1, 0, 3, 0], [0, 3, 0, 1], [3, 0, 1, 0], [0, 1, 0, 3]]
    assert B == [[1, 3, 0, 0], [3, 1, 0, 0], [0, 0, 3, 1], [0, 0, 1, 3]]
    # the special entries sit exactly on the cross-over support, which is
    # what makes the gadget invariant under the quarter-turn slot rotation
    zs = {(i, j) for i in range(4) for j in range(4) if mat[i][j] != mat[0][1]}
    assert zs == {(0, 0), (1, 2), (2, 1), (3, 3)}


def test_g4_normalization_zero():
    with pytest.raises(NormalizationZero):
        gadgets.gadget_G4(SymSignature([1, -1, 1, -1]))


def test_gamma_chain_against_powers():
    for a in (Fraction(2), Fraction(-2), Fraction(5, 2)):
        f = SymSignature([1, a, 1, a])
        for s in range(6):
            m, x = gadgets.gamma_chain(f, s)
            assert m == gadgets.gamma_chain_by_power(f, s)
        xs = [gadgets.gamma_chain(f, s)[1] for s in range(21)]
        assert len(set(xs)) == 21  # pairwise distinct


def test_gamma_monotonicity():
    xs = [gadgets.gamma_chain(SymSignature([1, 2, 1, 2]), s)[1] for s in range(21)]
    assert all(x > 1 for x in xs)
    assert all(b < a for a, b in zip(xs, xs[1:]))
    xs = [gadgets.gamma_chain(SymSignature([1, -2, 1, -2]), s)[1] for s in range(21)]
    assert all(x < -3 for x in xs)
    assert all(b > a for a, b in zip(xs, xs[1:]))


def test_hadamard_identities():
    rng = random.Random(4)
    for _ in range(20):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        f = SymSignature([1, a, a, 1])
        assert hadamard3(f).values == (2 + 6 * a, 0, 2 - 2 * a, 0)
    assert hadamard3_inv(EQ3).values == (Fraction(1, 4), 0, Fraction(1, 4), 0)
    assert hadamard3(SymSignature([1, 0, 0, 0])).values == (1, 1, 1, 1)


def test_hadamard_involution_scales_by_eight():
    rng = random.Random(9)
    for _ in range(10):
        f = SymSignature([Fraction(rng.randint(-4, 4)) for _ in range(4)])
        assert hadamard3(hadamard3(f)).values == tuple(8 * v for v in f.values)


def test_eigen_triangular():
    e = eigen2(StraddledMatrix([[1, 0], [3, 5]]))
    assert e.delta == 4 and {e.lam, e.mu} == {1, 5}
    with pytest.raises(ZeroSubdiagonal):
        eigen2(StraddledMatrix([[1, 1], [0, 2]]))


def test_eigen_all_ones():
    e = eigen2(StraddledMatrix([[1, 1], [1, 1]]))
    assert e.delta == 2 and e.lam == 0 and e.mu == 2


@given(small, small, small, small)
@settings(max_examples=60)
def test_eigen_equations_exact(a00, a01, a10, a11):
    M = StraddledMatrix([[a00, a01], [a10, a11]])
    disc = (a00 - a11) ** 2 + 4 * a01 * a10
    if a10 == 0 or disc < 0:
        return
    e = eigen2(M)
    assert M.apply([-e.x, 1]) == [-e.x * e.lam, e.lam]
    assert M.apply([e.y, 1]) == [e.y * e.mu, e.mu]


def test_works_examples():
    assert not works(StraddledMatrix([[1, 1], [1, -1]]))   # c + 1 = 0
    assert not works(StraddledMatrix([[1, 1], [2, 2]]))    # degenerate
    assert works(StraddledMatrix([[1, 2], [1, -3]]))


def test_works_matches_condition_list_on_grid():
    # works([[1,b],[a,c]]) false exactly when degenerate or one of the five
    # ratio conditions holds
    vals = [Fraction(v) for v in range(-3, 4)]
    for a in vals:
        for b in vals:
            for c in vals:
                M = StraddledMatrix([[1, b], [a, c]])
                conds = [c == a * b,
                         c + 1 == 0,
                         a * b + c * c + c + 1 == 0,
                         2 * a * b + c * c + 1 == 0,
                         3 * a * b + c * c - c + 1 == 0,
                         4 * a * b + c * c - 2 * c + 1 == 0]
                assert works(M) == (not any(conds))


def test_works_numeric_root_of_unity_screen():
    rng = random.Random(21)
    for _ in range(80):
        M = StraddledMatrix([[Fraction(rng.randint(-4, 4)) for _ in range(2)]
                             for _ in range(2)])
        d = M.det()
        if d == 0:
            assert not works(M)
            continue
        disc = M.trace() ** 2 - 4 * d
        if disc < 0:
            continue  # complex ratio, outside the exact screen
        e_ok = works(M)
        from planar_holant.scalars import sqrt_exact, as_fraction
        delta = sqrt_exact(as_fraction(disc))
        lam = (M.trace() - delta) / 2
        mu = (M.trace() + delta) / 2
        if lam == 0 or mu == 0:
            assert not e_ok
            continue
        ratio = to_float(lam) / to_float(mu)
        is_rou = any(abs(ratio ** k - 1) < 1e-9 for k in range(1, 13))
        assert e_ok == (not is_rou)


def test_connect_unary():
    f = SymSignature([1, 2, 3, 5])
    assert connect_unary(f, SymSignature([1, 0])).values == (1, 2, 3)
    x = Fraction(7)
    assert connect_unary(f, SymSignature([1, x])).values == (
        1 + 2 * x, 2 + 3 * x, 3 + 5 * x)
    y = Fraction(-2)
    assert connect_unary(f, SymSignature([y, 1])).values == (
        y + 2, 2 * y + 3, 3 * y + 5)


def test_nonlinearity_gadget():
    rng = random.Random(17)
    for _ in range(10):
        a, b, c = rand_abc(rng)
        y = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        out = gadgets.nonlinearity_gadget(SymSignature([1, a, b, c]), y)
        assert out.values == (y * y + y * b, y * a + c)
    out0 = gadgets.nonlinearity_gadget(SymSignature([1, 2, 3, 5]), Fraction(0))
    assert out0.values == (0, 5)


def test_absorb_factors():
    assert gadgets.absorb_g1(Fraction(-1)) == 0
    assert gadgets.absorb_g2(SymSignature([1, 1, 1, 1]), Fraction(1)) == 4
    rng = random.Random(31)
    for _ in range(10):
        a, b, c = rand_abc(rng)
        y = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        x = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        f = SymSignature([1, a, b, c])
        assert gadgets.absorb_g1(y) == y ** 3 + 1
        assert gadgets.absorb_g2(f, y) == y ** 3 + b * y ** 2 + a * y + c
        assert gadgets.absorb_f1(f, x) == c * x ** 3 + 3 * b * x ** 2 + 3 * a * x + 1
        # hand-expanded grid values, independently derived from the wiring
        f2 = ((a * b + c * c) * x ** 3 + (3 * b * c + 2 * a * a + b) * x ** 2
              + (2 * b * b + a * c + 3 * a) * x + a * b + 1)
        assert gadgets.absorb_f2(f, x) == f2
        f3 = ((a * b + 2 * a * b * c + c ** 3) * x ** 3
              + (2 * a ** 2 + b + 2 * a ** 2 * c + 3 * a * b ** 2 + b * c
                 + 3 * b * c ** 2) * x ** 2
              + (3 * a + 3 * a ** 2 * b + a * c + 2 * b ** 2 + 2 * b ** 2 * c
                 + a * c ** 2) * x
              + 1 + 2 * a * b + a * b * c)
        assert gadgets.absorb_f3(f, x) == f3


def test_degenerate_detector():
    assert sig_is_degenerate(SymSignature([1, -1, 1, -1]))
    assert sig_is_degenerate(SymSignature([0, 0, 0, 5]))
    assert not sig_is_degenerate(SymSignature([1, 0, 0, 1]))
