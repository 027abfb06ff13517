import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclotwist.exactalg import (
    IntMatrix,
    PolyF2,
    PolyZ,
    charpoly_exact,
    chebyshev_t2,
    chebyshev_u,
    det_exact,
    kernel_basis,
    smith_normal_form,
    solve_linear,
    solve_linear_mod,
)


def test_intmatrix_shape_guard():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_intmatrix_product_and_transpose():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert a @ b == IntMatrix.from_rows([[2, 1], [4, 3]])
    assert a.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])
    assert a.apply([1, 1]) == [3, 7]


def test_intmatrix_zero_dimensions():
    z = IntMatrix.zeros(0, 3)
    assert z.rows == 0 and z.cols == 3
    assert (z @ IntMatrix.zeros(3, 2)).rows == 0
    assert IntMatrix.identity(0) @ IntMatrix.zeros(0, 4) == IntMatrix.zeros(0, 4)


def test_snf_identity():
    a = IntMatrix.identity(3)
    r = smith_normal_form(a)
    assert r.S == a and r.U == a and r.V == a
    assert r.verify(a)


def test_snf_hand_example():
    # [[2,4],[6,8]]: gcd of entries 2, |det| = 8, so diagonal (2, 4)
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    r = smith_normal_form(a)
    assert r.diagonal() == [2, 4]
    assert r.verify(a)


def test_snf_zero_matrix():
    a = IntMatrix.zeros(2, 2)
    r = smith_normal_form(a)
    assert r.S == a
    assert abs(det_exact(r.U)) == 1 and abs(det_exact(r.V)) == 1
    assert r.verify(a)


def test_snf_rectangular():
    a = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    r = smith_normal_form(a)
    assert r.verify(a)
    assert r.diagonal() == [1, 3]  # 2x2 minors have gcd 3


def test_det_examples():
    assert det_exact(IntMatrix.identity(5)) == 1
    assert det_exact(IntMatrix.from_rows([[3, 0, 1], [0, 4, 0], [1, 0, 3]])) == 32
    assert det_exact(IntMatrix.from_rows([[2, 1], [1, 3]])) == 5
    with pytest.raises(ValueError):
        det_exact(IntMatrix.zeros(2, 3))


def test_det_agrees_with_snf_on_random_matrices():
    rng = random.Random(20260814)
    for _ in range(200):
        n = rng.randint(1, 12)
        a = IntMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
        r = smith_normal_form(a)
        assert r.verify(a, unimodular_check=True)
        prod = 1
        for d in r.diagonal():
            prod *= d
        assert abs(det_exact(a)) == abs(prod)


def test_chebyshev_u_small():
    assert chebyshev_u(0) == PolyZ([1])
    assert chebyshev_u(1) == PolyZ([0, 1])
    assert chebyshev_u(2) == PolyZ([-1, 0, 1])
    assert chebyshev_u(4) == PolyZ([1, 0, -3, 0, 1])
    # U_4(X/2) = (X^2+X-1)(X^2-X-1)
    assert PolyZ([-1, 1, 1]) * PolyZ([-1, -1, 1]) == chebyshev_u(4)


def test_chebyshev_u_roots_float():
    for n in range(1, 13):
        p = chebyshev_u(n)
        for j in range(1, n + 1):
            x = 2.0 * math.cos(j * math.pi / (n + 1))
            assert abs(p(x)) < 1e-9


def test_chebyshev_t2_angle_doubling():
    # 2*T_n(cos t) = 2*cos(n t)
    for n in range(8):
        p = chebyshev_t2(n)
        for t in (0.3, 1.1, 2.0):
            assert abs(p(2.0 * math.cos(t)) - 2.0 * math.cos(n * t)) < 1e-9


def test_polyz_division():
    num = chebyshev_u(4)
    q, r = num.divmod_exact(PolyZ([-1, 1, 1]))
    assert r.is_zero() and q == PolyZ([-1, -1, 1])
    assert PolyZ([-1, 1, 1]).divides(num)
    assert not PolyZ([1, 1, 1]).divides(num)


def test_polyz_compose_and_matrix_eval():
    p = PolyZ([-1, 0, 1])  # X^2 - 1
    assert p.compose(PolyZ([1, 1])) == PolyZ([0, 2, 1])  # (X+1)^2 - 1
    m = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert p.eval_matrix(m) == IntMatrix.zeros(2, 2)


def test_charpoly_companion():
    # companion matrix of X^3 - 2X - 5
    c = IntMatrix.from_rows([[0, 0, 5], [1, 0, 2], [0, 1, 0]])
    assert charpoly_exact(c) == PolyZ([-5, -2, 0, 1])


def test_charpoly_matches_det_at_points():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 6)
        a = IntMatrix(n, n, [rng.randint(-4, 4) for _ in range(n * n)])
        p = charpoly_exact(a)
        for x in (-2, -1, 0, 1, 3):
            shifted = IntMatrix.identity(n).scale(x) - a
            assert p(x) == det_exact(shifted)


def test_solve_linear_mod_examples():
    ident = IntMatrix.identity(3)
    assert solve_linear_mod(ident, [5, 6, 7], 4) == [1, 2, 3]
    assert solve_linear_mod(IntMatrix.from_rows([[2]]), [1], 4) is None
    x = solve_linear_mod(IntMatrix.from_rows([[2]]), [2], 4)
    assert x is not None and (2 * x[0] - 2) % 4 == 0


def test_solve_linear_mod_validates_input():
    a = IntMatrix.identity(2)
    with pytest.raises(ValueError):
        solve_linear_mod(a, [1], 3)
    with pytest.raises(ValueError):
        solve_linear_mod(a, [1, 2], 0)


@settings(deadline=None, max_examples=80)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.integers(2, 12),
    st.data(),
)
def test_solve_linear_mod_roundtrip(m, n, L, data):
    entries = data.draw(
        st.lists(st.integers(-6, 6), min_size=m * n, max_size=m * n)
    )
    a = IntMatrix(m, n, entries)
    x = data.draw(st.lists(st.integers(0, L - 1), min_size=n, max_size=n))
    b = [v % L for v in a.apply(x)]
    got = solve_linear_mod(a, b, L)
    assert got is not None
    assert [v % L for v in a.apply(got)] == b


@settings(deadline=None, max_examples=40)
@given(st.integers(2, 8), st.data())
def test_solve_linear_mod_agrees_with_bruteforce(L, data):
    # 2x2 systems small enough to enumerate all x in (Z/L)^2
    entries = data.draw(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    b = data.draw(st.lists(st.integers(0, L - 1), min_size=2, max_size=2))
    a = IntMatrix(2, 2, entries)
    brute = None
    for x0 in range(L):
        for x1 in range(L):
            if [v % L for v in a.apply([x0, x1])] == b:
                brute = [x0, x1]
                break
        if brute:
            break
    got = solve_linear_mod(a, b, L)
    assert (got is None) == (brute is None)
    if got is not None:
        assert [v % L for v in a.apply(got)] == b


def test_solve_linear_exact():
    a = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_linear(a, [4, 9]) == [2, 3]
    assert solve_linear(a, [1, 3]) is None
    wide = IntMatrix.from_rows([[1, 2, 3]])
    x = solve_linear(wide, [7])
    assert x is not None and wide.apply(x) == [7]


def test_kernel_basis():
    a = IntMatrix.from_rows([[1, 2, 3]])
    ker = kernel_basis(a)
    assert len(ker) == 2
    for v in ker:
        assert a.apply(v) == [0]
    # the kernel is saturated: SNF of the kernel matrix has unit diagonal
    km = IntMatrix.from_rows(ker).transpose()
    assert smith_normal_form(km).diagonal() == [1, 1]


def test_polyf2_arithmetic():
    x = PolyF2(0b10)
    one = PolyF2(1)
    assert (x + one) * (x + one) == PolyF2(0b101)  # (X+1)^2 = X^2+1
    f = PolyF2(0b111)  # X^2+X+1
    assert (f * (x + one)) == PolyF2(0b1001)  # X^3+1
    # X^3+1 = (X+1)(X^2+X+1), so the remainder vanishes
    assert (PolyF2(0b1001) % f).is_zero()
    assert PolyF2(0b1001) // f == x + one
    assert PolyF2(0b1001).gcd(f) == f
    assert f.powmod(4, PolyF2(0b1001)).bits == ((f * f * f * f) % PolyF2(0b1001)).bits


def test_polyf2_from_polyz():
    p = PolyZ([3, 4, 5])  # -> 1 + 0X + X^2 mod 2
    assert p.reduce_mod2() == PolyF2(0b101)


def test_polyf2_derivative():
    # d/dX (X^3 + X^2 + 1) = 3X^2 + 2X = X^2 over GF(2)
    assert PolyF2(0b1101).derivative() == PolyF2(0b100)
