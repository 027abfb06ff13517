from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclotwist.obstruction import (
    ActionQuery,
    CuntzKTheory,
    FibonacciReport,
    KSharpCuntz,
    ev1_image,
    exists_automorphism_action,
    exists_tensor_action,
    fibonacci_acts,
    intro_formulation,
    radical,
    tlj_even_liftconst_probe,
    trivial_k0_lift,
)


def test_anchor_cases():
    # order two on O_3: no automorphism action with the nontrivial twist
    assert not exists_automorphism_action(ActionQuery(2, 2, 1))
    # but after tensoring it exists on O_9
    assert exists_tensor_action(ActionQuery(2, 8, 1))
    # and still not on O_5
    assert not exists_tensor_action(ActionQuery(2, 4, 1))


def test_formulations_agree_everywhere():
    for m in range(1, 49):
        for n in range(1, 49):
            for k in range(m):
                q = ActionQuery(m, n, k)
                assert exists_tensor_action(q) == intro_formulation(q), q


def test_automorphism_implies_tensor():
    for m in range(1, 37):
        for n in range(1, 37):
            for k in range(m):
                q = ActionQuery(m, n, k)
                if exists_automorphism_action(q):
                    assert exists_tensor_action(q), q


def test_trivial_twist_always_acts():
    for m in (1, 2, 6, 12, 45):
        for n in (1, 2, 10, 32):
            q = ActionQuery(m, n, 0)
            assert exists_automorphism_action(q)
            assert exists_tensor_action(q)


@settings(max_examples=120, deadline=None)
@given(
    m=st.integers(min_value=1, max_value=60),
    n=st.integers(min_value=1, max_value=60),
    data=st.data(),
)
def test_admissible_twists_form_a_subgroup(m, n, data):
    k1 = data.draw(st.integers(min_value=0, max_value=m - 1))
    k2 = data.draw(st.integers(min_value=0, max_value=m - 1))
    if exists_tensor_action(ActionQuery(m, n, k1)) and \
            exists_tensor_action(ActionQuery(m, n, k2)):
        assert exists_tensor_action(ActionQuery(m, n, k1 + k2))


def test_ev1_image_matches_circle_model():
    for m in (2, 6, 12):
        for n in (2, 3, 8, 10):
            g = ev1_image(m, n)
            ks = KSharpCuntz(n)
            image = {ks.ev1(Fraction(j, m)) for j in range(m)}
            expected = {Fraction((g * t) % m, m) for t in range(m)}
            assert image == expected


def test_cuntz_ktheory_shadow():
    k = CuntzKTheory(6)
    assert k.k0_order == 6
    assert k.unit_class == 1
    assert CuntzKTheory(1).unit_class == 0
    with pytest.raises(ValueError):
        CuntzKTheory(0)
    assert KSharpCuntz(4).ev1(Fraction(3, 8)) == Fraction(1, 2)


def test_action_query_normalizes_twist():
    q = ActionQuery(6, 5, 13)
    assert q.k == 1
    assert ActionQuery(6, 5, -1).k == 5
    with pytest.raises(ValueError):
        ActionQuery(0, 5, 1)


def test_fibonacci_dual_route():
    # the constructor raises if brute force and classification disagree,
    # so a clean sweep is itself the agreement check
    for n in range(1, 2001):
        fibonacci_acts(n)
    r = fibonacci_acts(11)
    assert r.acts and r.witness == 4
    assert (4 * 4 - 4 - 1) % 11 == 0
    assert not fibonacci_acts(4).acts
    assert not fibonacci_acts(25).acts  # 5^2 kills the root
    assert fibonacci_acts(5).witness == 3
    assert bool(fibonacci_acts(1))
    # every even order is rejected
    assert all(not fibonacci_acts(n).acts for n in range(2, 600, 2))
    with pytest.raises(ValueError):
        fibonacci_acts(0)


def test_fibonacci_witness_satisfies_equation():
    for n in range(1, 500):
        r = fibonacci_acts(n)
        if r.acts:
            assert (r.witness * r.witness - r.witness - 1) % n == 0
        else:
            assert r.witness is None


def test_trivial_k0_lift_alias():
    for m, n, k in ((2, 2, 1), (4, 2, 2), (3, 6, 2), (12, 8, 4)):
        q = ActionQuery(m, n, k)
        assert trivial_k0_lift(q) == exists_automorphism_action(q)


def test_radical():
    assert radical(1) == 1
    assert radical(12) == 6
    assert radical(49) == 7
    assert radical(30) == 30


def test_tlj_even_liftconst_probe():
    assert tlj_even_liftconst_probe(5, 3)
    assert not tlj_even_liftconst_probe(5, 8)
    with pytest.raises(ValueError):
        tlj_even_liftconst_probe(9, 3)
    with pytest.raises(ValueError):
        tlj_even_liftconst_probe(2, 3)
