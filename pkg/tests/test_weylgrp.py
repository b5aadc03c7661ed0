import math
import random

import pytest
from hypothesis import given, strategies as st

from weylrestrict.rootsys import build, quiet_build, vec
from weylrestrict.weylgrp import (
    CapExceeded, SignedPerm, WeylGroup, check_interior_removal, check_weyl_restriction,
    permutation_sign, predicted_order, product_formula_elements, reflection, sign_flip,
    stabilizer_restriction, weyl_group,
)


def classical_order(kind, n, extended=False):
    if kind == "A":
        return math.factorial(n + 1)
    if kind in "BC" or extended:
        return 2 ** n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


@pytest.mark.parametrize("kind,n", [("A", 2), ("A", 4), ("B", 1), ("B", 3), ("C", 4), ("D", 3), ("D", 4)])
def test_orders(kind, n):
    g = weyl_group(kind, n)
    assert len(g.elements()) == classical_order(kind, n) == predicted_order(kind, n)


def test_d4_extended_order():
    assert len(weyl_group("D", 4).elements()) == 192
    assert len(weyl_group("D", 4, extended=True).elements()) == 384


@pytest.mark.parametrize("kind,n", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_closure_matches_product_formula(kind, n):
    assert weyl_group(kind, n).elements() == product_formula_elements(kind, n)


def test_reflections_on_coordinates():
    b2 = build("B", 2)
    assert reflection(b2, vec((1, 0))).apply((5, 7)) == (-5, 7)
    assert reflection(b2, vec((-1, 1))).apply((5, 7)) == (7, 5)
    d4 = build("D", 4)
    assert reflection(d4, vec((1, 1, 0, 0))).apply((1, 2, 3, 4)) == (-2, -1, 3, 4)
    with pytest.raises(ValueError):
        reflection(b2, vec((2, 0)))


def test_cap():
    with pytest.raises(CapExceeded):
        weyl_group("B", 8).elements(cap=1000)


def test_signed_perm_algebra():
    rng = random.Random(5)
    g = weyl_group("B", 4)
    for _ in range(50):
        a, b = g.random_element(rng), g.random_element(rng)
        x = (1, 2, 3, 4)
        assert (a * b).apply(x) == a.apply(b.apply(x))
        assert (a * a.inverse()) == SignedPerm.identity(4)
        assert (a * b).det() == a.det() * b.det()
        assert g.contains(a * b)


def test_permutation_sign():
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1


def test_stabilizer_b_2_in_3():
    sub, restricted, kernel = stabilizer_restriction(weyl_group("B", 3).elements(), 2)
    assert len(sub) == 16
    assert len(restricted) == 8
    assert restricted == weyl_group("B", 2).elements()
    assert kernel == 2


def test_stabilizer_a_1_in_2():
    _, restricted, _ = stabilizer_restriction(weyl_group("A", 2).elements(), 2)
    assert restricted == weyl_group("A", 1).elements()


def test_d_restriction_contains_all_sign_changes():
    _, restricted, _ = stabilizer_restriction(weyl_group("D", 5).elements(), 4)
    assert len(restricted) == 384
    assert restricted == weyl_group("D", 4, extended=True).elements()
    assert sign_flip(4) in restricted and sign_flip(4) not in weyl_group("D", 4).elements()


def test_restriction_reports():
    assert check_weyl_restriction("B", 2, 4).passed
    d = check_weyl_restriction("D", 4, 5)
    assert d.passed and d.details["index"] == 2
    assert check_weyl_restriction("A", 3, 3).passed


def test_interior_removal_is_detected():
    rep = check_interior_removal("B", 3, 1)
    assert rep.passed
    assert rep.details["restricted_order"] == 12
    assert rep.details["factor_weyl_order"] == 6
    assert rep.details["minus_identity_in_restricted"] and not rep.details["conclusion_holds"]


@given(st.sampled_from("BCD"), st.integers(2, 5))
def test_group_contains_its_generators_and_identity(kind, n):
    g = WeylGroup(quiet_build(kind, n))
    assert SignedPerm.identity(g.rs.ambient_dim) in g.elements()
    assert all(g.contains(w) for w in g.generators)
