from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from weylrestrict.geometry import (
    EXPECTED_RADIUS, Surd, boundary_probes, check_omega_star_propagation, check_omega_star_subset,
    injectivity_radius, omega, omega_membership, omega_star, sample_points, subset_certificate,
    type_a_bound_identity,
)
from weylrestrict.propagation import make_pair
from weylrestrict.rootsys import quiet_build
from weylrestrict.weylgrp import weyl_group


def test_surd_normalization():
    assert Surd.sqrt_of(8) == Surd(F(2), 2)
    assert Surd.sqrt_of(4) == Surd(F(2), 1)
    assert str(Surd.sqrt_of(2)) == "sqrt(2)"
    assert Surd.sqrt_of(2) < Surd.sqrt_of(4)


@pytest.mark.parametrize("kind", "ABCD")
def test_radius_all_ranks(kind):
    lo = {"A": 1, "B": 2, "C": 1, "D": 2}[kind]
    for m in range(lo, 9):
        assert injectivity_radius(kind, m).radius_over_pi == EXPECTED_RADIUS[kind]


def test_b1_radius_is_different():
    assert injectivity_radius("B", 1).radius_over_pi == Surd(F(2), 2)


def test_membership_examples():
    b3 = quiet_build("B", 3)
    assert omega_membership("star", b3, (F(1, 8),) * 3)
    assert omega_membership("omega", b3, (F(1, 4), 0, 0))
    star = omega_star(b3)
    assert star.contains((F(1, 8), F(1, 8), F(1, 8)))
    assert not star.contains((F(1, 4), 0, 0))
    d4 = omega_star(quiet_build("D", 4))
    assert not d4.contains((F(1, 8), F(1, 8), 0, 0))
    assert d4.contains((F(1, 9), F(1, 9), 0, 0))


@pytest.mark.parametrize("kind,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_domains_are_weyl_invariant(kind, rank):
    rs = quiet_build(kind, rank)
    rng = random.Random(11)
    g = weyl_group(kind, rank)
    for poly in (omega(rs), omega_star(rs)):
        assert poly.is_symmetric()
        for x in sample_points(rs, poly, 60, rng):
            w = g.random_element(rng)
            assert poly.contains(x) == poly.contains(w.apply(x))


@pytest.mark.parametrize("kind,rank", [("A", 2), ("C", 3)])
def test_omega_star_equals_omega_for_a_and_c(kind, rank):
    rs = quiet_build(kind, rank)
    rng = random.Random(3)
    o, s = omega(rs), omega_star(rs)
    for x in sample_points(rs, o, 300, rng):
        assert o.contains(x) == s.contains(x)


def test_boundary_probes_have_expected_membership():
    rs = quiet_build("B", 3)
    poly = omega_star(rs)
    for x, inside in boundary_probes(rs, poly, random.Random(2)):
        assert poly.contains(x) == inside


def test_certificate_exists_for_each_type():
    for kind, rank in [("A", 3), ("B", 4), ("C", 3), ("D", 4)]:
            assert subset_certificate(quiet_build(kind, rank))["uncertified"] == []


@pytest.mark.parametrize("kind,rank", [("C", 3), ("D", 4), ("A", 2)])
def test_subset_reports(kind, rank):
    rep = check_omega_star_subset(kind, rank, 1000, 42)
    assert rep.passed and rep.details["violations"] == 0


@pytest.mark.parametrize("kind,n,k", [("B", 2, 4), ("A", 1, 3), ("D", 3, 3)])
def test_propagation_reports(kind, n, k):
    assert check_omega_star_propagation(make_pair(kind, n, k), 1000, 7).passed


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 8))
def test_type_a_bound_identity(r):
    assert type_a_bound_identity(r)
