from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from weylrestrict.propagation import class_one_weights, make_pair
from weylrestrict.rootsys import quiet_build, vec
from weylrestrict.spectral import (
    WeightError, branch, check_branching, check_sigma_equivariance, freudenthal_weights,
    from_dynkin_labels, weyl_character, weyl_dim,
)


def test_su2_ladder():
    a1 = quiet_build("A", 1)
    for m in range(11):
        mu = from_dynkin_labels(a1, [m])
        assert weyl_dim(a1, mu) == m + 1
        assert sum(freudenthal_weights(a1, mu).values()) == m + 1


def test_a2_adjoint():
    a2 = quiet_build("A", 2)
    mu = from_dynkin_labels(a2, [1, 1])
    assert weyl_dim(a2, mu) == 8
    weights = freudenthal_weights(a2, mu)
    assert weights[vec((0, 0, 0))] == 2
    assert {w for w, m in weights.items() if m == 1} == set(a2.roots)


def test_d4_vector_weights():
    d4 = quiet_build("D", 4)
    weights = freudenthal_weights(d4, vec((0, 0, 0, 1)))
    assert set(weights) == {tuple(F(s) if j == i else F(0) for j in range(4)) for i in range(4) for s in (1, -1)}
    assert set(weights.values()) == {1}


@pytest.mark.parametrize("kind,rank,mu,dim", [
    ("B", 3, (1, 1, 1), 35),       # third exterior power of C^7
    ("B", 2, (1, 1), 10),          # second exterior power of C^5
    ("B", 2, (0, 1), 5),           # vector of SO(5)
    ("C", 2, (0, 1), 4),           # standard of Sp(4)
    ("D", 4, (F(1, 2),) * 4, 8),   # half-spin
    ("A", 3, (F(-1), 0, 0, F(1)), 15),  # adjoint of SU(4)
])
def test_classical_dimensions(kind, rank, mu, dim):
    rs = quiet_build(kind, rank)
    assert weyl_dim(rs, vec(mu)) == dim
    assert sum(freudenthal_weights(rs, vec(mu)).values()) == dim


def test_b2_second_class_one_weight():
    b2 = quiet_build("B", 2)
    xi2 = class_one_weights(b2).xi[1]
    assert weyl_dim(b2, xi2) == 14 == weyl_character(b2, xi2).dimension()


def test_non_dominant_weight_rejected():
    with pytest.raises(WeightError):
        weyl_dim(quiet_build("B", 2), vec((1, 0)))
    with pytest.raises(WeightError):
        weyl_dim(quiet_build("B", 2), vec((0, F(1, 3))))


def test_characters():
    a1 = quiet_build("A", 1)
    doublet = weyl_character(a1, from_dynkin_labels(a1, [1]))
    assert doublet.poly.terms == {(-1, 1): 1, (1, -1): 1}
    for kind, rank in [("A", 2), ("B", 2), ("C", 3), ("D", 4)]:
        rs = quiet_build(kind, rank)
        zero = weyl_character(rs, (0,) * rs.ambient_dim)
        assert zero.poly.terms == {(0,) * rs.ambient_dim: 1}


def test_branch_standard_a2_to_a1():
    pair = make_pair("A", 1, 2)
    a2 = pair.large
    std = from_dynkin_labels(a2, [0, 1])
    assert weyl_dim(a2, std) == 3
    parts = branch(pair, std)
    assert sorted(weyl_dim(pair.small, v) for v in parts for _ in range(parts[v])) == [1, 2]


def test_branch_adjoint_su4_to_su3():
    pair = make_pair("A", 2, 3)
    parts = branch(pair, vec((-1, 0, 0, 1)))
    dims = sorted(weyl_dim(pair.small, v) for v in parts for _ in range(parts[v]))
    assert dims == [1, 3, 3, 8]


def test_branch_b3_third_exterior_power():
    # Lambda^3 C^7 over SO(5) is Lambda^3 C^5 + 2 Lambda^2 C^5 + C^5, and Lambda^3 C^5 = Lambda^2 C^5
    pair = make_pair("B", 2, 3)
    parts = branch(pair, vec((1, 1, 1)))
    assert parts == {vec((1, 1)): 3, vec((0, 1)): 1}


def test_branch_identity_pair():
    pair = make_pair("C", 2, 2)
    mu = class_one_weights(pair.large).xi[0]
    assert branch(pair, mu) == {mu: 1}


def test_branching_report_type_a_passes_and_b_reports_multiplicity():
    assert check_branching(make_pair("A", 2, 3)).passed
    rep = check_branching(make_pair("B", 2, 3))
    assert not rep.passed
    assert rep.details["dimension_failures"] == 0 and rep.details["restriction_failures"] == 0


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 4)]),
       st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_freudenthal_total_is_weyl_dimension(case, labels):
    kind, rank = case
    rs = quiet_build(kind, rank)
    mu = from_dynkin_labels(rs, labels[:rank])
    weights = freudenthal_weights(rs, mu)
    assert sum(weights.values()) == weyl_dim(rs, mu)
    assert weights[mu] == 1


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([("A", 2), ("B", 2), ("C", 2)]), st.lists(st.integers(0, 2), min_size=2, max_size=2))
def test_character_coefficients_match_freudenthal(case, labels):
    kind, rank = case
    rs = quiet_build(kind, rank)
    mu = from_dynkin_labels(rs, labels)
    ch = weyl_character(rs, mu)
    expected = {tuple(int(2 * (x + ch.trace_shift)) for x in w): m
                for w, m in freudenthal_weights(rs, mu).items()}
    assert ch.poly.terms == expected


def test_sigma_equivariance_cases():
    for coeffs in ((0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)):
        assert check_sigma_equivariance(4, coeffs).passed
    assert not check_sigma_equivariance(4, (1, 0, 0, 0), swap=False).passed
    assert check_sigma_equivariance(4, (0, 0, 0, 0), swap=False).passed
