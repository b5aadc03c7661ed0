from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from weylrestrict.polyring import Poly, variables
from weylrestrict.propagation import make_pair
from weylrestrict.pwtransform import (
    InvariantError, P_restrict, Q_dim_identity, RhoAltPoly, SymPoly, T_inv, T_op, C_coeff,
    alt_symmetrize, check_C_coeff, check_alt_family, check_projective, check_surjectivity_witness,
    dimension_weights, is_rho_alternating, is_symmetric, random_invariant, random_rho_alt,
    random_seed, vanishing_check, varpi_sign,
)
from weylrestrict.rootsys import quiet_build, varpi, varpi_at
from weylrestrict.spectral import from_dynkin_labels
from weylrestrict.weylgrp import sign_flip


def test_shifted_varpi_maps_to_constant():
    for kind, rank in [("A", 2), ("B", 2), ("C", 2), ("D", 3)]:
        rs = quiet_build(kind, rank)
        phi = RhoAltPoly(rs, True, varpi(rs).shift(rs.rho))
        assert vanishing_check(phi).passed
        assert T_op(phi).poly == Poly.const(rs.ambient_dim, varpi_at(rs, rs.rho))


def test_rank_one_unwind():
    rs = quiet_build("A", 1)
    x1, x2 = variables(2)
    q = (x1 + x2) ** 2 + (x2 - x1) ** 2          # invariant under the swap
    phi = RhoAltPoly(rs, True, ((x2 - x1) * q).shift(rs.rho))
    assert T_op(phi).poly == q.scale(varpi_at(rs, rs.rho))


def test_zero_is_divisible():
    rs = quiet_build("B", 2)
    assert vanishing_check(RhoAltPoly(rs, True, Poly.zero(2))).passed


def test_non_alternating_rejected():
    rs = quiet_build("B", 2)
    with pytest.raises(InvariantError):
        RhoAltPoly(rs, True, Poly.var(2, 0))
    with pytest.raises(InvariantError):
        SymPoly(rs, True, Poly.var(2, 0))


def test_round_trip_b2():
    rs = quiet_build("B", 2)
    rng = random.Random(8)
    built = 0
    while built < 20:
        try:
            phi = alt_symmetrize(rs, True, random_seed(rs, rng, 4 + rng.randint(0, 2)))
        except InvariantError:
            continue
        built += 1
        assert is_rho_alternating(rs, True, phi.poly)
        f = T_op(phi)
        assert is_symmetric(rs, True, f.poly) and not f.poly.is_zero()
        assert T_inv(f).poly == phi.poly


def test_type_d_sign_change_fixes_varpi():
    rs = quiet_build("D", 4)
    sigma = sign_flip(4)
    assert varpi(rs).act(sigma) == varpi(rs)
    assert sigma.det() == -1 and varpi_sign(rs, sigma) == 1
    phi = random_rho_alt(rs, True, random.Random(4), max_degree=2, terms=2)
    assert is_rho_alternating(rs, True, phi.poly)
    assert T_op(phi).poly.act(sigma) == T_op(phi).poly


def test_identity_pair_is_identity():
    pair = make_pair("B", 3, 3)
    phi = random_rho_alt(pair.large, True, random.Random(1), max_degree=2)
    assert P_restrict(pair, phi).poly == phi.poly


def test_projective_a_123():
    assert check_projective("A", 1, 2, 3, trials=10, seed=0).passed


@pytest.mark.parametrize("kind,n,k", [("B", 1, 3), ("C", 2, 3), ("D", 2, 4)])
def test_restriction_output_is_small_rank_alternating(kind, n, k):
    pair = make_pair(kind, n, k)
    phi = random_rho_alt(pair.large, True, random.Random(2), max_degree=3)
    out = P_restrict(pair, phi)
    assert is_rho_alternating(pair.small, True, out.poly)
    f, _ = random_invariant(pair.large, True, random.Random(3))
    assert is_symmetric(pair.small, True, P_restrict(pair, f).poly)


@pytest.mark.parametrize("kind,n,k", [("A", 1, 3), ("B", 2, 3), ("D", 3, 4)])
def test_surjectivity_witness(kind, n, k):
    rep = check_surjectivity_witness(make_pair(kind, n, k), trials=3, seed=1)
    assert rep.passed and rep.details["status"] == "witnessed"


def test_coefficients_constant_and_zero():
    pair = make_pair("B", 2, 2)
    one = C_coeff(pair, SymPoly(pair.large, True, Poly.const(2, 1)))
    assert set(one["route_one"].values()) == {1} and len(one["route_one"]) == 10
    zero = C_coeff(pair, SymPoly(pair.large, True, Poly.zero(2)))
    assert set(zero["route_two"].values()) == {0}


def test_coefficient_routes_b23_quadratic():
    pair = make_pair("B", 2, 3)
    x = variables(3)
    quad = SymPoly(pair.large, True, x[0] ** 2 + x[1] ** 2 + x[2] ** 2)
    out = C_coeff(pair, quad, bound=3)
    assert out["route_one"] == out["route_two"]
    # at I = (1, 0): xi_{3,1} + pad(rho_2) = (3/2, 5/2, 1) differs from pad(xi_{2,1} + rho_2)
    assert out["route_one"][(1, 0)] == F(34, 4)
    assert out["unrestricted_argument"][(1, 0)] == F(38, 4)
    assert check_C_coeff("C", 1, 3).passed


def test_dimension_identity():
    a1 = quiet_build("A", 1)
    rep = Q_dim_identity(a1, [from_dynkin_labels(a1, [m]) for m in range(11)])
    assert rep.passed and rep.details["checked"] == 11
    for kind, rank in [("A", 2), ("B", 2), ("C", 3), ("D", 4)]:
        rs = quiet_build(kind, rank)
        weights = dimension_weights(rs, 8)
        assert weights[0] == (0,) * rs.ambient_dim
        assert Q_dim_identity(rs, weights).passed


def test_alt_family_report():
    rep = check_alt_family("A", 2, count=5, seed=3)
    assert rep.passed and rep.details["built"] == 5


@settings(max_examples=8, deadline=None)
@given(st.sampled_from(["A", "B", "C"]), st.integers(0, 10_000))
def test_transform_is_injective_and_linear(kind, seed):
    rs = quiet_build(kind, 2)
    rng = random.Random(seed)
    a = random_rho_alt(rs, True, rng, max_degree=2)
    b = random_rho_alt(rs, True, rng, max_degree=2)
    total = RhoAltPoly(rs, True, a.poly + b.poly)
    assert T_op(total).poly == T_op(a).poly + T_op(b).poly
    assert T_op(a).poly.is_zero() == a.poly.is_zero()
