from fractions import Fraction as F
import itertools

import pytest
from hypothesis import given, strategies as st

from weylrestrict.polyring import Poly
from weylrestrict.rootsys import (
    RankError, build, coroot_lengths, diagram_marks, dot, expected_root_count,
    highest_root_marks, quiet_build, varpi, varpi_at, vec,
)

KINDS = "ABCD"


def brute_roots(kind, n):
    """Classical root sets written out coordinate by coordinate."""
    dim = n + 1 if kind == "A" else n
    out = set()
    for i, j in itertools.permutations(range(dim), 2):
        v = [0] * dim
        v[i], v[j] = 1, -1
        out.add(tuple(v))
        if kind != "A":
            w = [0] * dim
            w[i] = w[j] = 1
            out.add(tuple(w))
            out.add(tuple(-x for x in w))
    if kind in "BC":
        c = 1 if kind == "B" else 2
        for i in range(dim):
            for s in (c, -c):
                v = [0] * dim
                v[i] = s
                out.add(tuple(v))
    return {tuple(F(x) for x in v) for v in out}


@pytest.mark.parametrize("kind,n", [(k, n) for k in "ABC" for n in range(1, 6)] + [("D", n) for n in range(2, 6)])
def test_roots_match_classical_lists(kind, n):
    rs = quiet_build(kind, n)
    assert set(rs.roots) == brute_roots(kind, n)
    assert len(rs.roots) == expected_root_count(kind, n)
    assert len(rs.positive_roots) * 2 == len(rs.roots)


def test_b2_root_list():
    rs = build("B", 2)
    assert set(rs.roots) == {vec(v) for v in [(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1), (1, 1), (-1, -1)]}


def test_a1_rho():
    rs = build("A", 1)
    assert set(rs.roots) == {vec((-1, 1)), vec((1, -1))}
    assert rs.rho == vec((F(-1, 2), F(1, 2)))


def test_d4_rho_and_varpi_at_rho():
    rs = build("D", 4)
    assert len(rs.roots) == 24
    assert rs.rho == vec((0, 1, 2, 3))
    # prod_{j<i} (rho_i^2 - rho_j^2) with rho = (0, 1, 2, 3)
    assert varpi_at(rs, rs.rho) == 1 * 4 * 9 * 3 * 8 * 5 == 4320


def test_varpi_small_cases():
    x1, x2 = Poly.var(2, 0), Poly.var(2, 1)
    assert varpi(build("A", 1)) == x2 - x1
    b2 = varpi(quiet_build("B", 2))
    assert b2.degree() == 4
    assert b2 == x1 * x2 * (x2 - x1) * (x2 + x1)


@pytest.mark.parametrize("kind", KINDS)
def test_rho_is_half_sum(kind):
    rs = quiet_build(kind, 4)
    total = [F(0)] * rs.ambient_dim
    for a in rs.positive_roots:
        total = [t + x for t, x in zip(total, a)]
    assert tuple(t / 2 for t in total) == rs.rho


@pytest.mark.parametrize("kind", KINDS)
def test_simple_roots_give_integer_coordinates(kind):
    rs = quiet_build(kind, 4)
    for a in rs.positive_roots:
        c = rs.simple_coords(a)
        assert all(x.denominator == 1 and x >= 0 for x in c)


def test_coroot_lengths():
    assert coroot_lengths(build("B", 3)) == [(1, F(8)), (2, F(4)), (3, F(4))]
    assert coroot_lengths(build("C", 3)) == [(1, F(2)), (2, F(4)), (3, F(4))]
    assert all(sq == 2 for _, sq in coroot_lengths(build("A", 3)))


def test_highest_root_marks():
    assert highest_root_marks(build("A", 3)) == [1, 1, 1]
    assert highest_root_marks(build("D", 4)) == [1, 1, 2, 1]
    b4 = highest_root_marks(build("B", 4))
    assert b4[-1] == 1 and b4[:-1] == [2, 2, 2]
    for kind, n in [("A", 3), ("B", 4), ("C", 4), ("D", 5)]:
        assert highest_root_marks(quiet_build(kind, n)) == diagram_marks(kind, n)


def test_rank_errors():
    with pytest.raises(RankError):
        build("D", 1, permissive=True)
    with pytest.raises(RankError):
        build("E", 3)
    with pytest.raises(RankError):
        build("D", 3)
    with pytest.warns(UserWarning):
        build("D", 3, permissive=True)
    assert quiet_build("D", 3).permissive


def test_to_dict_is_json_ready():
    d = build("B", 3).to_dict()
    assert len(d["roots"]) == 18 and d["type"] == "B"


@given(st.sampled_from("ABCD"), st.integers(2, 5), st.data())
def test_varpi_is_alternating_under_simple_reflections(kind, n, data):
    from weylrestrict.weylgrp import reflection

    rs = quiet_build(kind, n)
    a = data.draw(st.sampled_from(rs.simple_roots))
    w = reflection(rs, a)
    p = varpi(rs)
    assert p.act(w) == -p


@given(st.sampled_from("ABCD"), st.integers(2, 5))
def test_roots_closed_under_reflections(kind, n):
    rs = quiet_build(kind, n)
    roots = set(rs.roots)
    for a in rs.simple_roots:
        for b in rs.roots:
            r = tuple(x - 2 * dot(a, b) / dot(a, a) * y for x, y in zip(b, a))
            assert r in roots
