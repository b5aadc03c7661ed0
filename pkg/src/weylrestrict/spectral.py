"""Weights, characters and branching for compact classical groups.

Weights live in the same ambient coordinates as the roots.  Characters are
Laurent polynomials on a doubled exponent lattice: the exponent vector of a
weight ``lam`` is ``2 * lam``, so half-integral weights stay integral.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import solve
from .polyring import Poly
from .propagation import PropagationPair, class_one_weights
from .report import Report, verdict
from .rootsys import RootSystem, Vector, dot, quiet_build, varpi_at, vadd, vscale, vsub
from .weylgrp import SignedPerm, sign_flip, weyl_group

WEIGHT_CAP = 200_000


class WeightError(ValueError):
    pass


def as_weight(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def pairings(rs: RootSystem, lam: Sequence[Fraction]) -> list[Fraction]:
    """The Dynkin labels 2<lam, alpha_j>/<alpha_j, alpha_j>."""
    return [2 * dot(lam, a) / dot(a, a) for a in rs.simple_roots]


def is_dominant(rs: RootSystem, lam: Sequence[Fraction]) -> bool:
    return all(dot(lam, a) >= 0 for a in rs.simple_roots)


def is_integral(rs: RootSystem, lam: Sequence[Fraction]) -> bool:
    if rs.type == "A" and sum(lam, Fraction(0)) != 0:
        return False
    return all(c.denominator == 1 for c in pairings(rs, lam))


def check_weight(rs: RootSystem, mu: Sequence) -> Vector:
    mu = as_weight(mu)
    if len(mu) != rs.ambient_dim:
        raise WeightError(f"weight needs {rs.ambient_dim} coordinates")
    if not is_integral(rs, mu):
        raise WeightError(f"{[str(v) for v in mu]} is not an integral weight of {rs.label}")
    if not is_dominant(rs, mu):
        raise WeightError(f"{[str(v) for v in mu]} is not dominant for {rs.label}")
    return mu


def from_dynkin_labels(rs: RootSystem, labels: Sequence[int]) -> Vector:
    """The weight with the given Dynkin labels, inside the span of the roots."""
    simple = rs.simple_roots
    gram = [[dot(a, b) for b in simple] for a in simple]
    rhs = [Fraction(c) * dot(a, a) / 2 for c, a in zip(labels, simple)]
    coeffs = solve(gram, rhs)
    out = (Fraction(0),) * rs.ambient_dim
    for c, a in zip(coeffs, simple):
        out = vadd(out, vscale(c, a))
    return out


def dominant_conjugate(rs: RootSystem, lam: Sequence[Fraction]) -> Vector:
    lam = tuple(lam)
    if rs.type == "A":
        return tuple(sorted(lam))
    mags = sorted(abs(v) for v in lam)
    if rs.type == "D" and mags[0] != 0 and sum(1 for v in lam if v < 0) % 2 == 1:
        mags[0] = -mags[0]
    return tuple(mags)


@lru_cache(maxsize=None)
def _coweights(rs: RootSystem) -> tuple[Vector, ...]:
    """Vectors h_i in the root span with <h_i, alpha_j> = delta_ij."""
    simple = rs.simple_roots
    gram = [[dot(a, b) for b in simple] for a in simple]
    out = []
    for i in range(rs.rank):
        c = solve(gram, [Fraction(int(i == j)) for j in range(rs.rank)])
        v = (Fraction(0),) * rs.ambient_dim
        for cl, a in zip(c, simple):
            v = vadd(v, vscale(cl, a))
        out.append(v)
    return tuple(out)


def _below(rs: RootSystem, mu: Vector, lam: Vector) -> bool:
    """``mu - lam`` is a nonnegative integer combination of simple roots."""
    diff = vsub(mu, lam)
    if rs.type == "A" and sum(diff, Fraction(0)) != 0:
        return False
    coeffs = [dot(h, diff) for h in _coweights(rs)]
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


@lru_cache(maxsize=256)
def _weights(rs: RootSystem, mu: Vector, cap: int) -> tuple[tuple[Vector, int], ...]:
    rho = rs.rho
    depth_form = (Fraction(0),) * rs.ambient_dim
    for h in _coweights(rs):
        depth_form = vadd(depth_form, h)
    # weights of the module: closure of mu under subtracting simple roots,
    # within the dominance cone of mu
    seen = {mu}
    queue = deque([mu])
    while queue:
        lam = queue.popleft()
        for a in rs.simple_roots:
            nxt = vsub(lam, a)
            if nxt in seen:
                continue
            if _below(rs, mu, dominant_conjugate(rs, nxt)):
                seen.add(nxt)
                if len(seen) > cap:
                    raise WeightError(f"weight system exceeds the cap of {cap} weights")
                queue.append(nxt)
    order = sorted(seen, key=lambda v: (dot(depth_form, vsub(mu, v)), v))
    norm_top = dot(vadd(mu, rho), vadd(mu, rho))
    mult: dict[Vector, int] = {}
    for lam in order:
        if lam == mu:
            mult[lam] = 1
            continue
        dom = dominant_conjugate(rs, lam)
        if dom != lam:
            mult[lam] = mult[dom]
            continue
        total = Fraction(0)
        for a in rs.positive_roots:
            up = vadd(lam, a)
            while up in seen:
                total += mult[up] * dot(up, a)
                up = vadd(up, a)
        lr = vadd(lam, rho)
        m = 2 * total / (norm_top - dot(lr, lr))
        if m.denominator != 1 or m < 0:
            raise WeightError("non-integral multiplicity in the recursion")
        mult[lam] = int(m)
    return tuple((lam, m) for lam, m in sorted(mult.items()) if m)


def freudenthal_weights(rs: RootSystem, mu: Sequence, cap: int = WEIGHT_CAP) -> dict[Vector, int]:
    mu = check_weight(rs, mu)
    return dict(_weights(rs, mu, cap))


def weyl_dim(rs: RootSystem, mu: Sequence) -> int:
    mu = check_weight(rs, mu)
    value = varpi_at(rs, vadd(mu, rs.rho)) / varpi_at(rs, rs.rho)
    if value.denominator != 1:
        raise WeightError("dimension formula returned a non-integer")
    return int(value)


def branch(pair: PropagationPair, mu_large: Sequence) -> dict[Vector, int]:
    """Decompose the restriction of the large-rank module to the small-rank group."""
    small = pair.small
    restricted: dict[Vector, int] = {}
    for lam, m in freudenthal_weights(pair.large, mu_large).items():
        p = pair.embedding.project(lam)
        restricted[p] = restricted.get(p, 0) + m
    out: dict[Vector, int] = {}
    rho = small.rho
    while restricted:
        top = max(restricted, key=lambda v: (dot(v, rho), v))
        count = restricted[top]
        if not is_dominant(small, top):
            raise WeightError("highest remaining weight is not dominant")
        out[top] = count
        for lam, m in freudenthal_weights(small, top).items():
            left = restricted.get(lam, 0) - count * m
            if left < 0:
                raise WeightError(f"negative multiplicity at {[str(v) for v in lam]}")
            if left:
                restricted[lam] = left
            else:
                restricted.pop(lam, None)
    return out


# characters

@dataclass(frozen=True)
class LaurentChar:
    """Character as a Laurent polynomial in doubled exponents.

    ``trace_shift`` records the multiple of (1, ..., 1) added to every weight
    (type A only) to make the exponents integral.
    """

    rs: RootSystem
    poly: Poly
    trace_shift: Fraction = Fraction(0)

    def dimension(self) -> int:
        return int(sum(self.poly.terms.values()))


def _trace_shift(rs: RootSystem, lam: Vector) -> Fraction:
    # type A weights can have thirds etc.; a multiple of (1,...,1) fixes that
    if rs.type != "A" or all((2 * v).denominator == 1 for v in lam):
        return Fraction(0)
    return -lam[0]


def _monomial(exps: Sequence[Fraction], coeff=1) -> Poly:
    e = []
    for v in exps:
        d = 2 * v
        if d.denominator != 1:
            raise WeightError("weight is not half-integral")
        e.append(int(d))
    return Poly(len(e), {tuple(e): coeff}, laurent=True)


def alternating_sum(rs: RootSystem, lam: Sequence[Fraction], shift: Fraction = Fraction(0)) -> Poly:
    """sum over W of det(w) a^{w lam} (doubled exponents)."""
    lam = tuple(lam)
    acc: dict[tuple[int, ...], Fraction] = {}
    for w in weyl_group(rs.type, rs.rank).elements():
        v = w.apply(lam)
        e = tuple(int(2 * (x + shift)) for x in v)
        acc[e] = acc.get(e, 0) + w.det()
    return Poly(rs.ambient_dim, acc, laurent=True)


def weyl_denominator(rs: RootSystem) -> Poly:
    """prod over positive roots of (a^{alpha/2} - a^{-alpha/2})."""
    out = Poly.const(rs.ambient_dim, 1, laurent=True)
    for a in rs.positive_roots:
        half = vscale(Fraction(1, 2), a)
        out = out * (_monomial(half) - _monomial(vscale(-1, half)))
    return out


def weyl_character(rs: RootSystem, mu: Sequence) -> LaurentChar:
    mu = check_weight(rs, mu)
    lam = vadd(mu, rs.rho)
    shift = _trace_shift(rs, lam)
    num = alternating_sum(rs, lam, shift)
    # the product form is traceless, so the shift lands on the quotient
    return LaurentChar(rs, num.exact_divide(weyl_denominator(rs)), shift)


def act_on_exponents(p: Poly, w: SignedPerm) -> Poly:
    """Substitute a -> w^{-1} a on the torus, i.e. send a^e to a^{w e}."""
    return Poly(p.nvars, {w.apply(e): c for e, c in p.terms.items()}, laurent=p.laurent)


def spherical_numerator(rs: RootSystem, lam: Sequence[Fraction]) -> Poly:
    return alternating_sum(rs, tuple(lam))


def spherical_function(rs: RootSystem, lam: Sequence[Fraction]) -> tuple[Fraction, Poly]:
    """Complex-case spherical function as (constant, exact quotient N_lam / D)."""
    lam = tuple(Fraction(v) for v in lam)
    const = varpi_at(rs, rs.rho) / varpi_at(rs, lam)
    return const, spherical_numerator(rs, lam).exact_divide(weyl_denominator(rs))


def check_sigma_equivariance(rank: int = 4, coeffs: Sequence[int] = (1, 0, 0, 0),
                             swap: bool = True) -> Report:
    """phi_lam(sigma a) = phi_{sigma lam}(a) for the odd sign change sigma on D_rank.

    ``lam = rho + sum coeffs[j] xi_{j+1}``.  With ``swap=False`` the right-hand
    side uses ``lam`` itself; that negative control must fail unless ``lam``
    is sigma-fixed.
    """
    rs = quiet_build("D", rank)
    xi = class_one_weights(rs)
    lam = vadd(rs.rho, xi.weight(list(coeffs) + [0] * (rank - len(coeffs))))
    sigma = sign_flip(rs.ambient_dim, 0)
    target = sigma.apply(lam) if swap else lam
    num_l = spherical_numerator(rs, lam)
    num_t = spherical_numerator(rs, target)
    den = weyl_denominator(rs)
    cross = act_on_exponents(num_l, sigma) * den == num_t * act_on_exponents(den, sigma)
    c_l, q_l = spherical_function(rs, lam)
    c_t, q_t = spherical_function(rs, target)
    quotient = c_l * act_on_exponents(q_l, sigma) == c_t * q_t
    simple = rs.simple_roots
    diagram = sigma.apply(simple[0]) == simple[1] and sigma.apply(simple[1]) == simple[0]
    xi_swap = sigma.apply(xi.xi[0]) == xi.xi[1] and sigma.apply(xi.xi[-1]) == xi.xi[-1]
    ok = cross and quotient and (diagram if swap else True)
    details = {
        "lambda": [str(v) for v in lam],
        "sigma_lambda": [str(v) for v in sigma.apply(lam)],
        "swapped": swap,
        "cross_multiplied_identity": cross,
        "quotient_identity": quotient,
        "sigma_swaps_first_two_simple_roots": diagram,
        "sigma_swaps_xi_1_and_xi_2_fixes_last": xi_swap,
    }
    params = {"rank": rank, "coeffs": list(coeffs), "swap": swap}
    return Report("sigma-equivariance", params, verdict(ok), details)


def check_branching(pair: PropagationPair, bound: int = 2) -> Report:
    """For padded class-one weights mu_{I,k} with |I| <= bound, mu_{I,n} must occur once."""
    small_xi = class_one_weights(pair.small)
    large_xi = class_one_weights(pair.large)
    rows = []
    bad_mult = bad_dim = bad_restrict = 0
    for I in itertools.product(range(bound + 1), repeat=pair.n):
        if sum(I) > bound:
            continue
        mu_k = large_xi.weight(list(I) + [0] * (pair.k - pair.n))
        mu_n = small_xi.weight(I)
        if pair.embedding.project(mu_k) != mu_n:
            bad_restrict += 1
        parts = branch(pair, mu_k)
        mult = parts.get(mu_n, 0)
        total = sum(m * weyl_dim(pair.small, v) for v, m in parts.items())
        dim = weyl_dim(pair.large, mu_k)
        bad_mult += mult != 1
        bad_dim += total != dim
        rows.append({"I": list(I), "multiplicity": mult, "dim": dim, "restricted_dim": total,
                     "components": len(parts)})
    ok = not (bad_mult or bad_dim or bad_restrict)
    witness = [r for r in rows if r["multiplicity"] != 1 or r["dim"] != r["restricted_dim"]]
    return Report("branch", {"type": pair.type, "n": pair.n, "k": pair.k, "bound": bound},
                  verdict(ok),
                  {"weights": len(rows), "multiplicity_failures": bad_mult,
                   "dimension_failures": bad_dim, "restriction_failures": bad_restrict},
                  witness[:3] or None)
