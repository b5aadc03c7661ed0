"""Injectivity radii and the convex domains Omega and Omega*.

Points of the Cartan subspace are stored as the rational coefficients of pi,
so every membership test is an exact comparison of rationals.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import total_ordering
from fractions import Fraction
from typing import Sequence

from .polyring import Poly, elementary_symmetric, variables
from .propagation import PropagationPair
from .report import Report, verdict
from .rootsys import RootSystem, coroot_lengths, highest_root_marks, quiet_build, vadd


@total_ordering
@dataclass(frozen=True)
class Surd:
    """The real number ``coeff * sqrt(radicand)`` with squarefree ``radicand``."""

    coeff: Fraction
    radicand: int

    @classmethod
    def sqrt_of(cls, q) -> "Surd":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        num = q.numerator * q.denominator
        out, rad = 1, 1
        f = 2
        while f * f <= num:
            while num % (f * f) == 0:
                num //= f * f
                out *= f
            f += 1
        rad = num
        return cls(Fraction(out, q.denominator), rad)

    def square(self) -> Fraction:
        return self.coeff ** 2 * self.radicand

    def __lt__(self, other: "Surd") -> bool:
        return self.square() < other.square()

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coeff)
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        return f"{c}sqrt({self.radicand})"


@dataclass(frozen=True)
class RadiusReport:
    label: str
    squared_coroot_lengths: tuple[tuple[int, Fraction], ...]
    radius_over_pi: Surd

    def __str__(self) -> str:
        return f"{self.label}: R = {self.radius_over_pi}*pi"


def injectivity_radius(kind: str, rank: int) -> RadiusReport:
    rs = quiet_build(kind, rank)
    lengths = tuple(coroot_lengths(rs))
    shortest = min(sq for _, sq in lengths)
    return RadiusReport(rs.label, lengths, Surd.sqrt_of(shortest))


EXPECTED_RADIUS = {"A": Surd(Fraction(1), 2), "B": Surd(Fraction(2), 1),
                   "C": Surd(Fraction(1), 2), "D": Surd(Fraction(2), 1)}


# polytopes

@dataclass(frozen=True)
class HPolytope:
    """Open polytope ``{x : <normal, x> < bound for every facet}``.

    Normals are integer vectors.  For type A the affine constraint
    ``sum x = 0`` also applies.
    """

    dim: int
    normals: tuple[tuple[int, ...], ...]
    bounds: tuple[Fraction, ...]
    traceless: bool = False

    def contains(self, x: Sequence[Fraction]) -> bool:
        if self.traceless and sum(x, Fraction(0)) != 0:
            return False
        xs = [Fraction(v) for v in x]
        den = math.lcm(*(v.denominator for v in xs))
        ints = [v.numerator * (den // v.denominator) for v in xs]
        for nrm, b in zip(self.normals, self.bounds):
            s = 0
            for a, v in zip(nrm, ints):
                if a:
                    s += a * v
            # <n, x> < b  <=>  s * b.den < b.num * den
            if s * b.denominator >= b.numerator * den:
                return False
        return True

    def facet_ratio(self, x: Sequence[Fraction]) -> Fraction:
        """Largest <n,x>/b over facets; x is inside iff this is < 1."""
        xs = [Fraction(v) for v in x]
        den = math.lcm(*(v.denominator for v in xs))
        ints = [v.numerator * (den // v.denominator) for v in xs]
        # compare s * b.den / b.num across facets by cross-multiplication
        top, bottom = None, 1
        for n, b in zip(self.normals, self.bounds):
            s = sum(a * v for a, v in zip(n, ints)) * b.denominator
            if top is None or s * bottom > top * b.numerator:
                top, bottom = s, b.numerator
        return Fraction(top, bottom * den)

    def is_symmetric(self) -> bool:
        pairs = set(zip(self.normals, self.bounds))
        return all((tuple(-a for a in n), b) in pairs for n, b in pairs)


def _integral(v: Sequence[Fraction]) -> tuple[int, ...]:
    return tuple(int(a) for a in v)


def omega(rs: RootSystem) -> HPolytope:
    """``|alpha(x)| < 1/2`` for every root alpha."""
    normals = tuple(_integral(a) for a in sorted(rs.roots))
    return HPolytope(rs.ambient_dim, normals, (Fraction(1, 2),) * len(normals),
                     traceless=rs.type == "A")


def omega_star(rs: RootSystem) -> HPolytope:
    """Omega for types A and C; the orbit of 2*(sum of simple roots) for B and D."""
    if rs.type in ("A", "C"):
        return omega(rs)
    sigma = (Fraction(0),) * rs.ambient_dim
    for a in rs.simple_roots:
        sigma = vadd(sigma, a)
    sigma = tuple(2 * v for v in sigma)
    # sigma(w x) = (w^{-1} sigma)(x), so the orbit of sigma gives the facet normals
    orbit = sorted(_orbit(rs, sigma))
    return HPolytope(rs.ambient_dim, tuple(_integral(v) for v in orbit),
                     (Fraction(1, 2),) * len(orbit))


def _orbit(rs: RootSystem, v) -> set:
    from .weylgrp import weyl_group

    group = weyl_group(rs.type, rs.rank)
    seen = {tuple(v)}
    frontier = [tuple(v)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in group.generators:
                y = g.apply(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def omega_membership(domain: str, rs: RootSystem, x: Sequence) -> bool:
    """``domain`` is "omega" or "star"."""
    poly = omega(rs) if domain.lower() == "omega" else omega_star(rs)
    return poly.contains([Fraction(v) for v in x])


# sampling

def _random_direction(rs: RootSystem, rng: random.Random) -> tuple[int, ...]:
    # integer directions; only the ray matters
    n = rs.ambient_dim
    while True:
        d = [rng.randint(-60, 60) for _ in range(n)]
        if rs.type == "A":
            total = sum(d)
            d = [n * v - total for v in d]
        if any(d):
            return tuple(d)


def sample_points(rs: RootSystem, poly: HPolytope, count: int, rng: random.Random,
                  outside_share: float = 0.25) -> list[tuple[Fraction, ...]]:
    """Exact points of ``poly`` plus a share just outside it along random rays."""
    pts = []
    for i in range(count):
        d = _random_direction(rs, rng)
        edge = poly.facet_ratio(d)
        if rng.random() < outside_share:
            u = Fraction(rng.randint(1001, 1400), 1000)
        else:
            u = Fraction(rng.randint(1, 999), 1000)
        pts.append(tuple(v * u / edge for v in d))
    return pts


def boundary_probes(rs: RootSystem, poly: HPolytope, rng: random.Random,
                    count: int = 20) -> list[tuple[tuple[Fraction, ...], bool]]:
    """Points on a facet, just inside and just outside, with the expected membership."""
    out = []
    for _ in range(count):
        d = _random_direction(rs, rng)
        edge = poly.facet_ratio(d)
        for u, inside in ((Fraction(1), False), (Fraction(999, 1000), True),
                          (Fraction(1001, 1000), False)):
            out.append((tuple(v * u / edge for v in d), inside))
    return out


def subset_certificate(rs: RootSystem) -> dict:
    """For each root, facets of Omega* whose positive combination bounds it by 1/2."""
    star = omega_star(rs)
    facets = list(zip(star.normals, star.bounds))
    missing = []
    for a in rs.roots:
        if not _bounded(a, facets):
            missing.append([str(v) for v in a])
    return {"roots": len(rs.roots), "uncertified": missing,
            "highest_root_marks": highest_root_marks(rs) if rs.rank > 1 or rs.type != "D" else None}


def _multiple(a, n):
    ratios = {Fraction(x) / y for x, y in zip(a, n) if y}
    if len(ratios) != 1 or any(x and not y for x, y in zip(a, n)):
        return None
    c = ratios.pop()
    return c if c > 0 else None


def _bounded(a, facets) -> bool:
    half = Fraction(1, 2)
    for n, b in facets:
        c = _multiple(a, n)
        if c is not None and c * b <= half:
            return True
    for i, (n1, b1) in enumerate(facets):
        for n2, b2 in facets[i + 1:]:
            c = _pair_combination(a, n1, n2)
            if c and c[0] * b1 + c[1] * b2 <= half:
                return True
    return False


def _pair_combination(a, n1, n2):
    """Positive c1, c2 with a = c1*n1 + c2*n2, if they exist."""
    idx = [i for i in range(len(a)) if n1[i] or n2[i]]
    for i in idx:
        for j in idx:
            det = n1[i] * n2[j] - n1[j] * n2[i]
            if det:
                c1 = Fraction(a[i] * n2[j] - a[j] * n2[i], det)
                c2 = Fraction(n1[i] * a[j] - n1[j] * a[i], det)
                if c1 > 0 and c2 > 0 and all(c1 * x + c2 * y == z for x, y, z in zip(n1, n2, a)):
                    return c1, c2
                return None
    return None


def check_omega_star_subset(kind: str, rank: int, samples: int = 1000, seed: int = 0) -> Report:
    rs = quiet_build(kind, rank)
    rng = random.Random(f"omega-subset:{kind}:{rank}:{seed}")
    star, full = omega_star(rs), omega(rs)
    cert = subset_certificate(rs)
    violations = []
    members = 0
    for x in sample_points(rs, star, samples, rng, outside_share=0.0):
        if star.contains(x):
            members += 1
            if not full.contains(x):
                violations.append([str(v) for v in x])
    ok = not cert["uncertified"] and not violations and members == samples
    details = {"samples": samples, "members": members, "violations": len(violations),
               "certificate_roots": cert["roots"], "uncertified_roots": len(cert["uncertified"]),
               "omega_star_equals_omega": star == full}
    return Report("omega.subset", {"type": kind, "rank": rank}, verdict(ok), details,
                  (violations or cert["uncertified"])[:3] or None, seed=seed)


def type_a_bound_identity(r: int) -> bool:
    """Symbolic step: sum_{j != i} (x_i - x_j) = (r+1) x_i - (x_1 + ... + x_{r+1}).

    On the sum-zero hyperplane each term is below 1/2 in absolute value, hence
    (r+1)|x_i| < r/2 and |x_i| < 1/2.
    """
    xs = variables(r + 1)
    trace = elementary_symmetric(xs, 1)
    for i in range(r + 1):
        lhs = Poly.zero(r + 1)
        for j in range(r + 1):
            if j != i:
                lhs = lhs + xs[i] - xs[j]
        if lhs != xs[i] * (r + 1) - trace:
            return False
    return True


def check_omega_star_propagation(pair: PropagationPair, samples: int = 1000, seed: int = 0) -> Report:
    rng = random.Random(f"omega-prop:{pair.type}:{pair.n}:{pair.k}:{seed}")
    small, large = pair.small, pair.large
    star_n, star_k = omega_star(small), omega_star(large)
    mismatches = []
    pts = sample_points(small, star_n, samples, rng)
    probes = boundary_probes(small, star_n, rng)
    probe_failures = 0
    for x, expected in probes:
        if star_n.contains(x) != expected:
            probe_failures += 1
    for x in pts + [p for p, _ in probes]:
        if star_k.contains(pair.embedding.pad(x)) != star_n.contains(x):
            mismatches.append([str(v) for v in x])
    details = {"samples": len(pts), "probes": len(probes), "mismatches": len(mismatches),
               "probe_failures": probe_failures}
    ok = not mismatches and not probe_failures
    if pair.type == "A":
        r = small.rank
        symbolic = type_a_bound_identity(r)
        bound_fail = 0
        for x in pts:
            if star_n.contains(x):
                if any((r + 1) * abs(v) >= Fraction(r, 2) for v in x):
                    bound_fail += 1
        details.update({"type_a_identity": symbolic, "type_a_bound_failures": bound_fail})
        ok = ok and symbolic and not bound_fail
    return Report("omega.propagation", {"type": pair.type, "n": pair.n, "k": pair.k},
                  verdict(ok), details, mismatches[:3] or None, seed=seed)


def support_radius_bound(kind: str, rank: int) -> Surd:
    """Supremum of radii r (times pi) with the closed r-ball inside Omega*.

    Uses the realization metric.  Any smaller radius is admissible, so this is
    a lower bound for the support constant, not a sharp value.
    """
    rs = quiet_build(kind, rank)
    star = omega_star(rs)
    best = None
    for n, b in zip(star.normals, star.bounds):
        # distance to the facet <n,x> = b is b*sqrt(s)/|n| in the scaled metric
        sq = b * b * rs.metric_scale / sum(a * a for a in n)
        best = sq if best is None or sq < best else best
    return Surd.sqrt_of(best)
