"""Polynomial-level Paley-Wiener operators.

``RhoAltPoly`` holds a polynomial ``Phi`` with
``Phi(w(lam + rho) - rho) = eps(w) Phi(lam)`` for every generator ``w`` of the
(extended) Weyl group, where ``eps(w)`` is the sign by which ``varpi``
transforms: ``varpi(w lam) = eps(w) varpi(lam)``.  On W this is det(w); the odd
sign change of type D leaves ``varpi`` unchanged, so there ``eps = +1``.

``SymPoly`` holds a polynomial invariant under the same group.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .invariants import char_poly_family
from .polyring import NotDivisibleError, Poly
from .propagation import PropagationPair, class_one_weights, make_pair
from .report import Report, verdict
from .rootsys import RootSystem, quiet_build, varpi, varpi_at, vadd, vscale
from .spectral import freudenthal_weights, from_dynkin_labels, weyl_dim
from .weylgrp import SignedPerm, WeylGroup, permutation_sign


class InvariantError(ValueError):
    pass


def group_of(rs: RootSystem, extended: bool) -> WeylGroup:
    return WeylGroup(rs, extended=extended and rs.type == "D")


def varpi_sign(rs: RootSystem, w: SignedPerm) -> int:
    if rs.type == "D":
        return permutation_sign(w.perm)
    return w.det()


def rho_twist(rs: RootSystem, p: Poly, w: SignedPerm) -> Poly:
    """The polynomial lam -> p(w(lam + rho) - rho)."""
    shifted = p.shift(vscale(-1, rs.rho))          # mu -> p(mu - rho)
    moved = shifted.act(w.inverse())               # mu -> p(w mu - rho)
    return moved.shift(rs.rho)


def _linear_factors(rs: RootSystem) -> list[Poly]:
    return [Poly.linear(a) for a in rs.positive_roots]


def is_rho_alternating(rs: RootSystem, extended: bool, p: Poly) -> bool:
    return all(rho_twist(rs, p, w) == p.scale(varpi_sign(rs, w))
               for w in group_of(rs, extended).generators)


def is_symmetric(rs: RootSystem, extended: bool, p: Poly) -> bool:
    return all(p.act(w) == p for w in group_of(rs, extended).generators)


# ``validate=False`` is for results whose symmetry holds by construction.

@dataclass(frozen=True)
class RhoAltPoly:
    rs: RootSystem
    extended: bool
    poly: Poly
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.validate and not is_rho_alternating(self.rs, self.extended, self.poly):
            raise InvariantError("polynomial is not rho-shifted alternating")


@dataclass(frozen=True)
class SymPoly:
    rs: RootSystem
    extended: bool
    poly: Poly
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.validate and not is_symmetric(self.rs, self.extended, self.poly):
            raise InvariantError("polynomial is not invariant")


def alt_symmetrize(rs: RootSystem, extended: bool, seed: Poly) -> RhoAltPoly:
    """sum over the group of eps(w) * seed(w(lam + rho) - rho)."""
    base = seed.shift(vscale(-1, rs.rho))
    total = Poly.zero(rs.ambient_dim)
    for w in sorted(group_of(rs, extended).elements()):
        total = total + base.act(w).scale(varpi_sign(rs, w))
    phi = total.shift(rs.rho)
    if phi.is_zero():
        raise InvariantError("degenerate seed: symmetrization vanished")
    return RhoAltPoly(rs, extended, phi, validate=False)


def _divide_by_varpi(rs: RootSystem, p: Poly) -> Poly:
    for f in _linear_factors(rs):
        p = p.exact_divide(f)
    return p


def vanishing_check(phi: RhoAltPoly) -> Report:
    rs = phi.rs
    shifted = phi.poly.shift(vscale(-1, rs.rho))
    failed = []
    for a, f in zip(rs.positive_roots, _linear_factors(rs)):
        try:
            shifted.exact_divide(f)
        except NotDivisibleError:
            failed.append([str(v) for v in a])
    full = None
    if not failed:
        q = _divide_by_varpi(rs, shifted)
        full = q * varpi(rs) == shifted
    ok = not failed and full is not False
    return Report("pw.vanishing", {"type": rs.type, "rank": rs.rank}, verdict(ok),
                  {"roots": len(rs.positive_roots), "full_quotient_verified": bool(full)},
                  failed[:3] or None)


def T_op(phi: RhoAltPoly) -> SymPoly:
    rs = phi.rs
    q = _divide_by_varpi(rs, phi.poly.shift(vscale(-1, rs.rho)))
    return SymPoly(rs, phi.extended, q.scale(varpi_at(rs, rs.rho)), validate=False)


def T_inv(f: SymPoly) -> RhoAltPoly:
    rs = f.rs
    p = (varpi(rs) * f.poly).shift(rs.rho).scale(1 / varpi_at(rs, rs.rho))
    return RhoAltPoly(rs, f.extended, p, validate=False)


def restrict_sym(pair: PropagationPair, f: SymPoly) -> SymPoly:
    return SymPoly(pair.small, f.extended, f.poly.restrict_leading(pair.small.ambient_dim),
                   validate=False)


def P_restrict(pair: PropagationPair, phi):
    """T_n^{-1}(T_k(phi) restricted); plain restriction for invariant input."""
    if isinstance(phi, SymPoly):
        return restrict_sym(pair, phi)
    return T_inv(restrict_sym(pair, T_op(phi)))


# random inputs

def invariant_generators(rs: RootSystem, extended: bool) -> list[Poly]:
    fam = char_poly_family(rs.type, rs.rank)
    gens = list(fam.generators)
    if rs.type == "D" and extended:
        gens[0] = gens[0] * gens[0]
    return gens


def random_invariant(rs: RootSystem, extended: bool, rng: random.Random,
                     max_degree: int = 4, terms: int = 3) -> tuple[SymPoly, list]:
    """A random polynomial in the generators, with its recipe."""
    gens = invariant_generators(rs, extended)
    degs = [g.degree() for g in gens]
    recipe = []
    poly = Poly.const(rs.ambient_dim, rng.randint(-3, 3))
    for _ in range(terms):
        exps = [0] * len(gens)
        budget = rng.randint(1, max_degree)
        for _ in range(3):
            i = rng.randrange(len(gens))
            if degs[i] <= budget:
                exps[i] += 1
                budget -= degs[i]
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        recipe.append((c, tuple(exps)))
        term = Poly.const(rs.ambient_dim, c)
        for g, e in zip(gens, exps):
            if e:
                term = term * g ** e
        poly = poly + term
    recipe.insert(0, (poly.coeff((0,) * rs.ambient_dim) - sum(
        c for c, e in recipe if not any(e)), ()))
    return SymPoly(rs, extended, poly, validate=False), recipe


def random_rho_alt(rs: RootSystem, extended: bool, rng: random.Random, **kw) -> RhoAltPoly:
    f, _ = random_invariant(rs, extended, rng, **kw)
    return T_inv(f)


def random_seed(rs: RootSystem, rng: random.Random, degree: int) -> Poly:
    n = rs.ambient_dim
    poly = Poly.zero(n)
    for _ in range(3):
        exps = [0] * n
        for _ in range(degree):
            exps[rng.randrange(n)] += 1
        poly = poly + Poly.monomial(exps, rng.choice([-2, -1, 1, 2, 3]))
    return poly


def lift_invariant(pair: PropagationPair, extended: bool, recipe) -> SymPoly:
    """Rebuild a small-rank invariant recipe with the matching large-rank generators."""
    large = invariant_generators(pair.large, extended)
    shift = len(large) - len(invariant_generators(pair.small, extended))
    dim = pair.large.ambient_dim
    sign = 1
    if pair.type == "D" and extended and shift:
        # det_n = (-1)^n p_{n,1}^2 is what p_{k, k-n+1} restricts to
        sign = (-1) ** pair.n
    poly = Poly.zero(dim)
    for c, exps in recipe:
        term = Poly.const(dim, c)
        for j, e in enumerate(exps):
            if e:
                g = large[j + shift]
                if j == 0 and pair.type == "D" and extended and shift:
                    g = g.scale(sign)
                term = term * g ** e
        poly = poly + term
    return SymPoly(pair.large, extended, poly, validate=False)


# checks

def check_alt_family(kind: str, rank: int, count: int = 20, seed: int = 0,
                     extended: bool = True) -> Report:
    """Symmetrize random seeds; each result must vanish, round-trip and be injective."""
    rs = quiet_build(kind, rank)
    rng = random.Random(f"pw-alt:{kind}:{rank}:{seed}")
    degree = len(rs.positive_roots)
    built = vanished = roundtrip_fail = zero_image = asym = 0
    failures = []
    while built < count:
        try:
            phi = alt_symmetrize(rs, extended, random_seed(rs, rng, degree + rng.randint(0, 2)))
        except InvariantError:
            vanished += 1
            if vanished > 10 * count:
                break
            continue
        built += 1
        rep = vanishing_check(phi)
        if not is_rho_alternating(rs, extended, phi.poly):
            asym += 1
        if not rep.passed:
            failures.append(phi.poly.to_text()[:200])
            continue
        f = T_op(phi)
        if f.poly.is_zero():
            zero_image += 1
        if not is_symmetric(rs, extended, f.poly):
            asym += 1
        if T_inv(f).poly != phi.poly:
            roundtrip_fail += 1
    ok = built == count and not failures and not roundtrip_fail and not zero_image and not asym
    return Report("pw.alt", {"type": kind, "rank": rank, "count": count}, verdict(ok),
                  {"built": built, "degenerate_seeds": vanished, "vanishing_failures": len(failures),
                   "roundtrip_failures": roundtrip_fail, "zero_images": zero_image,
                   "symmetry_failures": asym},
                  failures[:2] or None, seed=seed)


def check_projective(kind: str, n: int, m: int, k: int, trials: int = 10, seed: int = 0,
                     extended: bool = True) -> Report:
    rng = random.Random(f"pw-proj:{kind}:{n}:{m}:{k}:{seed}")
    kn, km, mn = make_pair(kind, n, k), make_pair(kind, m, k), make_pair(kind, n, m)
    large = kn.large
    bad = 0
    for _ in range(trials):
        phi = random_rho_alt(large, extended, rng, max_degree=3, terms=2)
        direct = P_restrict(kn, phi)
        chained = P_restrict(mn, P_restrict(km, phi))
        if direct.poly != chained.poly or not is_rho_alternating(kn.small, extended, direct.poly):
            bad += 1
    return Report("pw.projective", {"type": kind, "n": n, "m": m, "k": k, "trials": trials},
                  verdict(not bad), {"mismatches": bad}, seed=seed)


def check_surjectivity_witness(pair: PropagationPair, trials: int = 5, seed: int = 0,
                               extended: bool = True) -> Report:
    rng = random.Random(f"pw-surj:{pair.type}:{pair.n}:{pair.k}:{seed}")
    bad = 0
    for _ in range(trials):
        f_small, recipe = random_invariant(pair.small, extended, rng, max_degree=3, terms=2)
        phi_small = T_inv(f_small)
        phi_large = T_inv(lift_invariant(pair, extended, recipe))
        if P_restrict(pair, phi_large).poly != phi_small.poly:
            bad += 1
    return Report("pw.surjectivity", {"type": pair.type, "n": pair.n, "k": pair.k},
                  verdict(not bad), {"trials": trials, "failures": bad, "status": "witnessed"},
                  seed=seed)


def i_vectors(rank: int, bound: int) -> list[tuple[int, ...]]:
    return [I for I in itertools.product(range(bound + 1), repeat=rank) if sum(I) <= bound]


def C_coeff(pair: PropagationPair, f: SymPoly, bound: int = 3) -> dict:
    """Coefficient sequence on the small class-one lattice, computed two ways.

    Route one evaluates the restricted invariant at mu_{I,n} + rho_n.  Route
    two evaluates the large invariant at the padded argument assembled from
    the restriction of mu_{I,k}: pad(mu_{I,k}|) - rho_k + pad(rho_n) + rho_k.
    """
    small_xi = class_one_weights(pair.small)
    large_xi = class_one_weights(pair.large)
    restricted = P_restrict(pair, f).poly
    rho_n, rho_k = pair.small.rho, pair.large.rho
    emb = pair.embedding
    route_one, route_two, literal = {}, {}, {}
    for I in i_vectors(pair.n, bound):
        mu_n = small_xi.weight(I)
        mu_k = large_xi.weight(list(I) + [0] * (pair.k - pair.n))
        route_one[I] = restricted.evaluate(vadd(mu_n, rho_n))
        arg = vadd(vadd(vadd(emb.pad(emb.project(mu_k)), vscale(-1, rho_k)), emb.pad(rho_n)), rho_k)
        route_two[I] = f.poly.evaluate(arg)
        literal[I] = f.poly.evaluate(vadd(mu_k, emb.pad(rho_n)))
    return {"route_one": route_one, "route_two": route_two, "unrestricted_argument": literal}


def check_C_coeff(kind: str, n: int, k: int, bound: int = 3, seed: int = 0,
                  extended: bool = True) -> Report:
    pair = make_pair(kind, n, k)
    rng = random.Random(f"pw-coeff:{kind}:{n}:{k}:{seed}")
    f, _ = random_invariant(pair.large, extended, rng, max_degree=4, terms=3)
    out = C_coeff(pair, f, bound)
    diff = [list(I) for I in out["route_one"] if out["route_one"][I] != out["route_two"][I]]
    literal_diff = sum(1 for I in out["route_one"]
                       if out["route_one"][I] != out["unrestricted_argument"][I])
    return Report("pw.coeff", {"type": kind, "n": n, "k": k, "bound": bound},
                  verdict(not diff),
                  {"i_vectors": len(out["route_one"]), "route_mismatches": len(diff),
                   "unrestricted_argument_mismatches": literal_diff},
                  diff[:3] or None, seed=seed)


def dimension_weights(rs: RootSystem, count: int) -> list[tuple]:
    """The first ``count`` dominant weights ordered by Dynkin-label sum."""
    out = []
    total = 0
    while len(out) < count:
        for labels in itertools.product(range(total + 1), repeat=rs.rank):
            if sum(labels) == total:
                out.append(from_dynkin_labels(rs, labels))
        total += 1
    return out[:count]


def Q_dim_identity(rs: RootSystem, weights: Sequence) -> Report:
    bad = []
    for mu in weights:
        formula = varpi_at(rs, vadd(mu, rs.rho)) / varpi_at(rs, rs.rho)
        total = sum(freudenthal_weights(rs, mu).values())
        if formula != total or weyl_dim(rs, mu) != total:
            bad.append({"mu": [str(v) for v in mu], "formula": str(formula), "freudenthal": total})
    return Report("dim", {"type": rs.type, "rank": rs.rank, "weights": len(weights)},
                  verdict(not bad), {"checked": len(weights), "mismatches": len(bad)}, bad[:3] or None)
