"""Invariant polynomial generators from characteristic polynomials, and their restriction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polyring import Poly
from .report import Report, verdict
from .rootsys import RootSystem, quiet_build
from .weylgrp import SignedPerm, WeylGroup, sign_flip


@dataclass(frozen=True)
class InvariantFamily:
    rs: RootSystem
    generators: tuple[Poly, ...]  # generators[nu - 1] is p_{k, nu}
    pfaffian_index: int | None = None
    # sign the determinant-side factorization attaches to the Pfaffian; the
    # stored generator is x_1...x_k and only its square and parity are used
    pfaffian_sign_note: str | None = None

    def generator(self, nu: int) -> Poly:
        return self.generators[nu - 1]

    @property
    def nvars(self) -> int:
        return self.rs.ambient_dim


def _char_poly(kind: str, k: int) -> tuple[Poly, int]:
    """Characteristic polynomial in variables (x_1..x_N, t); returns it and N."""
    dim = k + 1 if kind == "A" else k
    nv = dim + 1
    t = Poly.var(nv, dim)
    f = Poly.const(nv, 1)
    for j in range(dim):
        x = Poly.var(nv, j)
        f = f * (t + x if kind == "A" else t * t - x * x)
    if kind == "B":
        f = f * t
    return f, dim


def _t_coefficient(f: Poly, dim: int, power: int) -> Poly:
    out = {}
    for e, c in f.terms.items():
        if e[dim] == power:
            out[e[:dim]] = c
    return Poly(dim, out)


@lru_cache(maxsize=None)
def char_poly_family(kind: str, k: int) -> InvariantFamily:
    rs = quiet_build(kind, k)
    f, dim = _char_poly(kind, k)
    gens = []
    if kind == "A":
        gens = [_t_coefficient(f, dim, nu - 1) for nu in range(1, k + 2)]
        return InvariantFamily(rs, tuple(gens))
    if kind == "B":
        gens = [_t_coefficient(f, dim, 2 * nu - 1) for nu in range(1, k + 1)]
        return InvariantFamily(rs, tuple(gens))
    if kind == "C":
        gens = [_t_coefficient(f, dim, 2 * (nu - 1)) for nu in range(1, k + 1)]
        return InvariantFamily(rs, tuple(gens))
    pf = Poly(dim, {(1,) * dim: 1})
    gens = [pf] + [_t_coefficient(f, dim, 2 * (nu - 1)) for nu in range(2, k + 1)]
    return InvariantFamily(rs, tuple(gens), pfaffian_index=1,
                           pfaffian_sign_note="(-1)^(k/2) x_1...x_k; stored with sign +1")


def determinant_generator(kind: str, k: int) -> Poly:
    """Constant term in t of the type-D characteristic polynomial, i.e. prod(-x_j^2)."""
    f, dim = _char_poly(kind, k)
    return _t_coefficient(f, dim, 0)


def expected_degree(kind: str, k: int, nu: int) -> int:
    if kind == "A":
        return k + 2 - nu
    if kind == "D" and nu == 1:
        return k
    return 2 * (k + 1 - nu)


def is_invariant(p: Poly, gens) -> bool:
    return all(p.act(g) == p for g in gens)


def restrict_family(fam: InvariantFamily, n: int) -> list[Poly]:
    """Each generator with the padded coordinates set to zero, in the small variables."""
    small_dim = n + 1 if fam.rs.type == "A" else n
    return [g.restrict_leading(small_dim) for g in fam.generators]


def expected_restrictions(kind: str, n: int, k: int) -> list[Poly]:
    """The restriction pattern as predicted by the generator index shift."""
    small = char_poly_family(kind, n)
    dim = small.nvars
    shift = k - n
    out = []
    for nu in range(1, len(char_poly_family(kind, k).generators) + 1):
        j = nu - shift
        if j < 1:
            out.append(Poly.zero(dim))
        elif kind == "D" and shift > 0 and j == 1:
            out.append(small.generator(1) ** 2 * (-1) ** n)
        else:
            out.append(small.generator(j))
    return out


def check_restriction_identities(kind: str, n: int, k: int) -> Report:
    got = restrict_family(char_poly_family(kind, k), n)
    want = expected_restrictions(kind, n, k)
    bad = [nu for nu, (a, b) in enumerate(zip(got, want), start=1) if a != b]
    details = {"generators": len(got), "mismatched_indices": bad}
    if kind == "D" and k > n:
        # compare the determinant-side identity sign-insensitively as well
        nu = k - n + 1
        details["pfaffian_square_identity"] = (
            got[nu - 1] == determinant_generator("D", n)
            and determinant_generator("D", n) == (-1) ** n * char_poly_family("D", n).generator(1) ** 2)
    witness = None
    if bad:
        witness = {str(nu): {"got": got[nu - 1].to_text(), "expected": want[nu - 1].to_text()}
                   for nu in bad[:3]}
    return Report("invariants.restriction", {"type": kind, "n": n, "k": k},
                  verdict(not bad), details, witness)


def _even_in_each_variable(p: Poly) -> bool:
    return all(x % 2 == 0 for e in p.terms for x in e)


def check_surjectivity(kind: str, n: int, k: int) -> Report:
    params = {"type": kind, "n": n, "k": k}
    small = char_poly_family(kind, n)
    restricted = restrict_family(char_poly_family(kind, k), n)
    image = set(restricted)
    if kind != "D" or n == k:
        missing = [nu for nu, g in enumerate(small.generators, start=1) if g not in image]
        details = {"mode": "surjective", "missing_generators": missing}
        return Report("invariants.surjectivity", params, verdict(not missing), details)
    dim = small.nvars
    flips = [sign_flip(dim, i) for i in range(dim)]
    all_even = all(is_invariant(g, flips) for g in restricted)
    all_even_exponents = all(_even_in_each_variable(g) for g in restricted)
    pf = small.generator(1)
    pf_odd = pf.act(flips[0]) == -pf
    even_targets = [pf * pf] + list(small.generators[1:])
    missing = [i for i, g in enumerate(even_targets) if g not in image and -g not in image]
    ok = all_even and all_even_exponents and pf_odd and not missing
    details = {
        "mode": "pfaffian-excluded",
        "restricted_generators_even": all_even and all_even_exponents,
        "pfaffian_negated_by_sign_change": pf_odd,
        "pfaffian_excluded": all_even and pf_odd,
        "even_part_surjective": not missing,
    }
    return Report("invariants.surjectivity", params, verdict(ok), details)


def reynolds(group: WeylGroup, p: Poly) -> Poly:
    elems = group.elements()
    total = Poly.zero(p.nvars)
    for w in elems:
        total = total + p.act(w)
    return total.scale(Fraction(1, len(elems)))


def group_generators(group: WeylGroup) -> tuple[SignedPerm, ...]:
    return group.generators
