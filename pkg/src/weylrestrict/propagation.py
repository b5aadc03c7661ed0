"""Propagation pairs, the symmetric-space catalog, reduced root sets and class-one weights."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .linalg import solve
from .report import Report, verdict
from .rootsys import (
    TYPES, RootSystem, Vector, dot, quiet_build, unit, vadd, vscale,
)

CATALOG_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Embedding:
    """Small coordinates occupy the leading indices; the rest are zero."""

    small_dim: int
    large_dim: int
    traceless: bool = False

    def pad(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.small_dim:
            raise ValueError("vector has the wrong length for the small space")
        return tuple(Fraction(v) for v in x) + (Fraction(0),) * (self.large_dim - self.small_dim)

    def project(self, x: Sequence[Fraction]) -> Vector:
        """Orthogonal projection onto the small space (the restriction of a functional)."""
        head = tuple(Fraction(v) for v in x[: self.small_dim])
        if self.traceless:
            mean = sum(head, Fraction(0)) / self.small_dim
            head = tuple(v - mean for v in head)
        return head


@dataclass(frozen=True)
class PropagationPair:
    type: str
    small: RootSystem
    large: RootSystem
    embedding: Embedding

    @property
    def n(self) -> int:
        return self.small.rank

    @property
    def k(self) -> int:
        return self.large.rank


class PropagationError(ValueError):
    pass


def make_pair(kind: str, n: int, k: int) -> PropagationPair:
    if kind not in TYPES:
        raise PropagationError(f"unknown type {kind!r}")
    if n > k:
        raise PropagationError(f"small rank {n} exceeds large rank {k}")
    small, large = quiet_build(kind, n), quiet_build(kind, k)
    emb = Embedding(small.ambient_dim, large.ambient_dim, traceless=kind == "A")
    for j, a in enumerate(small.simple_roots):
        if emb.project(large.simple_roots[j]) != a:
            raise PropagationError(f"simple root {j + 1} of {large.label} does not restrict "
                                   f"to simple root {j + 1} of {small.label}")
    return PropagationPair(kind, small, large, emb)


# catalog

@dataclass(frozen=True)
class SymSpaceEntry:
    id: int
    label: str
    params: dict
    G_noncompact: str
    G_compact: str
    K: str
    rank: int
    dim: int
    sigma_half_type: str
    nonreduced: bool

    @property
    def sigma_two_type(self) -> str:
        # removing the halves of doubled roots turns a B diagram into C
        return "C" if self.nonreduced else self.sigma_half_type

    def to_dict(self) -> dict:
        return {
            "id": self.id, "label": self.label, "params": self.params,
            "G_noncompact": self.G_noncompact, "G_compact": self.G_compact, "K": self.K,
            "rank": self.rank, "dim": self.dim,
            "sigma_half_type": self.sigma_half_type, "sigma_two_type": self.sigma_two_type,
            "nonreduced": self.nonreduced,
        }


@lru_cache(maxsize=1)
def load_catalog() -> dict:
    text = resources.files(__package__).joinpath("data/catalog.json").read_text()
    data = json.loads(text)
    if data.get("version") != CATALOG_SCHEMA_VERSION:
        raise ValueError("unsupported catalog version")
    return data


def _eval_formula(expr: str, params: dict):
    # formulas come from the packaged resource; only min() and arithmetic are exposed
    if expr in TYPES:
        return expr
    return eval(compile(expr, "<catalog>", "eval"), {"__builtins__": {}, "min": min}, dict(params))


def catalog_rows() -> list[dict]:
    return load_catalog()["families"]


def catalog_lookup(family, **params) -> SymSpaceEntry:
    """Look a family up by id or label and evaluate its formulas at ``params``."""
    rows = catalog_rows()
    row = next((r for r in rows if family in (r["id"], r["label"], str(r["id"]))), None)
    if row is None:
        raise KeyError(f"unknown family {family!r}")
    missing = [p for p in row["params"] if p not in params]
    if missing:
        raise ValueError(f"family {row['label']} needs parameters {missing}")
    vals = {p: int(params[p]) for p in row["params"]}
    for key, lo in row["min"].items():
        value = vals["p"] + vals["q"] if key == "p+q" else vals[key]
        if value < lo:
            raise ValueError(f"{row['label']}: {key} must be at least {lo}")
    return SymSpaceEntry(
        id=row["id"], label=row["label"], params=vals,
        G_noncompact=row["G_noncompact"], G_compact=row["G_compact"], K=row["K"],
        rank=_eval_formula(row["rank"], vals), dim=_eval_formula(row["dim"], vals),
        sigma_half_type=_eval_formula(row["sigma_half_rule"], vals),
        nonreduced=bool(_eval_formula(row["nonreduced"], vals)),
    )


# reduced root sets

def bc_roots(rank: int) -> frozenset[Vector]:
    """The nonreduced system: B_r roots together with the doubled short roots."""
    b = quiet_build("B", rank).roots
    doubles = {unit(rank, i, c) for i in range(rank) for c in (2, -2)}
    return frozenset(b) | frozenset(doubles)


def sigma_two_roots(roots: Iterable[Sequence[Fraction]]) -> frozenset[Vector]:
    """Drop every root whose double is also a root."""
    rs = {tuple(Fraction(x) for x in r) for r in roots}
    return frozenset(r for r in rs if vscale(2, r) not in rs)


def sigma_half_roots(roots: Iterable[Sequence[Fraction]]) -> frozenset[Vector]:
    """Drop every root whose half is also a root."""
    rs = {tuple(Fraction(x) for x in r) for r in roots}
    return frozenset(r for r in rs if vscale(Fraction(1, 2), r) not in rs)


def identify(roots: Iterable[Sequence[Fraction]]) -> RootSystem:
    """The classical system whose root set (in these coordinates) equals ``roots``."""
    rs = frozenset(tuple(Fraction(x) for x in r) for r in roots)
    if not rs:
        raise ValueError("empty root set")
    dim = len(next(iter(rs)))
    for kind in TYPES:
        rank = dim - 1 if kind == "A" else dim
        if rank < 1 or (kind == "D" and rank < 2):
            continue
        cand = quiet_build(kind, rank)
        if frozenset(cand.roots) == rs:
            return cand
    raise ValueError("root set is not a classical system in standard coordinates")


def sigma_two(source) -> RootSystem:
    """Reduced system obtained by dropping halves of doubled roots.

    ``source`` is a RootSystem, an explicit root set, or a catalog entry.
    """
    if isinstance(source, SymSpaceEntry):
        return quiet_build(source.sigma_two_type, source.rank)
    if isinstance(source, RootSystem):
        return source
    return identify(sigma_two_roots(source))


# class-one weights

@dataclass(frozen=True)
class ClassOneWeights:
    rs: RootSystem
    xi: tuple[Vector, ...]

    def weight(self, coeffs: Sequence[int]) -> Vector:
        """The weight sum_j coeffs[j] * xi_{j+1}."""
        out = (Fraction(0),) * self.rs.ambient_dim
        for c, x in zip(coeffs, self.xi):
            out = vadd(out, vscale(c, x))
        return out

    def coefficients(self, mu: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
        """Coordinates of ``mu`` against the xi basis, or None if outside their span."""
        coeffs = tuple(dot(mu, a) / dot(a, a) for a in self.rs.simple_roots)
        return coeffs if self.weight(coeffs) == tuple(Fraction(m) for m in mu) else None

    def contains(self, mu: Sequence[Fraction]) -> bool:
        """Membership in the nonnegative integer span of the xi."""
        coeffs = self.coefficients(mu)
        return coeffs is not None and all(c.denominator == 1 and c >= 0 for c in coeffs)


@lru_cache(maxsize=None)
def _class_one(rs: RootSystem) -> ClassOneWeights:
    simple = rs.simple_roots
    gram = [[dot(a, b) for b in simple] for a in simple]
    xi = []
    for i in range(rs.rank):
        rhs = [gram[j][j] if j == i else Fraction(0) for j in range(rs.rank)]
        # xi_i = sum_l c_l alpha_l with <xi_i, alpha_j> = delta_ij <alpha_j, alpha_j>
        c = solve(gram, rhs)
        v = (Fraction(0),) * rs.ambient_dim
        for cl, a in zip(c, simple):
            v = vadd(v, vscale(cl, a))
        xi.append(v)
    return ClassOneWeights(rs, tuple(xi))


def class_one_weights(rs: RootSystem) -> ClassOneWeights:
    return _class_one(rs)


def check_class_one_system(rs: RootSystem) -> Report:
    w = class_one_weights(rs)
    delta_ok = all(dot(x, a) / dot(a, a) == (1 if i == j else 0)
                   for i, x in enumerate(w.xi) for j, a in enumerate(rs.simple_roots))
    bad = []
    for i, x in enumerate(w.xi, start=1):
        for a in rs.positive_roots:
            q = dot(x, a) / dot(a, a)
            if q.denominator != 1 or q < 0:
                bad.append({"xi": i, "root": [str(t) for t in a], "ratio": str(q)})
    ok = delta_ok and not bad
    return Report("xi.system", {"type": rs.type, "rank": rs.rank}, verdict(ok),
                  {"delta_system": delta_ok, "integrality_failures": len(bad)},
                  bad[:3] or None)


def check_xi_restriction(pair: PropagationPair) -> Report:
    small = class_one_weights(pair.small).xi
    large = class_one_weights(pair.large).xi
    projected = [pair.embedding.project(x) for x in large]
    failures = []
    for j, target in enumerate(small):
        hits = [i for i, p in enumerate(projected) if p == target]
        if hits != [j]:
            failures.append({"j": j + 1, "restricting_indices": [i + 1 for i in hits]})
    params = {"type": pair.type, "n": pair.n, "k": pair.k}
    return Report("xi.restriction", params, verdict(not failures),
                  {"checked": len(small)}, failures or None)
