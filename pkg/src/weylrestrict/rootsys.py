"""Classical root systems A_n, B_n, C_n, D_n in reversed-basis coordinates.

Coordinate index ``i`` (0-based) is the coefficient of ``f_{i+1}``; ``f_1`` is
the basis vector attached to the right end of the Dynkin diagram, where the
first simple root sits.  Rank grows by adding simple roots on the left, i.e.
new coordinates are appended at the end of the vector.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import solve
from .polyring import Poly

Vector = tuple[Fraction, ...]

TYPES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
PERMISSIVE_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}


class RankError(ValueError):
    pass


def vec(values: Sequence) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def vadd(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence[Fraction]) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def unit(dim: int, i: int, c=1) -> Vector:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(dim))


def fmt_vector(v: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in v]


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    rho: Vector
    metric_scale: Fraction
    permissive: bool = False
    _root_set: frozenset = field(default=frozenset(), repr=False, compare=False)

    @property
    def roots(self) -> tuple[Vector, ...]:
        return self.positive_roots + tuple(vscale(-1, a) for a in self.positive_roots)

    @property
    def label(self) -> str:
        return f"{self.type}{self.rank}"

    def is_root(self, v: Sequence[Fraction]) -> bool:
        return tuple(v) in self._root_set

    def traceless(self, v: Sequence[Fraction]) -> bool:
        """Sum-zero test; only meaningful (and only required) for type A."""
        return sum(v, Fraction(0)) == 0

    def simple_coords(self, v: Sequence[Fraction]) -> Vector:
        """Coefficients of ``v`` in the simple roots; ``v`` must lie in their span."""
        gram = [[dot(a, b) for b in self.simple_roots] for a in self.simple_roots]
        rhs = [dot(v, a) for a in self.simple_roots]
        coeffs = tuple(solve(gram, rhs))
        back = [sum((c * a[i] for c, a in zip(coeffs, self.simple_roots)), Fraction(0))
                for i in range(self.ambient_dim)]
        if tuple(back) != tuple(v):
            raise ValueError(f"{fmt_vector(v)} is not in the span of the simple roots")
        return coeffs

    def height(self, v: Sequence[Fraction]) -> Fraction:
        return sum(self.simple_coords(v), Fraction(0))

    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=self.height)

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "metric_scale": str(self.metric_scale),
            "roots": [fmt_vector(r) for r in sorted(self.roots)],
            "simple_roots": [fmt_vector(r) for r in self.simple_roots],
            "rho": fmt_vector(self.rho),
            "marks": highest_root_marks(self),
        }


def _positive_roots(kind: str, n: int, dim: int) -> list[Vector]:
    def f(i, c=1):
        return unit(dim, i, c)

    out: list[Vector] = []
    if kind == "A":
        for i in range(dim):
            for j in range(i):
                out.append(vsub(f(i), f(j)))
        return out
    for i in range(n):
        for j in range(i):
            out.append(vsub(f(i), f(j)))
            out.append(vadd(f(i), f(j)))
        if kind == "B":
            out.append(f(i))
        elif kind == "C":
            out.append(f(i, 2))
    return out


def _simple_roots(kind: str, n: int, dim: int) -> list[Vector]:
    first = {
        "A": vsub(unit(dim, 1), unit(dim, 0)) if dim > 1 else None,
        "B": unit(dim, 0),
        "C": unit(dim, 0, 2),
        "D": vadd(unit(dim, 0), unit(dim, 1)),
    }[kind]
    simple = [first]
    for j in range(1, n):
        # the remaining simple roots are f_{j+1} - f_j, shifted by one in type A
        i = j + 1 if kind == "A" else j
        simple.append(vsub(unit(dim, i), unit(dim, i - 1)))
    return simple


def build(kind: str, rank: int, permissive: bool = False) -> RootSystem:
    """Construct the classical root system of the given type and rank."""
    if kind not in TYPES:
        raise RankError(f"unknown classical type {kind!r}")
    lo = PERMISSIVE_MIN_RANK[kind] if permissive else MIN_RANK[kind]
    if rank < lo:
        raise RankError(f"{kind}{rank} is below the minimum rank {lo}"
                        + ("" if permissive else " (use permissive=True for small ranks)"))
    if rank < MIN_RANK[kind]:
        warnings.warn(f"building {kind}{rank} below the standard minimum rank", stacklevel=2)
    return _construct(kind, rank)


@lru_cache(maxsize=None)
def _construct(kind: str, rank: int) -> RootSystem:
    dim = rank + 1 if kind == "A" else rank
    pos = _positive_roots(kind, rank, dim)
    rho_sum = [Fraction(0)] * dim
    for a in pos:
        rho_sum = vadd(rho_sum, a)
    rho = vscale(Fraction(1, 2), rho_sum)
    roots = frozenset(pos) | frozenset(vscale(-1, a) for a in pos)
    return RootSystem(
        type=kind,
        rank=rank,
        ambient_dim=dim,
        simple_roots=tuple(_simple_roots(kind, rank, dim)),
        positive_roots=tuple(sorted(pos)),
        rho=rho,
        metric_scale=Fraction(1 if kind == "A" else 2),
        permissive=rank < MIN_RANK[kind],
        _root_set=roots,
    )


def quiet_build(kind: str, rank: int) -> RootSystem:
    """``build`` with permissive small ranks and no warning (for internal oracles)."""
    if kind not in TYPES or rank < PERMISSIVE_MIN_RANK[kind]:
        return build(kind, rank, permissive=True)
    return _construct(kind, rank)


def expected_root_count(kind: str, n: int) -> int:
    return {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1)}[kind]


def varpi(rs: RootSystem) -> Poly:
    """Product over positive roots of the pairing with ``lambda``."""
    p = Poly.const(rs.ambient_dim, 1)
    for a in rs.positive_roots:
        p = p * Poly.linear(a)
    return p


def varpi_at(rs: RootSystem, lam: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for a in rs.positive_roots:
        out *= dot(lam, a)
    return out


def coroot(alpha: Sequence[Fraction]) -> Vector:
    return vscale(Fraction(2) / dot(alpha, alpha), alpha)


def coroot_lengths(rs: RootSystem) -> list[tuple[int, Fraction]]:
    """Squared realization-metric length of each simple coroot, 1-based index."""
    out = []
    for j, a in enumerate(rs.simple_roots, start=1):
        t = coroot(a)
        out.append((j, rs.metric_scale * dot(t, t)))
    return out


def highest_root_marks(rs: RootSystem) -> list[int]:
    coeffs = rs.simple_coords(rs.highest_root())
    return [int(c) for c in coeffs]


def diagram_marks(kind: str, n: int) -> list[int]:
    """Labels of the highest root read off the Dynkin diagrams, simple roots in order."""
    if kind == "A":
        return [1] * n
    if kind == "B":
        return [2] * (n - 1) + [1]
    if kind == "C":
        return [1] + [2] * (n - 1)
    return [1, 1] + [2] * (n - 3) + [1]
