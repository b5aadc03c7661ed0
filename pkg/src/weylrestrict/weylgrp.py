"""Weyl groups of classical type as signed permutation groups.

An element acts by ``(w x)_i = signs[i] * x[perm^{-1}(i)]``, so it sends the
basis vector ``e_j`` to ``signs[perm[j]] * e_{perm[j]}``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import rank as matrix_rank, solve
from .report import Report, verdict
from .rootsys import RootSystem, Vector, dot, quiet_build, vscale, vsub

ENUMERATION_CAP = 10 ** 7


class CapExceeded(RuntimeError):
    pass


class SignedPerm:
    __slots__ = ("perm", "signs", "_key")

    def __init__(self, perm: Sequence[int], signs: Sequence[int] | None = None):
        self.perm = tuple(perm)
        self.signs = tuple(signs) if signs is not None else (1,) * len(self.perm)
        self._key = (self.perm, self.signs)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(range(n))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedPerm) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "SignedPerm") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"SignedPerm(perm={list(self.perm)}, signs={list(self.signs)})"

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        p, s = self.perm, self.signs
        inv = self.inverse_perm()
        perm = tuple(p[j] for j in other.perm)
        signs = tuple(s[i] * other.signs[inv[i]] for i in range(len(p)))
        return SignedPerm(perm, signs)

    def inverse_perm(self) -> list[int]:
        inv = [0] * len(self.perm)
        for j, i in enumerate(self.perm):
            inv[i] = j
        return inv

    def inverse(self) -> "SignedPerm":
        inv = self.inverse_perm()
        # w^{-1} sends e_i to signs[i] e_{inv[i]}
        signs = [0] * len(self.perm)
        for i in range(len(self.perm)):
            signs[inv[i]] = self.signs[i]
        return SignedPerm(inv, signs)

    def apply(self, x: Sequence) -> tuple:
        inv = self.inverse_perm()
        return tuple(self.signs[i] * x[inv[i]] for i in range(len(x)))

    def det(self) -> int:
        return permutation_sign(self.perm) * math.prod(self.signs)

    def sign_product(self) -> int:
        return math.prod(self.signs)

    def matrix(self) -> list[list[Fraction]]:
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for j, i in enumerate(self.perm):
            m[i][j] = Fraction(self.signs[i])
        return m

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "signs": list(self.signs)}


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def reflection(rs: RootSystem, alpha: Sequence[Fraction]) -> SignedPerm:
    """The reflection in the hyperplane orthogonal to the root ``alpha``."""
    alpha = tuple(Fraction(a) for a in alpha)
    if not rs.is_root(alpha):
        raise ValueError(f"{[str(a) for a in alpha]} is not a root of {rs.label}")
    n = rs.ambient_dim
    scale = Fraction(2) / dot(alpha, alpha)
    perm = [0] * n
    signs = [1] * n
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        img = vsub(e, vscale(scale * alpha[j], alpha))
        support = [i for i, v in enumerate(img) if v]
        if len(support) != 1 or abs(img[support[0]]) != 1:
            raise ValueError("reflection is not a signed permutation")
        perm[j] = support[0]
        signs[support[0]] = int(img[support[0]])
    return SignedPerm(perm, signs)


def sign_flip(dim: int, i: int = 0) -> SignedPerm:
    return SignedPerm(range(dim), [-1 if j == i else 1 for j in range(dim)])


def predicted_order(kind: str, n: int, extended: bool = False) -> int:
    if kind == "A":
        return math.factorial(n + 1)
    if kind == "D" and not extended:
        return 2 ** (n - 1) * math.factorial(n)
    return 2 ** n * math.factorial(n)


class WeylGroup:
    """W or (for type D) the extension allowing all sign changes."""

    def __init__(self, rs: RootSystem, extended: bool = False):
        self.rs = rs
        self.extended = extended
        gens = [reflection(rs, a) for a in rs.simple_roots]
        if extended and rs.type == "D":
            gens.append(sign_flip(rs.ambient_dim))
        self.generators = tuple(gens)

    @property
    def order(self) -> int:
        return predicted_order(self.rs.type, self.rs.rank, self.extended)

    def elements(self, cap: int = ENUMERATION_CAP) -> frozenset[SignedPerm]:
        if self.order > cap:
            raise CapExceeded(f"group of predicted order {self.order} exceeds the cap {cap}")
        return _enumerate(self.rs.type, self.rs.rank, self.extended)

    def sorted_elements(self) -> list[SignedPerm]:
        return sorted(self.elements())

    def contains(self, w: SignedPerm) -> bool:
        """Membership by structure, without enumeration."""
        if w.dim != self.rs.ambient_dim:
            return False
        kind = self.rs.type
        if kind == "A":
            return all(s == 1 for s in w.signs)
        if kind == "D" and not self.extended:
            return w.sign_product() == 1
        return True

    def random_element(self, rng: random.Random) -> SignedPerm:
        n = self.rs.ambient_dim
        perm = list(range(n))
        rng.shuffle(perm)
        if self.rs.type == "A":
            return SignedPerm(perm)
        signs = [rng.choice((1, -1)) for _ in range(n)]
        if self.rs.type == "D" and not self.extended and math.prod(signs) == -1:
            signs[0] = -signs[0]
        return SignedPerm(perm, signs)


@lru_cache(maxsize=64)
def _enumerate(kind: str, rank: int, extended: bool) -> frozenset[SignedPerm]:
    gens = WeylGroup(quiet_build(kind, rank), extended).generators
    ident = SignedPerm.identity(gens[0].dim)
    seen = {ident}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for g in gens:
            v = g * w
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def weyl_group(kind: str, rank: int, extended: bool = False) -> WeylGroup:
    return WeylGroup(quiet_build(kind, rank), extended)


def product_formula_elements(kind: str, n: int, extended: bool = False) -> frozenset[SignedPerm]:
    """Direct construction as (signed) permutations, independent of generators."""
    from itertools import permutations, product

    dim = n + 1 if kind == "A" else n
    out = set()
    for perm in permutations(range(dim)):
        if kind == "A":
            out.add(SignedPerm(perm))
            continue
        for signs in product((1, -1), repeat=dim):
            if kind == "D" and not extended and math.prod(signs) != 1:
                continue
            out.add(SignedPerm(perm, signs))
    return frozenset(out)


def _restrict(w: SignedPerm, m: int) -> SignedPerm | None:
    """Restriction to the leading ``m`` coordinates, or None if not stabilized."""
    if any(w.perm[j] >= m for j in range(m)):
        return None
    return SignedPerm(w.perm[:m], w.signs[:m])


def stabilizer_restriction(elements: Iterable[SignedPerm], small_dim: int):
    """Stabilizer of the leading coordinate block and its restriction to it.

    For type A the small Cartan subspace is the sum-zero part of that block,
    which signed permutations (all signs +1) preserve exactly when they
    preserve the block.
    """
    sub = []
    restricted = set()
    for w in elements:
        r = _restrict(w, small_dim)
        if r is not None:
            sub.append(w)
            restricted.add(r)
    kernel = len(sub) // len(restricted)
    return frozenset(sub), frozenset(restricted), kernel


def check_weyl_restriction(kind: str, n: int, k: int) -> Report:
    params = {"type": kind, "n": n, "k": k}
    if n > k:
        raise ValueError("need n <= k")
    small = weyl_group(kind, n)
    large = weyl_group(kind, k)
    small_dim = small.rs.ambient_dim
    sub, restricted, kernel = stabilizer_restriction(large.elements(), small_dim)
    details = {
        "subgroup_order": len(sub),
        "restricted_order": len(restricted),
        "kernel_order": kernel,
        "small_order": small.order,
    }
    small_elems = small.elements()
    if kind != "D" or n == k:
        ok = restricted == small_elems and kernel * len(restricted) == len(sub)
        details["relation"] = "equal" if restricted == small_elems else "different"
        details["expected"] = small.order
        witness = None if ok else [w.to_json() for w in sorted(restricted ^ small_elems)[:3]]
        return Report("weyl", params, verdict(ok), details, witness)
    ext_small = weyl_group(kind, n, extended=True).elements()
    ext_large = weyl_group(kind, k, extended=True).elements()
    _, ext_restricted, _ = stabilizer_restriction(ext_large, small_dim)
    strict = small_elems < restricted
    index = len(restricted) // len(small_elems)
    ok = (strict and index == 2 and restricted == ext_small and ext_restricted == ext_small)
    details.update({
        "relation": "strict" if strict else "not strict",
        "index": index,
        "expected": 2 * small.order,
        "extended_small_order": len(ext_small),
        "extended_restriction_equal": ext_restricted == ext_small,
    })
    return Report("weyl", params, verdict(ok), details)


def _span_contains(basis: Sequence[Vector], v: Sequence[Fraction]) -> bool:
    return matrix_rank(list(basis) + [list(v)]) == matrix_rank(basis)


def _coords_in(basis: Sequence[Vector], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    gram = [[dot(a, b) for b in basis] for a in basis]
    return tuple(solve(gram, [dot(v, a) for a in basis]))


def _matrix_on(basis: Sequence[Vector], w: SignedPerm) -> tuple[tuple[Fraction, ...], ...]:
    # columns are the images of the basis vectors, stored row-major for hashing
    cols = [_coords_in(basis, w.apply(b)) for b in basis]
    return tuple(tuple(c[i] for c in cols) for i in range(len(basis)))


def _matmul(a, b):
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(len(b))), Fraction(0))
                       for j in range(len(b[0]))) for i in range(len(a)))


def _generated(gens) -> set:
    n = len(gens[0])
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _matmul(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def subdiagram_stabilizer(kind: str, rank: int, keep: Sequence[int]) -> dict:
    """Stabilizer of the span of a subset of simple roots, restricted to that span.

    ``keep`` lists 1-based simple-root indices.  Returns the restricted group
    and the Weyl group of the sub-root system generated by the kept simple
    roots, both as matrices in the basis of kept simple roots.
    """
    group = weyl_group(kind, rank)
    basis = [group.rs.simple_roots[j - 1] for j in keep]
    sub = [w for w in group.elements() if all(_span_contains(basis, w.apply(b)) for b in basis)]
    restricted = {_matrix_on(basis, w) for w in sub}
    factor = _generated([_matrix_on(basis, reflection(group.rs, b)) for b in basis])
    n = len(basis)
    minus_id = tuple(tuple(Fraction(-1 if i == j else 0) for j in range(n)) for i in range(n))
    return {
        "subgroup_order": len(sub),
        "restricted": restricted,
        "factor_group": factor,
        "minus_identity_in_restricted": minus_id in restricted,
        "minus_identity_in_factor": minus_id in factor,
    }


def check_interior_removal(kind: str = "B", rank: int = 3, removed: int = 1) -> Report:
    """Removing a simple root so that the remainder is not a left-end extension.

    The conclusion "restriction equals the small Weyl group" is expected to
    fail; the report passes when that failure is detected.
    """
    keep = [j for j in range(1, rank + 1) if j != removed]
    data = subdiagram_stabilizer(kind, rank, keep)
    restricted, factor = data["restricted"], data["factor_group"]
    conclusion_holds = restricted == factor
    detected = factor < restricted
    details = {
        "removed_simple_root": removed,
        "kept_simple_roots": keep,
        "subgroup_order": data["subgroup_order"],
        "restricted_order": len(restricted),
        "factor_weyl_order": len(factor),
        "minus_identity_in_restricted": data["minus_identity_in_restricted"],
        "minus_identity_in_factor": data["minus_identity_in_factor"],
        "conclusion_holds": conclusion_holds,
    }
    return Report("negative", {"type": kind, "rank": rank, "removed": removed},
                  verdict(detected and not conclusion_holds), details)
