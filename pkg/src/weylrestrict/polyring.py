"""Exact sparse multivariate (Laurent) polynomials over the rationals.

A :class:`Poly` is an immutable map from integer exponent vectors to nonzero
:class:`fractions.Fraction` coefficients.  Variables are indexed from 0, and
variable ``i`` is printed as ``x{i+1}``.  Negative exponents are allowed only
when the polynomial carries the ``laurent`` flag.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyError(ValueError):
    """Base class for polynomial arithmetic errors."""


class DimensionError(PolyError):
    pass


class PoleError(PolyError):
    pass


class NotDivisibleError(PolyError):
    pass


class SingularError(PolyError):
    pass


def _frac(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "laurent", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None,
                 laurent: bool = False):
        self.nvars = nvars
        self.laurent = laurent
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if not laurent and any(x < 0 for x in e):
                raise PolyError(f"negative exponent {e} in a non-Laurent polynomial")
            if c:
                clean[tuple(e)] = _frac(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction], laurent: bool) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.laurent = laurent
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int, laurent: bool = False) -> "Poly":
        return cls._raw(nvars, {}, laurent)

    @classmethod
    def const(cls, nvars: int, c: Scalar, laurent: bool = False) -> "Poly":
        c = _frac(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {}, laurent)

    @classmethod
    def var(cls, nvars: int, i: int, laurent: bool = False) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)}, laurent)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1, laurent: bool = False) -> "Poly":
        return cls(len(exps), {tuple(exps): coeff}, laurent)

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar], const: Scalar = 0) -> "Poly":
        """The linear form ``sum coeffs[i] * x_i + const``."""
        n = len(coeffs)
        terms: dict[Exponent, Fraction] = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = _frac(c)
        if const:
            terms[(0,) * n] = _frac(const)
        return cls._raw(n, terms, False)

    # basic protocol

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise DimensionError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.laurent != other.laurent:
            raise DimensionError("cannot mix Laurent and ordinary polynomials")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other, self.laurent)
        return NotImplemented

    # arithmetic

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out, self.laurent)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()}, self.laurent)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = _frac(c)
        if not c:
            return Poly.zero(self.nvars, self.laurent)
        return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()}, self.laurent)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c}, self.laurent)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PolyError("negative power")
        result = Poly.const(self.nvars, 1, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exps: Sequence[int], c: Scalar = 1) -> "Poly":
        c = _frac(c)
        out = {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self._terms.items()}
        laurent = self.laurent or any(x < 0 for e in out for x in e)
        return Poly._raw(self.nvars, out if c else {}, laurent)

    # evaluation and substitution

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("point has wrong length")
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    if k < 0:
                        if not v:
                            raise PoleError("evaluation at a pole")
                        term /= v ** (-k)
                    else:
                        term *= v ** k
            total += term
        return total

    def substitute(self, assignment: Mapping[int, "Poly | Scalar"]) -> "Poly":
        """Replace variables by polynomials (or scalars) in the same variable set."""
        subs: dict[int, Poly] = {}
        for i, v in assignment.items():
            if isinstance(v, Poly):
                if v.nvars != self.nvars:
                    raise DimensionError("substituted polynomial has wrong variable count")
                if v.laurent:
                    raise PolyError("substituted values must be ordinary polynomials")
                subs[i] = v
            else:
                subs[i] = Poly.const(self.nvars, v)
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in powers:
                powers[key] = subs[i] ** k
            return powers[key]

        acc: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            kept = list(e)
            factor = None
            for i in subs:
                k = e[i]
                if k == 0:
                    continue
                if k < 0:
                    if subs[i].is_zero():
                        raise PoleError(f"substituting 0 for x{i + 1} with exponent {k}")
                    raise PolyError("substitution into negative powers is not supported")
                kept[i] = 0
                pw = power(i, k)
                factor = pw if factor is None else factor * pw
            if factor is None:
                ke = tuple(kept)
                acc[ke] = acc.get(ke, 0) + c
                continue
            for fe, fc in factor._terms.items():
                ke = tuple(a + b for a, b in zip(kept, fe))
                acc[ke] = acc.get(ke, 0) + c * fc
        return Poly._raw(self.nvars, {e: c for e, c in acc.items() if c}, self.laurent)

    def shift(self, v: Sequence[Scalar]) -> "Poly":
        """The polynomial ``x -> p(x + v)``."""
        if len(v) != self.nvars:
            raise DimensionError("shift vector has wrong length")
        if not self._terms:
            return self
        # integer numerators over one common denominator; Fraction only at the end
        denom = 1
        for c in self._terms.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        terms = {e: int(c * denom) for e, c in self._terms.items()}
        for i, c in enumerate(v):
            c = _frac(c)
            if not c:
                continue
            a, b = c.numerator, c.denominator
            top = max(e[i] for e in terms)
            if min(e[i] for e in terms) < 0:
                raise PolyError("shifting a negative power is not supported")
            apow = [a ** t for t in range(top + 1)]
            bpow = [b ** t for t in range(top + 1)]
            out: dict[Exponent, int] = {}
            get = out.get
            for e, coef in terms.items():
                k = e[i]
                head, tail = e[:i], e[i + 1:]
                for j in range(k + 1):
                    ne = head + (j,) + tail
                    out[ne] = get(ne, 0) + coef * comb(k, j) * apow[k - j] * bpow[top - k + j]
            terms = {e: x for e, x in out.items() if x}
            denom *= bpow[top]
        return Poly._raw(self.nvars, {e: Fraction(x, denom) for e, x in terms.items()}, self.laurent)

    def restrict_leading(self, m: int) -> "Poly":
        """Set variables ``m..nvars-1`` to zero and drop them."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            if any(e[m:]):
                if any(x < 0 for x in e[m:]):
                    raise PoleError("restriction through a negative exponent")
                continue
            out[e[:m]] = c
        return Poly._raw(m, out, self.laurent)

    def pad_vars(self, n: int) -> "Poly":
        """View the polynomial as one in ``n >= nvars`` variables."""
        extra = (0,) * (n - self.nvars)
        return Poly._raw(n, {e + extra: c for e, c in self._terms.items()}, self.laurent)

    # linear action

    def act(self, g) -> "Poly":
        """Return ``g . p`` where ``(g . p)(x) = p(g^{-1} x)``.

        ``g`` is either a signed permutation (anything with ``perm`` and
        ``signs``) or a square rational matrix given as nested sequences.
        """
        if hasattr(g, "perm") and hasattr(g, "signs"):
            return self._act_signed(g.perm, g.signs)
        return self._act_matrix(g)

    def _act_signed(self, perm: Sequence[int], signs: Sequence[int]) -> "Poly":
        # g x has (g x)_{perm[j]} = signs[perm[j]] x_j, so p(g^{-1} x) sends
        # x_j^k to (signs[perm[j]] x_{perm[j]})^k.
        n = self.nvars
        if len(perm) != n:
            raise DimensionError("group element dimension differs from variable count")
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            ne = [0] * n
            sgn = 1
            for j, k in enumerate(e):
                if k:
                    t = perm[j]
                    ne[t] = k
                    if signs[t] < 0 and k & 1:
                        sgn = -sgn
            out[tuple(ne)] = c if sgn > 0 else -c
        return Poly._raw(n, out, self.laurent)

    def _act_matrix(self, mat) -> "Poly":
        from .linalg import inverse
        n = self.nvars
        if len(mat) != n or any(len(r) != n for r in mat):
            raise DimensionError("matrix dimension differs from variable count")
        try:
            inv = inverse(mat)
        except ZeroDivisionError as exc:
            raise SingularError("matrix is not invertible") from exc
        if self.laurent:
            raise PolyError("matrix action on Laurent polynomials is not supported")
        return self.substitute({i: Poly.linear(inv[i]) for i in range(n)})

    # division

    def exact_divide(self, den: "Poly") -> "Poly":
        """Return ``q`` with ``q * den == self``; raise NotDivisibleError otherwise."""
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly.zero(self.nvars, self.laurent)
        if self.laurent:
            return self._laurent_divide(den)
        return _long_divide(self, den)

    def _laurent_divide(self, den: "Poly") -> "Poly":
        n = self.nvars
        lo_num = [min(e[i] for e in self._terms) for i in range(n)]
        lo_den = [min(e[i] for e in den._terms) for i in range(n)]
        a = Poly._raw(n, {tuple(x - m for x, m in zip(e, lo_num)): c
                          for e, c in self._terms.items()}, False)
        b = Poly._raw(n, {tuple(x - m for x, m in zip(e, lo_den)): c
                          for e, c in den._terms.items()}, False)
        q = _long_divide(a, b)
        shift = [x - y for x, y in zip(lo_num, lo_den)]
        return Poly._raw(n, {tuple(x + s for x, s in zip(e, shift)): c
                             for e, c in q._terms.items()}, True)

    # serialization

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = " ".join(f"x{i + 1}^{k}" if k != 1 else f"x{i + 1}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{c} * {mono}" if mono else f"{c}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in self.items()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable, laurent: bool = False) -> "Poly":
        return cls(nvars, {tuple(e): Fraction(c) for e, c in data}, laurent)


def _long_divide(num: Poly, den: Poly) -> Poly:
    """Multivariate exact division under lex order (ordinary polynomials)."""
    n = num.nvars
    rem = dict(num._terms)
    dterms = list(den._terms.items())
    lead_e, lead_c = max(dterms)
    rest = [(e, c) for e, c in dterms if e != lead_e]
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, Fraction] = {}
    while heap:
        key = heapq.heappop(heap)
        e = tuple(-x for x in key)
        c = rem.pop(e, None)
        if not c:
            continue
        qe = tuple(a - b for a, b in zip(e, lead_e))
        if any(x < 0 for x in qe):
            raise NotDivisibleError("nonzero remainder in exact division")
        qc = c / lead_c
        quot[qe] = qc
        for de, dc in rest:
            te = tuple(a + b for a, b in zip(qe, de))
            v = rem.get(te)
            if v is None:
                rem[te] = -qc * dc
                heapq.heappush(heap, tuple(-x for x in te))
            else:
                v -= qc * dc
                if v:
                    rem[te] = v
                else:
                    del rem[te]
    return Poly._raw(n, quot, False)


def variables(n: int) -> list[Poly]:
    return [Poly.var(n, i) for i in range(n)]


def elementary_symmetric(xs: Sequence[Poly], j: int) -> Poly:
    """``e_j(xs)`` by the recurrence on the generating polynomial."""
    n = xs[0].nvars if xs else 0
    e = [Poly.const(n, 1)] + [Poly.zero(n) for _ in range(j)]
    for x in xs:
        for i in range(j, 0, -1):
            e[i] = e[i] + e[i - 1] * x
    return e[j]
