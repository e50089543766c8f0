"""The truncated cyclic path coalgebra and its coquasi multiplication.

Basis paths p(i, l) live on the cyclic quiver with n vertices: source
vertex i in [0, n), length l in [0, d) where d is the multiplicative order
of the chosen root of unity q.  The product of two basis paths is a single
scaled basis path; products whose length reaches d are zero, and the
defining scalar itself vanishes there (see the truncation tests).

The root q is specified by its exponent k with q = zeta^k in Q(zeta_{n^2}),
subject to k = s (mod n); this makes "q is an n-th root of qq^s" a decidable
integer condition.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CycNumber, q_binomial, root_of_unity

__all__ = [
    "ParamError",
    "Params",
    "PathElement",
    "MajidElement",
    "validate_params",
    "valid_params",
    "coproduct",
    "counit",
    "counit_element",
    "coproduct_element",
    "path_mul",
    "majid_mul",
]


class ParamError(ValueError):
    """Raised when (n, s, k) do not describe a valid parameter set."""


@dataclass(frozen=True)
class Params:
    """Validated session parameters: group order n, twist s, q-exponent k, order d of q.

    Construct through :func:`validate_params`; shareable and immutable.
    """

    n: int
    s: int
    k: int
    d: int

    @property
    def field_order(self) -> int:
        """Order of the ambient cyclotomic field, n squared."""
        return self.n * self.n

    def zeta(self, exponent: int) -> CycNumber:
        """zeta^exponent in the ambient field."""
        return root_of_unity(self.field_order, exponent)

    @property
    def q(self) -> CycNumber:
        return self.zeta(self.k)

    @property
    def qq(self) -> CycNumber:
        """The fixed primitive n-th root of unity (zeta^n)."""
        return self.zeta(self.n)

    @property
    def hbar(self) -> CycNumber:
        """The base of the Gaussian binomials in the product formula: qq^-s * q^-1."""
        return self.zeta(-(self.n * self.s + self.k))

    def classes(self):
        """All nd basis class labels (i, l) in lexicographic order."""
        return [(i, l) for i in range(self.n) for l in range(self.d)]


def validate_params(n: int, s: int, k: int) -> Params:
    """Validate (n, s, k) and compute d as the exact multiplicative order of q."""
    if not isinstance(n, int) or n <= 1:
        raise ParamError(f"n must be an integer greater than 1, got {n!r}")
    if not isinstance(s, int) or not 0 <= s <= n - 1:
        raise ParamError(f"s must lie in [0, {n - 1}], got {s!r}")
    if not isinstance(k, int):
        raise ParamError(f"k must be an integer, got {k!r}")
    big_n = n * n
    k = k % big_n
    if k % n != s % n:
        raise ParamError(f"q-exponent k={k} is not congruent to s={s} modulo n={n}")
    d = big_n // gcd(k, big_n) if k else 1
    return Params(n=n, s=s, k=k, d=d)


def valid_params(n: int) -> list[Params]:
    """Every valid parameter set for a given n, ordered by (s, k)."""
    out = []
    for s in range(n):
        for k in range(s, n * n, n):
            out.append(validate_params(n, s, k))
    return out


@dataclass(frozen=True, order=True)
class PathElement:
    """The basis path of length l starting at vertex i."""

    i: int
    l: int

    def __repr__(self):
        return f"p({self.i},{self.l})"


def _check_path(p: PathElement, params: Params) -> None:
    if not 0 <= p.i < params.n:
        raise ValueError(f"path source {p.i} outside [0, {params.n})")
    if not 0 <= p.l < params.d:
        raise ValueError(f"path length {p.l} outside [0, {params.d})")


class MajidElement:
    """A finite linear combination of basis paths with cyclotomic coefficients.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for path, coeff in terms.items():
                if coeff:
                    clean[path] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "MajidElement":
        return cls()

    @classmethod
    def basis(cls, path: PathElement, params: Params) -> "MajidElement":
        _check_path(path, params)
        return cls({path: CycNumber.one(params.field_order)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MajidElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, MajidElement):
            return NotImplemented
        out = dict(self.terms)
        for path, coeff in other.terms.items():
            out[path] = out.get(path, 0) + coeff
        return MajidElement(out)

    def __sub__(self, other):
        if not isinstance(other, MajidElement):
            return NotImplemented
        out = dict(self.terms)
        for path, coeff in other.terms.items():
            out[path] = out.get(path, 0) - coeff
        return MajidElement(out)

    def __neg__(self):
        return MajidElement({p: -c for p, c in self.terms.items()})

    def scaled(self, factor) -> "MajidElement":
        return MajidElement({p: c * factor for p, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (item[0].i, item[0].l))

    def __repr__(self):
        if not self.terms:
            return "MajidElement(0)"
        bits = [f"{coeff!r}*{path!r}" for path, coeff in self.sorted_terms()]
        return "MajidElement(" + " + ".join(bits) + ")"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": path.i, "l": path.l, "coeff": coeff.to_strings()}
                for path, coeff in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict, params: Params) -> "MajidElement":
        terms = {}
        for item in data["terms"]:
            path = PathElement(int(item["i"]), int(item["l"]))
            _check_path(path, params)
            terms[path] = CycNumber.from_strings(params.field_order, item["coeff"])
        return cls(terms)


def coproduct(p: PathElement, params: Params) -> list[tuple[PathElement, PathElement]]:
    """Split a basis path into all (tail, head) pairs; every coefficient is one."""
    _check_path(p, params)
    n = params.n
    return [
        (PathElement((p.i + m) % n, p.l - m), PathElement(p.i, m))
        for m in range(p.l + 1)
    ]


def counit(p: PathElement) -> int:
    """One on vertices (length-zero paths), zero otherwise."""
    return 1 if p.l == 0 else 0


def counit_element(x: MajidElement, params: Params) -> CycNumber:
    """Linear extension of the counit to arbitrary elements."""
    total = CycNumber.zero(params.field_order)
    for path, coeff in x.terms.items():
        if path.l == 0:
            total = total + coeff
    return total


def coproduct_element(x: MajidElement, params: Params) -> dict:
    """Linear extension of the coproduct; keys are (tail, head) path pairs."""
    out: dict = {}
    for path, coeff in x.terms.items():
        for pair in coproduct(path, params):
            out[pair] = out.get(pair, 0) + coeff
    return {pair: c for pair, c in out.items() if c}


@functools.lru_cache(maxsize=1 << 20)
def _path_mul_cached(params: Params, i: int, l: int, j: int, m: int):
    """(target path, coefficient) for the product p(i,l) * p(j,m); None when zero."""
    n, s, k, d = params.n, params.s, params.k, params.d
    if l + m >= d:
        return None
    big_n = n * n
    bracket = m + j - (m + j) % n
    if bracket % n != 0:
        raise AssertionError("vertex residue bracket must be divisible by n")
    exponent = (-s * j * l * n) - (k * j * l) + s * (i + l % n) * bracket
    coeff = root_of_unity(big_n, exponent) * q_binomial(l + m, l, params.hbar)
    if not coeff:
        return None
    return PathElement((i + j) % n, l + m), coeff


def path_mul(a: PathElement, b: PathElement, params: Params) -> MajidElement:
    """Product of two basis paths: one scaled path of length l+m, or zero.

    Lengths at or beyond d give zero; the scalar in the defining formula
    vanishes in exactly those cases, so truncating loses nothing.
    """
    _check_path(a, params)
    _check_path(b, params)
    hit = _path_mul_cached(params, a.i, a.l, b.i, b.l)
    if hit is None:
        return MajidElement.zero()
    path, coeff = hit
    return MajidElement({path: coeff})


def raw_product_coeff(a: PathElement, b: PathElement, params: Params) -> CycNumber:
    """The defining scalar of the product, evaluated without the truncation cut.

    Used to confirm that truncation is invisible: for l+m >= d the scalar is
    exactly zero whenever both factors are admissible paths (l, m < d).
    """
    n, s, k = params.n, params.s, params.k
    i, l, j, m = a.i, a.l, b.i, b.l
    bracket = m + j - (m + j) % n
    exponent = (-s * j * l * n) - (k * j * l) + s * (i + l % n) * bracket
    return root_of_unity(n * n, exponent) * q_binomial(l + m, l, params.hbar)


def majid_mul(x: MajidElement, y: MajidElement, params: Params) -> MajidElement:
    """Bilinear extension of the basis-path product."""
    out: dict = {}
    for pa, ca in x.terms.items():
        for pb, cb in y.terms.items():
            hit = _path_mul_cached(params, pa.i, pa.l, pb.i, pb.l)
            if hit is None:
                continue
            path, coeff = hit
            out[path] = out.get(path, 0) + ca * cb * coeff
    return MajidElement(out)
