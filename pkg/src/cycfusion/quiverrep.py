"""Nilpotent cyclic-quiver representations over a cyclotomic field.

A representation assigns a vector space to each of the n vertices and an
exact matrix to each arrow i -> i+1.  String modules V(i, e) give all the
indecomposables; tensor products are built from the comodule structure, and
an independent linear-algebra oracle recovers the multiplicity of every
string module from ranks of iterated arrow maps.

Rank computations clear denominators and run a fraction-free Gaussian
elimination over Z[zeta]: rows are combined by cross-multiplication, never
divided, so every intermediate value stays exact.  Row scalings by nonzero
integers and by roots of unity preserve rank, which keeps the arithmetic in
small integer vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cyclotomic import CycNumber, euler_phi, zeta_power_table
from .majid import Params, PathElement, _path_mul_cached

__all__ = [
    "NotNilpotent",
    "IndecompClass",
    "Decomposition",
    "QuiverRep",
    "Coaction",
    "standard_indecomposable",
    "coaction_indecomposable",
    "tensor_coaction",
    "tensor_rep",
    "decompose_oracle",
    "kernel_dims",
    "direct_sum",
]


class NotNilpotent(ValueError):
    """Raised when some composite of d consecutive arrow maps is nonzero."""


@dataclass(frozen=True, order=True)
class IndecompClass:
    """Label (i, e) of the string module with top vertex i and length e."""

    i: int
    e: int

    def normalized(self, n: int) -> "IndecompClass":
        return IndecompClass(self.i % n, self.e)

    def dim(self) -> int:
        return self.e + 1

    def __repr__(self):
        return f"V({self.i},{self.e})"


def _check_class(c: IndecompClass, params: Params) -> IndecompClass:
    c = c.normalized(params.n)
    if not 0 <= c.e < params.d:
        raise ValueError(f"string length {c.e} outside [0, {params.d})")
    return c


class Decomposition:
    """A multiset of string-module classes with positive multiplicities."""

    __slots__ = ("multiplicities",)

    def __init__(self, multiplicities=None):
        clean = {}
        if multiplicities:
            for cls, mult in multiplicities.items():
                if mult < 0:
                    raise ValueError(f"negative multiplicity for {cls}")
                if mult:
                    clean[cls] = int(mult)
        self.multiplicities = clean

    @classmethod
    def single(cls, c: IndecompClass) -> "Decomposition":
        return cls({c: 1})

    def total_dim(self) -> int:
        return sum(mult * c.dim() for c, mult in self.multiplicities.items())

    def counts_by_vertex(self, n: int) -> list[int]:
        """Number of summands with each top vertex."""
        out = [0] * n
        for c, mult in self.multiplicities.items():
            out[c.i % n] += mult
        return out

    def sorted_items(self):
        return sorted(self.multiplicities.items())

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.multiplicities == other.multiplicities

    def __add__(self, other):
        out = dict(self.multiplicities)
        for c, mult in other.multiplicities.items():
            out[c] = out.get(c, 0) + mult
        return Decomposition(out)

    def __bool__(self):
        return bool(self.multiplicities)

    def __iter__(self):
        return iter(self.sorted_items())

    def __repr__(self):
        if not self.multiplicities:
            return "0"
        bits = []
        for c, mult in self.sorted_items():
            bits.append(repr(c) if mult == 1 else f"{mult}*{c!r}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "summands": [
                {"i": c.i, "e": c.e, "mult": mult} for c, mult in self.sorted_items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        return cls(
            {
                IndecompClass(int(t["i"]), int(t["e"])): int(t["mult"])
                for t in data["summands"]
            }
        )


class QuiverRep:
    """A representation of the cyclic quiver: dims per vertex plus arrow matrices.

    maps[i] has shape dims[(i+1) % n] x dims[i]; entries are CycNumber.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "dims", "maps", "field_order")

    def __init__(self, n: int, dims, maps, field_order: int | None = None):
        dims = tuple(int(x) for x in dims)
        if len(dims) != n:
            raise ValueError(f"expected {n} dimensions, got {len(dims)}")
        if any(x < 0 for x in dims):
            raise ValueError("dimensions must be nonnegative")
        maps = tuple(tuple(tuple(row) for row in mat) for mat in maps)
        if len(maps) != n:
            raise ValueError(f"expected {n} arrow matrices, got {len(maps)}")
        order = field_order
        for i, mat in enumerate(maps):
            rows, cols = dims[(i + 1) % n], dims[i]
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError(f"arrow matrix {i} must be {rows} x {cols}")
            for row in mat:
                for entry in row:
                    if not isinstance(entry, CycNumber):
                        raise TypeError("matrix entries must be CycNumber")
                    if order is None:
                        order = entry.order
                    elif entry.order != order:
                        raise ValueError("mixed cyclotomic orders in matrices")
        self.n = n
        self.dims = dims
        self.maps = maps
        self.field_order = order if order is not None else n * n

    @classmethod
    def zero(cls, n: int, field_order: int | None = None) -> "QuiverRep":
        return cls(n, (0,) * n, ((),) * n, field_order or n * n)

    def total_dim(self) -> int:
        return sum(self.dims)

    def __eq__(self, other):
        if not isinstance(other, QuiverRep):
            return NotImplemented
        return self.n == other.n and self.dims == other.dims and self.maps == other.maps

    def __repr__(self):
        return f"QuiverRep(n={self.n}, dims={list(self.dims)})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "maps": [
                [[entry.to_strings() for entry in row] for row in mat]
                for mat in self.maps
            ],
        }

    @classmethod
    def from_json(cls, data: dict, field_order: int) -> "QuiverRep":
        maps = [
            [
                [CycNumber.from_strings(field_order, entry) for entry in row]
                for row in mat
            ]
            for mat in data["maps"]
        ]
        return cls(int(data["n"]), data["dims"], maps, field_order)


class Coaction:
    """A comodule structure on an explicit basis.

    images[u] lists the terms of delta(basis[u]) as (target index, path,
    coefficient) triples; vertex[u] is the quiver vertex carrying basis[u].
    """

    __slots__ = ("params", "basis", "vertex", "images")

    def __init__(self, params: Params, basis, vertex, images):
        self.params = params
        self.basis = tuple(basis)
        self.vertex = tuple(vertex)
        self.images = tuple(tuple(terms) for terms in images)

    def dim(self) -> int:
        return len(self.basis)

    def dims_by_vertex(self) -> list[int]:
        out = [0] * self.params.n
        for v in self.vertex:
            out[v] += 1
        return out


def standard_indecomposable(c: IndecompClass, params: Params) -> QuiverRep:
    """The string module V(i, e): basis v_0..v_e, v_m at vertex (i+m)', shift action."""
    c = _check_class(c, params)
    n, order = params.n, params.field_order
    i, e = c.i, c.e
    dims = [0] * n
    for m in range(e + 1):
        dims[(i + m) % n] += 1
    zero, one = CycNumber.zero(order), CycNumber.one(order)
    mats = []
    for v in range(n):
        mats.append(
            [[zero for _ in range(dims[v])] for _ in range(dims[(v + 1) % n])]
        )
    # v_m sits at position m // n inside its vertex space
    for m in range(e):
        v = (i + m) % n
        mats[v][(m + 1) // n][m // n] = one
    return QuiverRep(n, dims, mats, order)


def coaction_indecomposable(c: IndecompClass, params: Params) -> Coaction:
    """Comodule structure of V(i, e): delta(v_m) = sum_x v_x (x) p((i+m)', x-m)."""
    c = _check_class(c, params)
    n = params.n
    one = CycNumber.one(params.field_order)
    i, e = c.i, c.e
    basis = list(range(e + 1))
    vertex = [(i + m) % n for m in range(e + 1)]
    images = []
    for m in range(e + 1):
        images.append(
            [(x, PathElement((i + m) % n, x - m), one) for x in range(m, e + 1)]
        )
    return Coaction(params, basis, vertex, images)


def tensor_coaction(
    a: IndecompClass,
    b: IndecompClass,
    params: Params,
    max_length: int | None = None,
) -> Coaction:
    """Comodule structure on V(i,e) (x) V(j,f).

    The coefficient of v_x (x) v_y in delta(v_a (x) v_b) is the structure
    constant of the path product p((i+a)', x-a) * p((j+b)', y-b); it vanishes
    whenever x+y-a-b >= d.  max_length keeps only terms whose path length is
    at most the given bound (used to read off the arrow matrices).
    """
    a = _check_class(a, params)
    b = _check_class(b, params)
    n, d = params.n, params.d
    i, e = a.i, a.e
    j, f = b.i, b.e
    width = f + 1
    basis = [(x, y) for x in range(e + 1) for y in range(f + 1)]
    vertex = [(i + x + j + y) % n for x, y in basis]
    cap = d - 1 if max_length is None else min(max_length, d - 1)
    images = []
    for aa in range(e + 1):
        for bb in range(f + 1):
            terms = []
            src_a = (i + aa) % n
            src_b = (j + bb) % n
            for x in range(aa, min(e, aa + cap) + 1):
                for y in range(bb, min(f, bb + cap) + 1):
                    if x + y - aa - bb > cap:
                        continue
                    hit = _path_mul_cached(params, src_a, x - aa, src_b, y - bb)
                    if hit is None:
                        continue
                    path, coeff = hit
                    terms.append((x * width + y, path, coeff))
            images.append(terms)
    return Coaction(params, basis, vertex, images)


def tensor_rep(a: IndecompClass, b: IndecompClass, params: Params) -> QuiverRep:
    """The tensor product V(i,e) (x) V(j,f) as a quiver representation.

    Arrow matrices are read off the length-one part of the tensor coaction.
    """
    co = tensor_coaction(a, b, params, max_length=1)
    n, order = params.n, params.field_order
    dims = co.dims_by_vertex()
    position = []
    counters = [0] * n
    for v in co.vertex:
        position.append(counters[v])
        counters[v] += 1
    zero = CycNumber.zero(order)
    mats = [
        [[zero for _ in range(dims[v])] for _ in range(dims[(v + 1) % n])]
        for v in range(n)
    ]
    for u, terms in enumerate(co.images):
        w = co.vertex[u]
        for tgt, path, coeff in terms:
            if path.l != 1:
                continue
            if co.vertex[tgt] != (w + 1) % n:
                raise AssertionError("length-one coaction term leaves the next vertex")
            mats[w][position[tgt]][position[u]] = coeff
    return QuiverRep(n, dims, mats, order)


def direct_sum(r1: QuiverRep, r2: QuiverRep) -> QuiverRep:
    """Block-diagonal direct sum."""
    if r1.n != r2.n:
        raise ValueError(f"vertex counts differ: {r1.n} != {r2.n}")
    if r1.field_order != r2.field_order:
        raise ValueError("field orders differ")
    n = r1.n
    dims = tuple(x + y for x, y in zip(r1.dims, r2.dims))
    zero = CycNumber.zero(r1.field_order)
    mats = []
    for v in range(n):
        rows, cols = dims[(v + 1) % n], dims[v]
        r1rows, r1cols = r1.dims[(v + 1) % n], r1.dims[v]
        mat = [[zero for _ in range(cols)] for _ in range(rows)]
        for r, row in enumerate(r1.maps[v]):
            for c, entry in enumerate(row):
                mat[r][c] = entry
        for r, row in enumerate(r2.maps[v]):
            for c, entry in enumerate(row):
                mat[r1rows + r][r1cols + c] = entry
        mats.append(mat)
    return QuiverRep(n, dims, mats, r1.field_order)


# -- exact rank engine ------------------------------------------------------
#
# Field elements are carried as length-N integer vectors in the power basis
# zeta^0..zeta^(N-1) with zeta^N = 1, so multiplication is cyclic convolution
# and multiplication by a root of unity is a rotation.  The representation is
# redundant (the cyclotomic relation is not applied eagerly); zero tests fold
# the high powers onto the canonical basis through the integer power table.


def _classify_entry(vec):
    nz = [(t, u) for t, u in enumerate(vec) if u]
    if not nz:
        return None
    if len(nz) == 1:
        t, u = nz[0]
        if t == 0:
            return ("s", u)
        return ("m", t, u)
    return ("g", vec)


def _int_arrow_columns(rep: QuiverRep):
    """Sparse column form of every arrow matrix with denominators cleared."""
    order = rep.field_order
    cols_by_vertex = []
    for mat in rep.maps:
        denominators = [
            coeff.denominator if isinstance(coeff, Fraction) else 1
            for row in mat
            for entry in row
            for coeff in entry.coeffs
        ]
        scale = lcm(*denominators) if denominators else 1
        cols: dict = {}
        for r, row in enumerate(mat):
            for c, entry in enumerate(row):
                if not entry:
                    continue
                vec = [0] * order
                for t, coeff in enumerate(entry.coeffs):
                    if coeff:
                        scaled = coeff * scale
                        vec[t] = int(scaled)
                kind = _classify_entry(vec)
                cols.setdefault(c, []).append((r, kind))
        cols_by_vertex.append(cols)
    return cols_by_vertex


def _apply_kind(kind, elem, order):
    tag = kind[0]
    if tag == "s":
        u = kind[1]
        return elem if u == 1 else [u * t for t in elem]
    if tag == "m":
        _, t, u = kind
        rotated = elem[order - t :] + elem[: order - t]
        return rotated if u == 1 else [u * x for x in rotated]
    return _conv(kind[1], elem, order)


def _conv(a, b, order):
    out = [0] * order
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    idx = i + j
                    if idx >= order:
                        idx -= order
                    out[idx] += ai * bj
    return out


def _elem_mul(a, b, order):
    kind = _classify_entry(a)
    if kind is None:
        return [0] * order
    if kind[0] == "g":
        alt = _classify_entry(b)
        if alt is not None and alt[0] != "g":
            return _apply_kind(alt, a, order)
        return _conv(a, b, order)
    return _apply_kind(kind, b, order)


def _elem_is_zero(elem, phi, fold):
    low = list(elem[:phi])
    for j in range(phi, len(elem)):
        c = elem[j]
        if c:
            row = fold[j]
            for i in range(phi):
                if row[i]:
                    low[i] += c * row[i]
    return not any(low)


def _content_reduce(vec):
    g = 0
    for elem in vec.values():
        for t in elem:
            if t:
                g = gcd(g, t)
                if g == 1:
                    return
    if g > 1:
        for col, elem in vec.items():
            vec[col] = [t // g for t in elem]


def _combine(vec, c, prow, pscal, pelem, order):
    """Return pscal_or_pelem * vec - c * prow, pruned of raw zero entries."""
    out = {}
    if pscal is not None:
        if pscal == 1:
            out = {col: list(elem) for col, elem in vec.items()}
        else:
            out = {col: [pscal * t for t in elem] for col, elem in vec.items()}
    else:
        out = {col: _conv(pelem, elem, order) for col, elem in vec.items()}
    for col, elem in prow.items():
        ce = _elem_mul(c, elem, order)
        cur = out.get(col)
        if cur is None:
            out[col] = [-t for t in ce]
        else:
            out[col] = [x - y for x, y in zip(cur, ce)]
    out = {col: elem for col, elem in out.items() if any(elem)}
    _content_reduce(out)
    return out


def _normalize_pivot(vec, lead, order):
    """Scale a fresh pivot row by a unit so its lead entry is a plain integer."""
    _content_reduce(vec)
    elem = vec[lead]
    nz = [(t, u) for t, u in enumerate(elem) if u]
    if len(nz) != 1:
        return None
    t, u = nz[0]
    if t:
        # rotate every entry by zeta^-t so the lead entry becomes an integer
        for col, e in vec.items():
            vec[col] = e[t:] + e[:t]
        u = vec[lead][0]
    if u < 0:
        for col, e in vec.items():
            vec[col] = [-x for x in e]
        u = -u
    return u


def _echelon_insert(pivots, vec, order, phi, fold):
    """Reduce vec against pivots; install it as a new pivot if independent."""
    while True:
        lead = None
        for col in sorted(vec):
            if _elem_is_zero(vec[col], phi, fold):
                del vec[col]
            else:
                lead = col
                break
        if lead is None:
            return False
        hit = pivots.get(lead)
        if hit is None:
            pscal = _normalize_pivot(vec, lead, order)
            pivots[lead] = (vec, pscal, vec[lead])
            return True
        prow, pscal, pelem = hit
        vec = _combine(vec, vec[lead], prow, pscal, pelem, order)


def _unit_elem(order):
    e = [0] * order
    e[0] = 1
    return e


def _rank_profile(rep: QuiverRep, d: int):
    """ranks[v][l] = rank of the length-l arrow composite starting at vertex v.

    Computed for 0 <= l <= d by iterating echelonized images; raises
    NotNilpotent when some composite of length d is nonzero.
    """
    n, order = rep.n, rep.field_order
    phi = euler_phi(order)
    fold = zeta_power_table(order)
    cols_by_vertex = _int_arrow_columns(rep)
    ranks = [[0] * (d + 1) for _ in range(n)]
    for v in range(n):
        ranks[v][0] = rep.dims[v]
        basis = [{c: _unit_elem(order)} for c in range(rep.dims[v])]
        cur = v
        for l in range(1, d + 1):
            arrows = cols_by_vertex[cur]
            pivots: dict = {}
            for vec in basis:
                img: dict = {}
                for col, elem in vec.items():
                    for row, kind in arrows.get(col, ()):
                        contrib = _apply_kind(kind, elem, order)
                        cur_elem = img.get(row)
                        if cur_elem is None:
                            img[row] = contrib
                        else:
                            img[row] = [x + y for x, y in zip(cur_elem, contrib)]
                img = {row: e for row, e in img.items() if any(e)}
                if img:
                    _echelon_insert(pivots, img, order, phi, fold)
            ranks[v][l] = len(pivots)
            basis = [row for _, (row, _, _) in sorted(pivots.items())]
            cur = (cur + 1) % n
            if not basis:
                break
        if ranks[v][d]:
            raise NotNilpotent(
                f"composite of {d} arrows starting at vertex {v} has rank {ranks[v][d]}"
            )
    return ranks


def decompose_oracle(rep: QuiverRep, params: Params) -> Decomposition:
    """Exact multiplicity of every string module in a nilpotent representation.

    Multiplicities come from rank telescoping: the count of strings with top
    vertex i and length e is
    r(i,e) - r(i,e+1) - r(i-1,e+1) + r(i-1,e+2), with r(v,l) the rank of the
    length-l composite starting at v and r(v,0) the vertex dimension.
    """
    d = params.d
    ranks = _rank_profile(rep, d)

    def r(v, l):
        if l > d:
            return 0
        return ranks[v % rep.n][l]

    mults = {}
    for i in range(rep.n):
        prev = (i - 1) % rep.n
        for e in range(d):
            m = r(i, e) - r(i, e + 1) - r(prev, e + 1) + r(prev, e + 2)
            if m < 0:
                raise AssertionError(f"rank telescoping gave {m} at V({i},{e})")
            if m:
                mults[IndecompClass(i, e)] = m
    dec = Decomposition(mults)
    if dec.total_dim() != rep.total_dim():
        raise AssertionError("decomposition does not account for the full dimension")
    return dec


def kernel_dims(rep: QuiverRep) -> list[int]:
    """Exact dimension of the kernel of each arrow map."""
    order = rep.field_order
    phi = euler_phi(order)
    fold = zeta_power_table(order)
    cols_by_vertex = _int_arrow_columns(rep)
    out = []
    for v in range(rep.n):
        pivots: dict = {}
        cols = cols_by_vertex[v]
        for c in range(rep.dims[v]):
            entries = cols.get(c)
            if not entries:
                continue
            vec = {}
            for row, kind in entries:
                vec[row] = _apply_kind(kind, _unit_elem(order), order)
            _echelon_insert(pivots, vec, order, phi, fold)
        out.append(rep.dims[v] - len(pivots))
    return out
