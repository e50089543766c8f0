"""Exact arithmetic in cyclotomic fields and q-combinatorics at roots of unity.

Elements of Q(zeta_N) are held in canonical form: a coefficient vector of
length phi(N) representing a residue modulo the N-th cyclotomic polynomial,
with arbitrary-precision rational coefficients.  Equality is therefore
decidable and all field laws hold exactly.

Gaussian binomials are computed by the division-free q-Pascal recursion.
The factorial quotient degenerates to 0/0 at roots of unity in exactly the
cases this library needs, so it is never used.
"""

from __future__ import annotations

import functools
import threading
from fractions import Fraction
from math import gcd

__all__ = [
    "CycNumber",
    "QBinomTable",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "q_integer",
    "q_factorial",
    "q_binomial",
]


def _exact_monic_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide num by the monic integer polynomial den; division must be exact."""
    num = list(num)
    dn = len(den) - 1
    qn = len(num) - 1 - dn
    quot = [0] * (qn + 1)
    for i in range(qn, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[int, ...]:
    """Integer coefficients of the order-th cyclotomic polynomial, constant first."""
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    if order == 1:
        return (-1, 1)
    num = [0] * (order + 1)
    num[0], num[order] = -1, 1
    quot = num
    for dd in range(1, order):
        if order % dd == 0:
            quot = _exact_monic_div(quot, cyclotomic_polynomial(dd))
    return tuple(quot)


def euler_phi(order: int) -> int:
    """Euler totient, read off as the degree of the cyclotomic polynomial."""
    return len(cyclotomic_polynomial(order)) - 1


@functools.lru_cache(maxsize=None)
def zeta_power_table(order: int) -> tuple[tuple[int, ...], ...]:
    """Canonical integer coefficient vectors of zeta^j for 0 <= j <= 2*order."""
    phi = euler_phi(order)
    mod = cyclotomic_polynomial(order)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(2 * order + 1):
        rows.append(tuple(cur))
        top = cur[phi - 1]
        nxt = [0] + cur[: phi - 1]
        if top:
            for i in range(phi):
                nxt[i] -= top * mod[i]
        cur = nxt
    return tuple(rows)


class CycNumber:
    """An element of the cyclotomic field Q(zeta_order), in canonical form.

    Values are immutable; every operation returns a fresh element.  Scalars
    (int, Fraction) mix freely with elements of any order.  Elements of two
    different orders never mix in arithmetic.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"need {euler_phi(order)} coefficients for order {order}, got {len(coeffs)}"
            )
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "CycNumber":
        return cls(order, (0,) * euler_phi(order))

    @classmethod
    def one(cls, order: int) -> "CycNumber":
        return cls.of(order, 1)

    @classmethod
    def of(cls, order: int, value) -> "CycNumber":
        """Embed a rational scalar."""
        if isinstance(value, CycNumber):
            if value.order != order:
                raise ValueError("order mismatch")
            return value
        rest = (0,) * (euler_phi(order) - 1)
        return cls(order, (_as_rational(value),) + rest)

    # -- ring structure -------------------------------------------------

    def _pair(self, other):
        """Bring self and other into one ambient field, or return None.

        Elements of distinct orders only mix when one of them is rational,
        in which case it embeds canonically into the other field.
        """
        if isinstance(other, (int, Fraction)):
            return self, CycNumber.of(self.order, other)
        if not isinstance(other, CycNumber):
            return None
        if other.order == self.order:
            return self, other
        if other.is_rational():
            return self, CycNumber.of(self.order, other.coeffs[0])
        if self.is_rational():
            return CycNumber.of(other.order, self.coeffs[0]), other
        raise ValueError(f"cannot mix cyclotomic orders {self.order} and {other.order}")

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNumber(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __neg__(self):
        return CycNumber(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.order, tuple(a * other for a in self.coeffs))
        if not isinstance(other, CycNumber):
            return NotImplemented
        if other.order != self.order:
            a, b = self._pair(other)
            return a * b
        phi = len(self.coeffs)
        prod = [0] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        table = zeta_power_table(self.order)
        out = prod[:phi]
        for j in range(phi, 2 * phi - 1):
            c = prod[j]
            if c:
                row = table[j]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return CycNumber(self.order, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return CycNumber(self.order, tuple(Fraction(a) / other for a in self.coeffs))
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = CycNumber.one(self.order)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse, by the extended Euclidean algorithm."""
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = mod, [Fraction(c) for c in self.coeffs]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _pdeg(r1) > 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        const = r1[0] if r1 else Fraction(0)
        if const == 0:
            # cannot happen: cyclotomic polynomials are irreducible over Q
            raise ZeroDivisionError("element is a zero divisor")
        phi = len(self.coeffs)
        inv = [c / const for c in s1]
        inv += [Fraction(0)] * (phi - len(inv))
        return CycNumber(self.order, tuple(inv[:phi]))

    # -- predicates and comparisons --------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return _as_rational(self.coeffs[0])

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            # distinct ambient fields compare canonically only through Q
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return False
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def multiplicative_order(self) -> int:
        """Exact multiplicative order; raises if the element is not a root of unity."""
        if not self:
            raise ValueError("zero is not a root of unity")
        power = self
        one = CycNumber.one(self.order)
        for m in range(1, 2 * self.order + 1):
            if power == one:
                return m
            power = power * self
        raise ValueError("element is not a root of unity")

    # -- serialization ----------------------------------------------------

    def to_strings(self) -> list[str]:
        """Coefficients as 'p/q' strings, suitable for JSON transport."""
        return [str(_as_rational(c)) for c in self.coeffs]

    @classmethod
    def from_strings(cls, order: int, strings) -> "CycNumber":
        return cls(order, tuple(Fraction(s) for s in strings))

    def __repr__(self):
        return f"CycNumber({self.order}, {[str(c) for c in self.coeffs]})"


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# -- polynomial helpers over Fraction lists (low degree first) ------------


def _pdeg(p):
    d = len(p) - 1
    while d >= 0 and p[d] == 0:
        d -= 1
    return d


def _pdivmod(a, b):
    db = _pdeg(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    da = _pdeg(rem)
    if da < db:
        return [Fraction(0)], rem
    quot = [Fraction(0)] * (da - db + 1)
    lead = b[db]
    for i in range(da - db, -1, -1):
        c = rem[i + db] / lead
        quot[i] = c
        if c:
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
    return quot, rem


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _psub(a, b):
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for j, bj in enumerate(b):
        out[j] -= bj
    return out


# -- public constructors and q-combinatorics -------------------------------


def root_of_unity(order: int, k: int) -> CycNumber:
    """The canonical representative of zeta_order^k (k taken modulo order)."""
    table = zeta_power_table(order)
    return CycNumber(order, table[k % order])


def q_integer(m: int, hbar):
    """The q-integer 1 + hbar + ... + hbar^(m-1); empty sum for m = 0."""
    if m < 0:
        raise ValueError("q-integer index must be nonnegative")
    total = hbar * 0
    power = hbar ** 0
    for _ in range(m):
        total = total + power
        power = power * hbar
    return total


def q_factorial(m: int, hbar):
    """The q-factorial 1_hbar * 2_hbar * ... * m_hbar."""
    if m < 0:
        raise ValueError("q-factorial index must be nonnegative")
    total = hbar ** 0
    for j in range(1, m + 1):
        total = total * q_integer(j, hbar)
    return total


class QBinomTable:
    """Triangular table of Gaussian binomials at a fixed hbar.

    Rows are grown on demand by the q-Pascal identity
    binom(m, k) = binom(m-1, k-1) + hbar^k * binom(m-1, k),
    which involves no division and is therefore valid at roots of unity.
    Growth is guarded by a lock so tables may be shared between threads.
    """

    def __init__(self, hbar):
        self.hbar = hbar
        one = hbar ** 0
        self._rows = [[one]]
        self._hpowers = [one]
        self._lock = threading.Lock()

    def value(self, m: int, k: int):
        if k < 0 or k > m:
            raise ValueError(f"binomial index out of range: ({m}, {k})")
        if m >= len(self._rows):
            with self._lock:
                self._grow(m)
        return self._rows[m][k]

    def _grow(self, m):
        while len(self._hpowers) <= m:
            self._hpowers.append(self._hpowers[-1] * self.hbar)
        while len(self._rows) <= m:
            prev = self._rows[-1]
            mm = len(self._rows)
            row = [prev[0]]
            for k in range(1, mm):
                row.append(prev[k - 1] + self._hpowers[k] * prev[k])
            row.append(prev[mm - 1])
            self._rows.append(row)


_binom_tables: dict = {}
_binom_lock = threading.Lock()


def q_binomial(m: int, k: int, hbar):
    """Gaussian binomial binom(m, k) at hbar, via the q-Pascal recursion."""
    if k < 0 or k > m:
        raise ValueError(f"binomial index out of range: ({m}, {k})")
    try:
        table = _binom_tables[hbar]
    except KeyError:
        with _binom_lock:
            table = _binom_tables.setdefault(hbar, QBinomTable(hbar))
    return table.value(m, k)
