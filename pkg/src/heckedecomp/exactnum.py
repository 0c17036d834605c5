"""Exact arithmetic in cyclotomic number fields.

An element of Q(zeta_n) is stored as integer numerators on the power basis
``1, z, ..., z^(phi(n)-1)`` (reduced modulo the n-th cyclotomic polynomial)
over a single positive common denominator.  Arithmetic between elements of
different fields happens in the field generated by both; equality, hashing
and the public ``order``/``coeffs`` views always use the smallest field that
contains the number.  Orders congruent to 2 mod 4 never appear internally
because ``zeta_{2m} = -zeta_m^((m+1)/2)`` for odd ``m``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]


class IncompatibleOrderError(ValueError):
    """Raised when a number cannot be written in the requested field."""


# ---------------------------------------------------------------------------
# tables


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def normalize_order(n: int) -> int:
    """Order of the same field with the 2-mod-4 redundancy removed."""
    if n <= 0:
        raise ValueError(f"order must be positive, got {n}")
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_exact_div_int(num, list(cyclotomic_coefficients(d)))
    return tuple(num)


def _poly_exact_div_int(a: list[int], b: list[int]) -> list[int]:
    # b is monic
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        out[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the power-basis coordinates of z^e for 0 <= e < n."""
    phi = euler_phi(n)
    cyc = cyclotomic_coefficients(n)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for j in range(phi):
                nxt[j] -= top * cyc[j]
        cur = nxt
    return tuple(rows)


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce a coefficient list in z (any length) to the power basis."""
    phi = euler_phi(n)
    table = _power_table(n)
    out = [0] * phi
    for e, c in enumerate(vec):
        if not c:
            continue
        if e < phi:
            out[e] += c
        else:
            row = table[e % n]
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


@lru_cache(maxsize=None)
def _embedding(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Images of the basis of Q(zeta_m) inside Q(zeta_n) (m divides n)."""
    table = _power_table(n)
    step = n // m
    return tuple(table[(j * step) % n] for j in range(euler_phi(m)))


@lru_cache(maxsize=None)
def _descent(m: int, n: int):
    """Left inverse of the Q(zeta_m) -> Q(zeta_n) embedding.

    Returns (pivot rows, integer inverse matrix, denominator).
    """
    emb = _embedding(m, n)
    k = len(emb)
    rows_n = len(emb[0])
    # Gaussian elimination over Q on the phi(n) x phi(m) matrix, picking pivot rows
    mat = [[Fraction(emb[j][i]) for j in range(k)] for i in range(rows_n)]
    pivots: list[int] = []
    work = [row[:] for row in mat]
    basis_rows: list[list[Fraction]] = []
    for i in range(rows_n):
        v = work[i][:]
        for (pc, prow) in basis_rows:
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, prow)]
        pc = next((c for c in range(k) if v[c]), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [a * inv for a in v]
        basis_rows = [(c, [a - r[pc] * b for a, b in zip(r, v)]) for c, r in basis_rows]
        basis_rows.append((pc, v))
        pivots.append(i)
        if len(pivots) == k:
            break
    sq = [mat[i] for i in pivots]
    inv = _mat_inverse(sq)
    den = 1
    for row in inv:
        for x in row:
            den = math.lcm(den, x.denominator)
    inv_int = tuple(tuple(int(x * den) for x in row) for row in inv)
    return tuple(pivots), inv_int, den


def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    m = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        f = 1 / m[c][c]
        m[c] = [x * f for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                g = m[r][c]
                m[r] = [x - g * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _lift(num: tuple[int, ...], m: int, n: int) -> list[int]:
    if m == n:
        return list(num)
    out = [0] * euler_phi(n)
    for c, row in zip(num, _embedding(m, n)):
        if c:
            for j, r in enumerate(row):
                if r:
                    out[j] += c * r
    return out


# ---------------------------------------------------------------------------
# the number type


class Cyclotomic:
    """An exact element of some cyclotomic field."""

    __slots__ = ("_n", "_num", "_den", "_canon")

    def __init__(self, n: int, num, den: int = 1) -> None:
        # raw constructor: num is already reduced on the power basis of order n
        g = den
        for c in num:
            g = math.gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = [c // g for c in num]
            den //= g
        self._n = n
        self._num = tuple(num)
        self._den = den
        self._canon = None

    # constructors ---------------------------------------------------------

    @classmethod
    def from_rational(cls, x) -> "Cyclotomic":
        x = Fraction(x)
        return cls(1, [x.numerator], x.denominator)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "Cyclotomic":
        if n <= 0:
            raise ValueError(f"order must be positive, got {n}")
        k %= n
        sign = 1
        if n % 4 == 2:
            m = n // 2
            if k % 2:
                sign = -1
            k = (k * (m + 1) // 2) % m if m > 1 else 0
            # zeta_n^k = (-1)^k zeta_m^{k(m+1)/2}
            n = m
        vec = [0] * (k + 1)
        vec[k] = sign
        return cls(n, _reduce(vec, n))

    @classmethod
    def from_coeffs(cls, order: int, coeffs: dict) -> "Cyclotomic":
        """Build sum c_e zeta_order^e; exponents may be any integers."""
        total = ZERO
        for e, c in coeffs.items():
            c = Fraction(c)
            if c:
                total = total + cls.root_of_unity(order, int(e)) * c
        return total

    @staticmethod
    def coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.from_rational(x)
        raise TypeError(f"cannot interpret {x!r} as a cyclotomic number")

    # canonical form -------------------------------------------------------

    def _canonical(self) -> tuple[int, tuple[int, ...], int]:
        if self._canon is not None:
            return self._canon
        n, num, den = self._n, self._num, self._den
        if not any(num[1:]):
            self._canon = (1, (num[0] if num else 0,), den)
            return self._canon
        result = (n, num, den)
        for m in _divisors(n)[1:-1]:
            if m % 4 == 2:
                continue
            got = _try_descend(num, den, m, n)
            if got is not None:
                result = got
                break
        self._canon = result
        return result

    @property
    def order(self) -> int:
        """Smallest conductor of a cyclotomic field containing this number."""
        return self._canonical()[0]

    @property
    def coeffs(self) -> dict[int, Fraction]:
        """Nonzero power-basis coordinates in the minimal field."""
        _, num, den = self._canonical()
        return {e: Fraction(c, den) for e, c in enumerate(num) if c}

    def coeffs_in(self, n: int) -> dict[int, Fraction]:
        """Coordinates on the power basis of Q(zeta_n)."""
        m, num, den = self._canonical()
        n2 = normalize_order(n)
        if n2 % m:
            raise IncompatibleOrderError(f"order {m} number does not lie in Q(zeta_{n})")
        if n2 != n:
            raise IncompatibleOrderError(
                f"order {n} is not canonical; use {n2} for the same field"
            )
        return {e: Fraction(c, den) for e, c in enumerate(_lift(num, m, n)) if c}

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return self.order == 1

    def to_fraction(self) -> Fraction:
        m, num, den = self._canonical()
        if m != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(num[0], den)

    # arithmetic -----------------------------------------------------------

    def _common(self, other: "Cyclotomic"):
        n = math.lcm(self._n, other._n)
        return n, _lift(self._num, self._n, n), _lift(other._num, other._n, n)

    def __add__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        n, a, b = self._common(other)
        d1, d2 = self._den, other._den
        return Cyclotomic(n, [x * d2 + y * d1 for x, y in zip(a, b)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self._n, [-c for c in self._num], self._den)

    def __sub__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Cyclotomic.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self._n, [c * f.numerator for c in self._num], self._den * f.denominator)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other._n == 1:
            return self * Fraction(other._num[0], other._den)
        if self._n == 1:
            return other * Fraction(self._num[0], self._den)
        n, a, b = self._common(other)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(n, _reduce(prod, n), self._den * other._den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k; k must be a unit modulo the order."""
        n, num, den = self._canonical()
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        if n == 1:
            return self
        vec = [0] * n
        for e, c in enumerate(num):
            if c:
                vec[(e * k) % n] += c
        return Cyclotomic(n, _reduce(vec, n), den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm from the minimal field down to Q."""
        m, num, den = self._canonical()
        x = Cyclotomic(m, num, den)
        prod = ONE
        for k in range(1, m + 1):
            if math.gcd(k, m) == 1:
                prod = prod * x.galois(k)
        return prod.to_fraction()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        m, num, den = self._canonical()
        if m == 1:
            return Cyclotomic(1, [den], num[0])
        x = Cyclotomic(m, num, den)
        others = ONE
        for k in range(2, m + 1):
            if math.gcd(k, m) == 1:
                others = others * x.galois(k)
        nrm = (x * others).to_fraction()
        return others * (1 / nrm)

    def __truediv__(self, other):
        try:
            other = Cyclotomic.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            m, num, den = self._canonical()
            return m == 1 and Fraction(num[0], den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        m, num, den = self._canonical()
        if m == 1:
            return hash(Fraction(num[0], den))
        return hash((m, num, den))

    def __bool__(self):
        return not self.is_zero()

    # conversion -----------------------------------------------------------

    def to_complex(self) -> complex:
        m, num, den = self._canonical()
        total = 0j
        for e, c in enumerate(num):
            if c:
                total += c * cmath.exp(2j * math.pi * e / m)
        return total / den

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        m, num, den = self._canonical()
        if m == 1:
            return str(Fraction(num[0], den))
        parts = []
        for e, c in enumerate(num):
            if not c:
                continue
            f = Fraction(c, den)
            mono = "1" if e == 0 else (f"E({m})" if e == 1 else f"E({m})^{e}")
            if mono == "1":
                term = str(f)
            elif f == 1:
                term = mono
            elif f == -1:
                term = "-" + mono
            else:
                term = f"{f}*{mono}"
            parts.append(term)
        s = "+".join(parts)
        return s.replace("+-", "-")

    def to_json(self):
        m, num, den = self._canonical()
        if m == 1:
            return str(Fraction(num[0], den))
        return {
            "order": m,
            "coeffs": {str(e): str(Fraction(c, den)) for e, c in enumerate(num) if c},
        }

    @classmethod
    def from_json(cls, obj) -> "Cyclotomic":
        if isinstance(obj, Cyclotomic):
            return obj
        if isinstance(obj, bool):
            raise ValueError("boolean is not a number")
        if isinstance(obj, (int, str)):
            return cls.from_rational(Fraction(obj))
        if isinstance(obj, dict):
            if set(obj) != {"order", "coeffs"}:
                raise ValueError(f"cyclotomic object needs exactly order and coeffs: {obj!r}")
            order = obj["order"]
            if not isinstance(order, int) or order <= 0:
                raise ValueError(f"bad cyclotomic order {order!r}")
            return cls.from_coeffs(order, {int(e): Fraction(v) for e, v in obj["coeffs"].items()})
        raise ValueError(f"cannot decode cyclotomic number from {obj!r}")


def _try_descend(num, den, m: int, n: int):
    pivots, inv, inv_den = _descent(m, n)
    sub = [num[i] for i in pivots]
    y = [sum(a * b for a, b in zip(row, sub)) for row in inv]
    # y / inv_den are the candidate coordinates; verify the embedding reproduces num
    back = _lift(tuple(y), m, n)
    if any(b != c * inv_den for b, c in zip(back, num)):
        return None
    out = Cyclotomic(m, y, den * inv_den)
    return (out._n, out._num, out._den)


ZERO = Cyclotomic(1, [0], 1)
ONE = Cyclotomic(1, [1], 1)


def E(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity exp(2 pi i k / n)."""
    return Cyclotomic.root_of_unity(n, k)


def as_cyc(x) -> Cyclotomic:
    return Cyclotomic.coerce(x)


# ---------------------------------------------------------------------------
# roots of unity as exponent pairs


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """exp(2 pi i exponent / order), kept in lowest terms."""

    order: int
    exponent: int = 1

    def __post_init__(self):
        if self.order <= 0:
            raise ValueError(f"order must be positive, got {self.order}")
        n, k = self.order, self.exponent % self.order
        g = math.gcd(n, k) if k else n
        object.__setattr__(self, "order", n // g)
        object.__setattr__(self, "exponent", k // g)

    def value(self) -> Cyclotomic:
        return E(self.order, self.exponent)

    def __pow__(self, j: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * j)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        n = math.lcm(self.order, other.order)
        return RootOfUnity(n, self.exponent * (n // self.order) + other.exponent * (n // other.order))

    def __str__(self):
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        if self.exponent == 1:
            return f"zeta{self.order}"
        return f"zeta{self.order}^{self.exponent}"


# ---------------------------------------------------------------------------
# functional interface


_OP_NAMES = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


def cyc_arith(a, b, op: str) -> Cyclotomic:
    """Apply ``op`` ("add", "sub", "mul", "div" or the symbols) exactly."""
    a, b = as_cyc(a), as_cyc(b)
    op = _OP_NAMES.get(op, op)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def cyc_inv(a) -> Cyclotomic:
    return as_cyc(a).inverse()


def cyc_embed(a, target_order: int) -> Cyclotomic:
    """Re-express ``a`` inside Q(zeta_target_order) and re-canonicalize."""
    a = as_cyc(a)
    t = normalize_order(target_order)
    if t % a.order:
        raise IncompatibleOrderError(
            f"Q(zeta_{a.order}) is not contained in Q(zeta_{target_order})"
        )
    m, num, den = a._canonical()
    return Cyclotomic(t, _lift(num, m, t), den)


def cyc_to_float(a) -> complex:
    return as_cyc(a).to_complex()


def real_sign(x: Cyclotomic, start_prec: int = 53, max_prec: int = 4096) -> int:
    """Sign of a real cyclotomic number, decided with growing precision.

    Zero is detected exactly.  For nonzero values the evaluation is repeated
    with interval arithmetic until the enclosing interval excludes zero.
    """
    x = as_cyc(x)
    if x.is_zero():
        return 0
    if x != x.conjugate():
        raise ValueError(f"{x} is not real")
    m, num, den = x._canonical()
    if m == 1:
        return 1 if num[0] * den > 0 else -1
    from mpmath import iv

    saved = iv.prec
    prec = start_prec
    try:
        while prec <= max_prec:
            iv.prec = prec
            two_pi = 2 * iv.pi
            total = iv.mpf(0)
            for e, c in enumerate(num):
                if c:
                    total += c * iv.cos(two_pi * e / m)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    raise ArithmeticError(f"could not separate {x} from zero")
