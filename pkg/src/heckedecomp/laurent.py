"""Laurent polynomials in one variable with cyclotomic coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactnum import ONE, ZERO, Cyclotomic, RootOfUnity, as_cyc

VARIABLES = ("q", "y")


class VariableMismatchError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """Division left a remainder; the quotient and remainder are attached."""

    def __init__(self, quotient: "LaurentPoly", remainder: "LaurentPoly"):
        super().__init__(f"inexact division, remainder {remainder}")
        self.quotient = quotient
        self.remainder = remainder


class LaurentPoly:
    """Finite sum of c_e * var^e with e in Z and nonzero cyclotomic c_e.

    Instances are treated as immutable.
    """

    __slots__ = ("var", "_terms")

    def __init__(self, var: str = "q", terms: dict | None = None) -> None:
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}")
        self.var = var
        clean: dict[int, Cyclotomic] = {}
        for e, c in (terms or {}).items():
            c = as_cyc(c)
            if not c.is_zero():
                clean[int(e)] = c
        self._terms = clean

    @classmethod
    def const(cls, c, var: str = "q") -> "LaurentPoly":
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, e: int, c=1, var: str = "q") -> "LaurentPoly":
        return cls(var, {e: c})

    @classmethod
    def from_list(cls, coeffs: Iterable, shift: int = 0, var: str = "q") -> "LaurentPoly":
        """Coefficients listed from degree ``shift`` upwards."""
        return cls(var, {shift + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, Cyclotomic]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, e: int) -> Cyclotomic:
        return self._terms.get(e, ZERO)

    def valuation(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("valuation of the zero polynomial")
        return min(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero polynomial")
        return max(self._terms)

    def leading_coeff(self) -> Cyclotomic:
        return self._terms[self.degree()]

    def lowest_coeff(self) -> Cyclotomic:
        return self._terms[self.valuation()]

    # arithmetic -----------------------------------------------------------

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def _coerce(self, other) -> tuple["LaurentPoly", str]:
        """Other operand as a polynomial, plus the variable of the result.

        Constants carry no variable, so they combine with either ring.
        """
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.var, {0: as_cyc(other)}), self.var
        if other.var == self.var or other.is_constant():
            return other, self.var
        if self.is_constant():
            return other, other.var
        raise VariableMismatchError(f"cannot combine polynomials in {self.var} and {other.var}")

    def __add__(self, other):
        try:
            o, var = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(var, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o, _ = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = as_cyc(other)
            return LaurentPoly(self.var, {e: a * c for e, a in self._terms.items()})
        try:
            o, var = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Cyclotomic] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return LaurentPoly(var, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly(self.var, {e * k: c ** k})
        result = LaurentPoly(self.var, {0: ONE})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self * as_cyc(other).inverse()
        return exact_div(self, other)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if self.is_constant() and other.is_constant():
                return self._terms == other._terms
            return self.var == other.var and self._terms == other._terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self._terms == LaurentPoly(self.var, {0: other})._terms
        return NotImplemented

    def __hash__(self):
        key = frozenset(self._terms.items())
        return hash(key) if self.is_constant() else hash((self.var, key))

    # evaluation -----------------------------------------------------------

    def __call__(self, at):
        return evaluate(self, at)

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Replace var by new_var^k (e.g. q -> y^mu)."""
        return LaurentPoly(var or self.var, {e * k: c for e, c in self._terms.items()})

    def galois(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.var, {e: c.galois(k) for e, c in self._terms.items()})

    # output ---------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif c.is_rational():
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return "+".join(parts).replace("+-", "-")

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "terms": {str(e): self._terms[e].to_json() for e in sorted(self._terms)},
        }

    @classmethod
    def from_json(cls, obj, default_var: str = "q") -> "LaurentPoly":
        """Decode a term dictionary, a factored form, or a bare scalar constant."""
        if isinstance(obj, LaurentPoly):
            return obj
        if isinstance(obj, (int, str)) or (isinstance(obj, dict) and "order" in obj):
            return cls(default_var, {0: Cyclotomic.from_json(obj)})
        if not isinstance(obj, dict) or "var" not in obj:
            raise ValueError(f"cannot decode Laurent polynomial from {obj!r}")
        var = obj["var"]
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}")
        if "terms" in obj:
            extra = set(obj) - {"var", "terms"}
            if extra:
                raise ValueError(f"unexpected keys {sorted(extra)}")
            return cls(var, {int(e): Cyclotomic.from_json(c) for e, c in obj["terms"].items()})
        if "factors" in obj:
            return FactoredPoly.from_json(obj).expand()
        raise ValueError(f"Laurent polynomial needs terms or factors: {obj!r}")


class FactoredPoly:
    """unit * var^monomial * prod f_i^m_i, kept alongside its expansion."""

    def __init__(self, var: str, unit, monomial: int, factors: list[tuple[LaurentPoly, int]]):
        self.var = var
        self.unit = as_cyc(unit)
        self.monomial = monomial
        self.factors = [(f if f.var == var else LaurentPoly(var, f.terms), m) for f, m in factors]

    def expand(self) -> LaurentPoly:
        out = LaurentPoly(self.var, {self.monomial: self.unit})
        for f, m in self.factors:
            out = out * f ** m
        return LaurentPoly(self.var, out.terms)

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "unit": self.unit.to_json(),
            "monomial": self.monomial,
            "factors": [[f.to_json(), m] for f, m in self.factors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FactoredPoly":
        need = {"var", "unit", "monomial", "factors"}
        if set(obj) != need:
            raise ValueError(f"factored polynomial needs keys {sorted(need)}")
        factors = []
        for item in obj["factors"]:
            f, m = item
            if not isinstance(m, int) or m < 0:
                raise ValueError(f"bad multiplicity {m!r}")
            factors.append((LaurentPoly.from_json(f, obj["var"]), m))
        return cls(obj["var"], Cyclotomic.from_json(obj["unit"]), int(obj["monomial"]), factors)


# ---------------------------------------------------------------------------
# functional interface


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Ring operation by name ("add", "sub", "mul") or symbol.

    Unlike the operators, both arguments must carry the same variable tag.
    """
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly) and a.var != b.var:
        raise VariableMismatchError(f"cannot combine polynomials in {a.var} and {b.var}")
    op = {"add": "+", "sub": "-", "mul": "*"}.get(op, op)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def cyclotomic_poly(d: int, var: str = "q") -> LaurentPoly:
    from .exactnum import cyclotomic_coefficients

    return LaurentPoly.from_list(cyclotomic_coefficients(d), var=var)


def evaluate(p: LaurentPoly, at) -> Cyclotomic:
    """Value of p at a nonzero cyclotomic number or root of unity."""
    if isinstance(at, RootOfUnity):
        # powers of a root of unity are free
        total = ZERO
        for e, c in p.terms.items():
            total = total + c * (at ** e).value()
        return total
    x = as_cyc(at)
    if not p.terms:
        return ZERO
    lo = p.valuation()
    if lo < 0 and x.is_zero():
        raise ZeroDivisionError("negative powers at zero")
    # Horner on the shifted polynomial
    hi = p.degree()
    acc = ZERO
    for e in range(hi, lo - 1, -1):
        acc = acc * x + p.coeff(e)
    return acc * x ** lo if lo else acc


lp_eval = evaluate


def lp_valuation(p: LaurentPoly) -> int:
    return p.valuation()


def substitute_power(p: LaurentPoly, k: int, var: str | None = None) -> LaurentPoly:
    return p.substitute_power(k, var)


def _poly_divmod(a: list[Cyclotomic], b: list[Cyclotomic]):
    # dense lists, lowest degree first, b nonzero with nonzero top
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(a) - 1 < db:
        return [], a
    quot = [ZERO] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c.is_zero():
            continue
        f = c * inv
        quot[i - db] = f
        for j in range(db + 1):
            if not b[j].is_zero():
                a[i - db + j] = a[i - db + j] - f * b[j]
    return quot, a[:db]


def _dense(p: LaurentPoly) -> tuple[list[Cyclotomic], int]:
    lo, hi = p.valuation(), p.degree()
    return [p.coeff(e) for e in range(lo, hi + 1)], lo


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient a / b in the Laurent ring; raise if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    var = a.var if not a.is_constant() else b.var
    if a.is_zero():
        return LaurentPoly(var)
    if a.var != b.var and not (a.is_constant() or b.is_constant()):
        raise VariableMismatchError(f"cannot divide {a.var} by {b.var}")
    da, la = _dense(a)
    db, lb = _dense(b)
    quot, rem = _poly_divmod(da, db)
    q = LaurentPoly(var, {la - lb + i: c for i, c in enumerate(quot)})
    r = LaurentPoly(var, {la + i: c for i, c in enumerate(rem)})
    if not r.is_zero():
        raise InexactDivisionError(q, r)
    return q


lp_exact_div = exact_div


def divide_out_root(p: LaurentPoly, root) -> tuple[int, LaurentPoly]:
    """Multiplicity k of ``root`` as a zero of p, and p / (var - root)^k."""
    if p.is_zero():
        raise ZeroPolynomialError("vanishing order of the zero polynomial")
    r = root.value() if isinstance(root, RootOfUnity) else as_cyc(root)
    if r.is_zero():
        raise ValueError("root must be nonzero in the Laurent ring")
    lin = LaurentPoly(p.var, {1: ONE, 0: -r})
    k = 0
    cur = p
    while True:
        if not evaluate(cur, r).is_zero():
            return k, cur
        cur = exact_div(cur, lin)
        k += 1


def vanishing_order(p: LaurentPoly, root) -> int:
    return divide_out_root(p, root)[0]


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the polynomial parts (monomial factors discarded)."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    x, _ = _dense(a)
    y, _ = _dense(b)
    while any(not c.is_zero() for c in y):
        while y and y[-1].is_zero():
            y.pop()
        _, r = _poly_divmod(x, y)
        while r and r[-1].is_zero():
            r.pop()
        x, y = y, r
    return _monic(LaurentPoly(a.var, dict(enumerate(x))))


def _monic(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    lo = p.valuation()
    shifted = LaurentPoly(p.var, {e - lo: c for e, c in p.terms.items()})
    return shifted * shifted.leading_coeff().inverse()
