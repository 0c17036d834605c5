"""a-values, generic degrees, the Lemma GR test, basic sets and conjecture audits.

The functions taking a decomposition matrix only read its ``rows``,
``columns``, ``entries`` and ``defect_zero`` attributes, so this module does
not import ``decomp``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import ZERO, Cyclotomic, real_sign
from .heckedata import Dataset, poly_lcm
from .laurent import InexactDivisionError, LaurentPoly, divide_out_root, evaluate, exact_div, vanishing_order


class GenericDegreeError(ArithmeticError):
    def __init__(self, label: str):
        super().__init__(f"Schur element of {label} does not divide P")
        self.label = label


@dataclass(frozen=True)
class AValueTable:
    values: dict[str, Fraction]

    def __getitem__(self, label: str) -> Fraction:
        return self.values[label]

    def key(self, labels: list[str]):
        """Sort key: a-value, then position in ``labels``."""
        return lambda lab: (self.values[lab], labels.index(lab))


def a_values(ds: Dataset) -> AValueTable:
    mu = ds.group.mu_order
    vals = {}
    for lab in ds.labels:
        s = ds.schur[lab]
        vals[lab] = Fraction(s.substitute_power(mu, "y").valuation(), mu)
    return AValueTable(vals)


def default_P(ds: Dataset, choice: str = "lcm") -> LaurentPoly:
    """P = lcm of the Schur elements, or the Schur element of the marked label."""
    if choice == "lcm":
        key = ("P_lcm",)
        if key not in ds._cache:
            ds._cache[key] = poly_lcm([ds.schur[lab] for lab in ds.labels])
        return ds._cache[key]
    if choice == "poincare":
        if ds.poincare is None:
            raise ValueError(f"{ds.group.name}: no Poincare label in the data")
        return ds.schur[ds.poincare]
    raise ValueError(f"unknown choice of P: {choice!r}")


def generic_degrees(ds: Dataset, P: LaurentPoly) -> dict[str, LaurentPoly]:
    out = {}
    for lab in ds.labels:
        try:
            out[lab] = exact_div(P, ds.schur[lab])
        except InexactDivisionError:
            raise GenericDegreeError(lab) from None
    return out


def _column_sums(dm, values: dict[str, Cyclotomic]) -> list[Cyclotomic]:
    sums = []
    for j in range(len(dm.columns)):
        acc = ZERO
        for lab, row in zip(dm.rows, dm.entries):
            if row is not None and row[j]:
                acc = acc + row[j] * values[lab]
        sums.append(acc)
    return sums


def lemma_gr_check(dm, degrees: dict[str, LaurentPoly], spec) -> list[bool]:
    """Per column: sum over rows of d * D(xi) vanishes (vacuous on defect-zero columns)."""
    values = {lab: evaluate(degrees[lab], spec.xi) for lab in dm.rows}
    out = []
    for col, s in zip(dm.columns, _column_sums(dm, values)):
        out.append(col in dm.defect_zero or s.is_zero())
    return out


# ---------------------------------------------------------------------------
# basic sets


@dataclass(frozen=True)
class BasicSet:
    members: tuple[str, ...]
    bijection: dict[str, str]  # column -> label


@dataclass
class BasicSetReport:
    canonical: BasicSet | None
    optimal: BasicSet | None
    notes: list[str] = field(default_factory=list)


def _column_rows(dm, j: int) -> list[tuple[str, int]]:
    return [(lab, row[j]) for lab, row in zip(dm.rows, dm.entries) if row is not None and row[j]]


def canonical_basic_set(dm, av: AValueTable) -> tuple[BasicSet | None, list[str]]:
    notes = []
    chosen = {}
    for j, col in enumerate(dm.columns):
        rows = _column_rows(dm, j)
        ones = [lab for lab, d in rows if d == 1]
        pick = None
        for lab in ones:
            if all(av[other] > av[lab] for other, _ in rows if other != lab):
                pick = lab
                break
        if pick is None:
            notes.append(f"canonical: no row with strictly minimal a-value in column {col}")
            return None, notes
        chosen[col] = pick
    if len(set(chosen.values())) != len(chosen):
        notes.append("canonical: the column-to-row map is not injective")
        return None, notes
    return BasicSet(tuple(chosen[c] for c in dm.columns), chosen), notes


def optimal_basic_set(dm, av: AValueTable) -> tuple[BasicSet | None, list[str]]:
    notes = []
    chosen = {}
    for j, col in enumerate(dm.columns):
        units = [
            lab
            for lab, row in zip(dm.rows, dm.entries)
            if row is not None and row[j] == 1 and sum(row) == 1
        ]
        if not units:
            notes.append(f"optimal: no unit row for column {col}")
            return None, notes
        units.sort(key=av.key(dm.rows))
        if len(units) > 1:
            if av[units[0]] == av[units[1]]:
                notes.append(f"optimal: a-value tie for column {col} among {units}")
            else:
                notes.append(f"optimal: column {col} has several lifts {units}")
        chosen[col] = units[0]
    return BasicSet(tuple(chosen[c] for c in dm.columns), chosen), notes


def basic_set_report(dm, av: AValueTable) -> BasicSetReport:
    can, n1 = canonical_basic_set(dm, av)
    opt, n2 = optimal_basic_set(dm, av)
    return BasicSetReport(can, opt, n1 + n2)


# ---------------------------------------------------------------------------
# conjecture audits


@dataclass(frozen=True)
class Conj1Entry:
    column: str
    order_sum: int
    order_P: int

    @property
    def ok(self) -> bool:
        return self.order_sum == self.order_P


@dataclass(frozen=True)
class RatioEntry:
    label: str
    ratio: Cyclotomic | None  # None when the ratio has a zero or a pole at xi
    real: bool
    rational: bool
    sign: int  # +1, -1, or 0 when not real and nonzero
    l_mod2: int | None


@dataclass
class Conj2Block:
    labels: list[str]
    chi_B: str
    tie: list[str]
    ratios: list[RatioEntry]
    plus: list[str]
    minus: list[str]

    @property
    def ok(self) -> bool:
        return all(r.ratio is not None and r.real for r in self.ratios)


@dataclass
class ConjectureReport:
    conj1: list[Conj1Entry]
    conj2: list[Conj2Block]

    @property
    def conj1_ok(self) -> bool:
        return all(e.ok for e in self.conj1)

    @property
    def conj2_ok(self) -> bool:
        return all(b.ok for b in self.conj2)

    @property
    def ok(self) -> bool:
        return self.conj1_ok and self.conj2_ok


def schur_ratio(ds: Dataset, num: str, den: str, xi) -> Cyclotomic | None:
    """Value at xi of the rational function s_num / s_den, None for a zero or pole."""
    k1, a = divide_out_root(ds.schur[num], xi)
    k2, b = divide_out_root(ds.schur[den], xi)
    if k1 != k2:
        return None
    return evaluate(a, xi) / evaluate(b, xi)


def conjecture_audit(ds: Dataset, dm, spec, P: LaurentPoly, blocks) -> ConjectureReport:
    """Vanishing-order sharpness per column and Broue-invariant signs per block.

    ``blocks`` is a list of label lists (a block partition of ``dm.rows``).
    """
    xi = spec.xi
    degrees = generic_degrees(ds, P)
    order_P = vanishing_order(P, xi)
    conj1 = []
    for j, col in enumerate(dm.columns):
        acc = LaurentPoly("q")
        for lab, d in _column_rows(dm, j):
            acc = acc + degrees[lab] * d
        order = vanishing_order(acc, xi) if not acc.is_zero() else -1
        conj1.append(Conj1Entry(col, order, order_P))

    av = a_values(ds)
    conj2 = []
    for block in blocks:
        labels = sorted(block, key=av.key(ds.labels))
        chi_B = labels[0]
        tie = [lab for lab in labels if av[lab] == av[chi_B]]
        ratios, plus, minus = [], [], []
        for lab in labels:
            r = schur_ratio(ds, chi_B, lab, xi)
            if r is None or r.is_zero():
                ratios.append(RatioEntry(lab, r, False, False, 0, None))
                continue
            real = r == r.conjugate()
            sign = real_sign(r) if real else 0
            if sign > 0:
                plus.append(lab)
            elif sign < 0:
                minus.append(lab)
            lmod2 = None if sign == 0 else (0 if sign > 0 else 1)
            ratios.append(RatioEntry(lab, r, real, r.is_rational(), sign, lmod2))
        conj2.append(Conj2Block(labels, chi_B, tie if len(tie) > 1 else [], ratios, plus, minus))
    return ConjectureReport(conj1, conj2)
