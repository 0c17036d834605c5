"""Specializations q -> xi at roots of unity and the defect-zero test."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactnum import Cyclotomic, RootOfUnity, euler_phi
from .heckedata import Dataset, Representation
from .laurent import LaurentPoly, evaluate


@dataclass(frozen=True)
class Specialization:
    """y -> zeta, hence q = y^mu_order -> xi = zeta^mu_order."""

    zeta: RootOfUnity
    mu_order: int

    @property
    def xi(self) -> RootOfUnity:
        return self.zeta ** self.mu_order

    @classmethod
    def from_q(cls, xi: RootOfUnity, mu_order: int) -> "Specialization":
        """Principal lift: zeta_m^k for q becomes zeta_(m*mu)^k for y."""
        return cls(RootOfUnity(xi.order * mu_order, xi.exponent), mu_order)

    def __str__(self):
        return f"q={self.xi} (y={self.zeta})"


def q_specialization(ds: Dataset, xi: RootOfUnity) -> Specialization:
    return Specialization.from_q(xi, ds.group.mu_order)


@dataclass(frozen=True)
class SpecReport:
    spec: Specialization
    schur_values: dict[str, Cyclotomic]
    defect_zero: frozenset[str]
    semisimple: bool

    def values_in_order(self, labels) -> list[Cyclotomic]:
        return [self.schur_values[lab] for lab in labels]


def _root_orders(p: LaurentPoly, max_phi: int) -> set[int]:
    """Orders m of roots of unity that are zeros of p, with phi(m) <= max_phi."""
    found = set()
    m = 1
    # phi(m) >= sqrt(m / 2), so m <= 2 * max_phi^2 covers every candidate
    limit = 2 * max_phi * max_phi + 2
    while m <= limit:
        if euler_phi(m) <= max_phi:
            for k in range(m):
                if math.gcd(k, m) == 1 and evaluate(p, RootOfUnity(m, k)).is_zero():
                    found.add(m)
                    break
        m += 1
    return found


def _coefficient_order(p: LaurentPoly) -> int:
    n = 1
    for c in p.terms.values():
        n = math.lcm(n, c.order)
    return n


def critical_orders(ds: Dataset) -> list[int]:
    """Orders m such that some Schur element vanishes at a primitive m-th root.

    Candidate orders come from the stored factors when the data file gives
    Schur elements in factored form; otherwise from a degree bound.
    """
    key = ("critical_orders",)
    if key in ds._cache:
        return ds._cache[key]
    candidates: set[int] = set()
    factored = getattr(ds, "schur_factors", None) or {}
    for lab in ds.labels:
        factors = factored.get(lab)
        if factors is not None:
            for f, _ in factors:
                if f.is_constant() or len(f.terms) == 1:
                    continue
                bound = (f.degree() - f.valuation()) * euler_phi(_coefficient_order(f))
                candidates |= _root_orders(f, bound)
        else:
            s = ds.schur[lab]
            bound = (s.degree() - s.valuation()) * euler_phi(_coefficient_order(s))
            candidates |= _root_orders(s, bound)
    top = 1
    for m in candidates:
        top = math.lcm(top, m)
    out = []
    for m in range(1, top + 1):
        if top % m:
            continue
        if any(
            evaluate(ds.schur[lab], RootOfUnity(m, k)).is_zero()
            for k in range(m)
            if math.gcd(k, m) == 1
            for lab in ds.labels
        ):
            out.append(m)
    ds._cache[key] = out
    return out


def specialize_matrix(m, xi) -> list[list[Cyclotomic]]:
    return [[evaluate(e, xi) for e in row] for row in m]


def specialize_rep(rep: Representation, spec: Specialization) -> list[list[list[Cyclotomic]]]:
    """Every generator matrix evaluated at q = xi."""
    return [specialize_matrix(m, spec.xi) for m in rep.matrices]


def specialized_reps(ds: Dataset, spec: Specialization) -> dict[str, list]:
    key = ("reps", spec.xi)
    if key not in ds._cache:
        ds._cache[key] = {lab: specialize_rep(ds.representations[lab], spec) for lab in ds.labels}
    return ds._cache[key]


def specialized_parameters(ds: Dataset, spec: Specialization) -> list[list[Cyclotomic]]:
    """Distinct specialized roots of each generator's deformation relation."""
    out = []
    for g in ds.group.generators:
        vals: list[Cyclotomic] = []
        for p in ds.group.parameters[g]:
            v = evaluate(p, spec.xi)
            if v not in vals:
                vals.append(v)
        out.append(vals)
    return out


def spec_report(ds: Dataset, spec: Specialization) -> SpecReport:
    vals = {lab: evaluate(ds.schur[lab], spec.xi) for lab in ds.labels}
    dz = frozenset(lab for lab, v in vals.items() if not v.is_zero())
    return SpecReport(spec, vals, dz, len(dz) == len(vals))
