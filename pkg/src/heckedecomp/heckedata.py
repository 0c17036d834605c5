"""Hecke algebra datasets: loading, word evaluation and validation.

A dataset file is JSON with the top-level keys ``format_version`` (1),
``group``, ``characters``, ``representations`` and ``schur``; an optional
``poincare`` names the label whose Schur element is the Poincare
polynomial.  Matrix entries and Schur elements are Laurent polynomials in
``q`` (bare scalars are accepted as constants).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import linalg
from .laurent import FactoredPoly, LaurentPoly, exact_div, poly_gcd

FORMAT_VERSION = 1

Word = tuple[str, ...]


class DatasetError(ValueError):
    pass


class DatasetParseError(DatasetError):
    pass


class SchemaError(DatasetError):
    pass


class LabelMismatchError(DatasetError):
    pass


class UnknownSymbolError(KeyError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    name: str
    generators: tuple[str, ...]
    braid_relations: tuple[tuple[Word, ...], ...]
    parameters: dict[str, tuple[LaurentPoly, ...]]
    mu_order: int
    central_candidates: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators) or not gens:
            raise SchemaError("generators must be a nonempty list of distinct symbols")
        for chain in self.braid_relations:
            for w in chain:
                _check_word(w, gens)
        for w in self.central_candidates:
            _check_word(w, gens)
        if set(self.parameters) != gens:
            raise SchemaError("parameters must be given for every generator")
        for g, ps in self.parameters.items():
            if not ps:
                raise SchemaError(f"empty parameter list for {g}")
            if len(set(ps)) != len(ps):
                raise SchemaError(f"parameters of {g} are not pairwise distinct")
        if not isinstance(self.mu_order, int) or self.mu_order < 1:
            raise SchemaError("mu_order must be a positive integer")


def _check_word(w: Sequence[str], gens: set[str]) -> None:
    for sym in w:
        if sym not in gens:
            raise UnknownSymbolError(f"unknown generator {sym!r} in word {''.join(w)}")


@dataclass(frozen=True)
class IrrChar:
    label: str
    dim: int
    b: int


@dataclass(frozen=True)
class Representation:
    label: str
    matrices: tuple  # one dim x dim LaurentPoly matrix per generator
    generators: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.matrices[0])

    def matrix(self, g: str):
        try:
            return self.matrices[self.generators.index(g)]
        except ValueError:
            raise UnknownSymbolError(f"unknown generator {g!r}") from None


@dataclass
class Dataset:
    group: GroupSpec
    characters: list[IrrChar]
    representations: dict[str, Representation]
    schur: dict[str, LaurentPoly]
    poincare: str | None = None
    source: Path | None = None
    schur_factors: dict[str, list] = field(default_factory=dict, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.characters]

    def char(self, label: str) -> IrrChar:
        for c in self.characters:
            if c.label == label:
                return c
        raise KeyError(label)

    def index(self, label: str) -> int:
        return self.labels.index(label)


# ---------------------------------------------------------------------------
# loading


def _word(obj, where: str) -> Word:
    if isinstance(obj, str):
        return tuple(obj)
    if isinstance(obj, list) and all(isinstance(s, str) for s in obj):
        return tuple(obj)
    raise SchemaError(f"{where}: a word must be a list of generator symbols")


def _poly(obj, where: str) -> LaurentPoly:
    try:
        p = LaurentPoly.from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None
    return p


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def parse_dataset(raw: dict, source: Path | None = None) -> Dataset:
    if not isinstance(raw, dict):
        raise SchemaError("top level must be a JSON object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise SchemaError(f"format_version must be {FORMAT_VERSION}, got {version!r}")

    g = _require(raw, "group", "top level")
    name = _require(g, "name", "group")
    gens = _require(g, "generators", "group")
    if not isinstance(gens, list) or not all(isinstance(s, str) for s in gens):
        raise SchemaError("group.generators must be a list of strings")
    rels = tuple(
        tuple(_word(w, f"group.braid_relations[{i}]") for w in chain)
        for i, chain in enumerate(_require(g, "braid_relations", "group"))
    )
    params_raw = _require(g, "parameters", "group")
    if isinstance(params_raw, list):
        if len(params_raw) != len(gens):
            raise SchemaError("group.parameters needs one list per generator")
        params_raw = dict(zip(gens, params_raw))
    params = {
        s: tuple(_poly(p, f"group.parameters.{s}[{j}]") for j, p in enumerate(ps))
        for s, ps in params_raw.items()
    }
    central = tuple(
        _word(w, f"group.central_candidates[{i}]")
        for i, w in enumerate(g.get("central_candidates", []))
    )
    try:
        group = GroupSpec(
            name=name,
            generators=tuple(gens),
            braid_relations=rels,
            parameters=params,
            mu_order=_require(g, "mu_order", "group"),
            central_candidates=central,
        )
    except UnknownSymbolError as exc:
        raise SchemaError(f"group: {exc.args[0]}") from None

    chars = []
    for i, c in enumerate(_require(raw, "characters", "top level")):
        where = f"characters[{i}]"
        if not isinstance(c, dict):
            raise SchemaError(f"{where}: expected an object")
        lab, dim, b = (_require(c, k, where) for k in ("label", "dim", "b"))
        if not isinstance(dim, int) or dim < 1 or not isinstance(b, int) or b < 0:
            raise SchemaError(f"{where}: dim must be positive and b nonnegative")
        chars.append(IrrChar(lab, dim, b))
    labels = [c.label for c in chars]
    if len(set(labels)) != len(labels):
        raise SchemaError("character labels are not unique")

    reps_raw = _require(raw, "representations", "top level")
    schur_raw = _require(raw, "schur", "top level")
    for what, keys in (("representations", reps_raw), ("schur", schur_raw)):
        missing = [lab for lab in labels if lab not in keys]
        extra = [k for k in keys if k not in labels]
        if missing or extra:
            raise LabelMismatchError(
                f"{what}: missing labels {missing}, unexpected labels {extra}"
            )

    reps = {}
    for c in chars:
        mats_raw = reps_raw[c.label]
        where = f"representations.{c.label}"
        if not isinstance(mats_raw, list) or len(mats_raw) != len(gens):
            raise SchemaError(f"{where}: need one matrix per generator")
        mats = []
        for j, m in enumerate(mats_raw):
            if not isinstance(m, list) or len(m) != c.dim or any(
                not isinstance(r, list) or len(r) != c.dim for r in m
            ):
                raise SchemaError(f"{where}[{j}]: expected a {c.dim}x{c.dim} matrix")
            mats.append(
                [[_poly(x, f"{where}[{j}][{r}][{k}]") for k, x in enumerate(row)] for r, row in enumerate(m)]
            )
        reps[c.label] = Representation(c.label, tuple(mats), group.generators)

    schur = {}
    factors = {}
    for c in chars:
        obj = schur_raw[c.label]
        if isinstance(obj, dict) and "factors" in obj:
            try:
                factors[c.label] = FactoredPoly.from_json(obj).factors
            except (ValueError, TypeError, KeyError) as exc:
                raise SchemaError(f"schur.{c.label}: {exc}") from None
        s = _poly(obj, f"schur.{c.label}")
        if s.is_zero():
            raise SchemaError(f"schur.{c.label}: Schur element is zero")
        schur[c.label] = s

    poincare = raw.get("poincare")
    if poincare is not None and poincare not in labels:
        raise LabelMismatchError(f"poincare label {poincare!r} is not a character")
    return Dataset(group, chars, reps, schur, poincare, source, factors)


def load_dataset(path) -> Dataset:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_dataset(raw, path)
    except DatasetError as exc:
        raise type(exc)(f"{path}: {exc}") from None


def dataset_to_json(ds: Dataset) -> dict:
    g = ds.group
    out = {
        "format_version": FORMAT_VERSION,
        "group": {
            "name": g.name,
            "generators": list(g.generators),
            "braid_relations": [[list(w) for w in chain] for chain in g.braid_relations],
            "parameters": {s: [p.to_json() for p in g.parameters[s]] for s in g.generators},
            "mu_order": g.mu_order,
            "central_candidates": [list(w) for w in g.central_candidates],
        },
        "characters": [{"label": c.label, "dim": c.dim, "b": c.b} for c in ds.characters],
        "representations": {
            lab: [[[x.to_json() for x in row] for row in m] for m in rep.matrices]
            for lab, rep in ds.representations.items()
        },
        "schur": {lab: s.to_json() for lab, s in ds.schur.items()},
    }
    if ds.poincare:
        out["poincare"] = ds.poincare
    return out


# ---------------------------------------------------------------------------
# words and characters


def eval_word(rep: Representation, word: Sequence[str]):
    """Ordered product of the generator matrices along ``word``."""
    n = rep.dim
    if not word:
        return linalg.identity(n, LaurentPoly.const(1), LaurentPoly())
    mats = [rep.matrix(g) for g in word]
    out = mats[0]
    for m in mats[1:]:
        out = linalg.matmul(out, m)
    return out


def char_value(rep: Representation, word: Sequence[str]) -> LaurentPoly:
    return linalg.trace(eval_word(rep, word))


# ---------------------------------------------------------------------------
# validation


@dataclass
class CheckResult:
    check: str
    label: str | None
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    group: str
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]


def _mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def poly_lcm(polys: Sequence[LaurentPoly]) -> LaurentPoly:
    """Monic least common multiple of the polynomial parts."""
    out = LaurentPoly.const(1, polys[0].var)
    for p in polys:
        g = poly_gcd(out, p)
        out = exact_div(out * _strip(p), g)
    return out


def _strip(p: LaurentPoly) -> LaurentPoly:
    lo = p.valuation()
    return LaurentPoly(p.var, {e - lo: c for e, c in p.terms.items()})


def _weighted_sum(ds: Dataset, weight) -> tuple[LaurentPoly, LaurentPoly]:
    """(numerator, denominator) of the sum over characters of weight(c) / s_c."""
    schur = [ds.schur[c.label] for c in ds.characters]
    common = poly_lcm(schur)
    # shift so every s divides common * q^shift in the polynomial ring
    shift = max(0, max(s.valuation() for s in schur))
    common = common * LaurentPoly.monomial(shift, 1, common.var)
    total = LaurentPoly(common.var)
    for c, s in zip(ds.characters, schur):
        total = total + exact_div(common, s) * weight(c)
    return total, common


def schur_sum_is_one(ds: Dataset) -> tuple[bool, str]:
    total, common = _weighted_sum(ds, lambda c: c.dim)
    diff = total - common
    return diff.is_zero(), "" if diff.is_zero() else f"sum dim/s - 1 has numerator {diff}"


def trace_vanishes(ds: Dataset, word: Sequence[str]) -> tuple[bool, str]:
    """The symmetrizing trace sum chi(T_w) / s_chi is zero for w a nontrivial group element."""
    total, _ = _weighted_sum(ds, lambda c: char_value(ds.representations[c.label], word))
    return total.is_zero(), "" if total.is_zero() else f"numerator {total}"


def validate_dataset(ds: Dataset) -> ValidationReport:
    g = ds.group
    results: list[CheckResult] = []
    for c in ds.characters:
        rep = ds.representations[c.label]
        for i, chain in enumerate(g.braid_relations):
            vals = [eval_word(rep, w) for w in chain]
            ok = all(_mat_eq(vals[0], v) for v in vals[1:])
            results.append(CheckResult("braid", c.label, ok, "" if ok else f"relation {i} fails"))
        for gen in g.generators:
            m = rep.matrix(gen)
            prod = None
            for p in g.parameters[gen]:
                factor = linalg.sub_scalar(m, p)
                prod = factor if prod is None else linalg.matmul(prod, factor)
            ok = all(not x for row in prod for x in row)
            results.append(
                CheckResult("deformation", c.label, ok, "" if ok else f"generator {gen}")
            )
        tr = char_value(rep, ())
        ok = tr == c.dim and rep.dim == c.dim
        results.append(CheckResult("identity_trace", c.label, ok, "" if ok else f"trace {tr}"))
    ok, detail = schur_sum_is_one(ds)
    results.append(CheckResult("schur_sum", None, ok, detail))
    gens = g.generators
    words = [(a,) for a in gens] + [(a, b) for a in gens for b in gens if a != b]
    for w in words:
        ok, detail = trace_vanishes(ds, w)
        results.append(CheckResult("trace_vanishes", "".join(w), ok, detail))
    return ValidationReport(g.name, results)
