"""Decomposition matrices of specialized Hecke algebras.

Characters are compared through their values on a fixed list of words (the
word basis).  Modular irreducibles are certified by the defect-zero test,
by dimension (1-dimensional, or 2-dimensional without an invariant line),
and, for whatever is left, by a search over hypotheses that must pass the
integrality, Lemma GR and central-character tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import linalg
from .basicsets import a_values, default_P, generic_degrees, lemma_gr_check
from .blocks import central_words, components, lambda_partition, refines
from .exactnum import Cyclotomic, as_cyc
from .heckedata import Dataset
from .laurent import evaluate
from .speceng import Specialization, spec_report, specialized_parameters, specialized_reps

SAMPLE_POINTS = (2, 3, 5, 7)


class WordBasisError(RuntimeError):
    pass


class DecompositionError(ArithmeticError):
    """nnint_decompose failed; subclasses say why."""


class LinearDependenceError(DecompositionError):
    pass


class NoFieldSolution(DecompositionError):
    pass


class NonIntegerSolution(DecompositionError):
    pass


class NegativeCoefficient(DecompositionError):
    pass


# ---------------------------------------------------------------------------
# words and character vectors


def _is_necklace(w: tuple) -> bool:
    """True if w is the least of its cyclic rotations (traces only see the class)."""
    return all(w <= w[i:] + w[:i] for i in range(1, len(w)))


def _all_words(gens, max_len: int):
    """Words of length <= max_len, one per rotation class, by length then generator order."""
    rank = {g: i for i, g in enumerate(gens)}
    words = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in gens]
        words.extend(w for w in layer if _is_necklace(tuple(rank[x] for x in w)))
    return words


class _TraceTable:
    """Word traces for one family of matrices, caching prefix products."""

    def __init__(self, mats, gens):
        self.mats = mats
        self.index = {g: i for i, g in enumerate(gens)}
        self.cache = {(): linalg.identity(len(mats[0]))}

    def matrix(self, w):
        m = self.cache.get(w)
        if m is None:
            m = linalg.matmul(self.matrix(w[:-1]), self.mats[self.index[w[-1]]])
            self.cache[w] = m
        return m

    def traces(self, words) -> list:
        return [linalg.trace(self.matrix(w)) for w in words]


def _word_traces(mats: list, gens, words) -> list:
    return _TraceTable(mats, gens).traces(words)


def word_basis(ds: Dataset, max_len: int = 12) -> list[tuple[str, ...]]:
    """Words of length <= L for the least L giving full generic character rank.

    Only one word per cyclic-rotation class is kept, since traces cannot
    tell rotations apart.
    """
    key = ("word_basis",)
    if key in ds._cache and len(ds._cache[key][-1]) <= max_len:
        return ds._cache[key]
    gens = ds.group.generators
    n = len(ds.labels)
    tables = []
    for x in SAMPLE_POINTS:
        xc = as_cyc(x)
        tables.append(
            [
                _TraceTable(
                    [[[evaluate(e, xc) for e in row] for row in m] for m in ds.representations[lab].matrices],
                    gens,
                )
                for lab in ds.labels
            ]
        )
    for L in range(max_len + 1):
        words = _all_words(gens, L)
        for family in tables:
            if linalg.rank([t.traces(words) for t in family]) == n:
                ds._cache[key] = words
                return words
    raise WordBasisError(
        f"{ds.group.name}: characters are not independent on words of length <= {max_len}"
    )


def character_vectors(ds: Dataset, spec: Specialization, words) -> dict[str, list[Cyclotomic]]:
    key = ("charvec", spec.xi, len(words))
    if key not in ds._cache:
        reps = specialized_reps(ds, spec)
        ds._cache[key] = {
            lab: _word_traces(reps[lab], ds.group.generators, words) for lab in ds.labels
        }
    return ds._cache[key]


# ---------------------------------------------------------------------------
# eigen machinery


def eigenspace(m, lam) -> list[list[Cyclotomic]]:
    return linalg.nullspace(linalg.sub_scalar(m, as_cyc(lam)))


def common_invariant_line(mats, allowed) -> list[tuple[list[Cyclotomic], tuple]]:
    """Simultaneous eigenvectors with eigenvalues from the allowed lists.

    One vector per basis element of each joint eigenspace, normalized so its
    first nonzero coordinate is 1.
    """
    out = []
    for lams in product(*allowed):
        stacked = []
        for m, lam in zip(mats, lams):
            stacked.extend(linalg.sub_scalar(m, as_cyc(lam)))
        for v in linalg.nullspace(stacked):
            out.append((linalg.normalize_line(v), tuple(lams)))
    return out


# ---------------------------------------------------------------------------
# decomposition over a basis


def nnint_decompose(target, basis) -> list[int]:
    """Nonnegative integer coefficients c with sum c_i basis_i == target."""
    if basis and linalg.rank([list(b) for b in basis]) < len(basis):
        raise LinearDependenceError("basis vectors are linearly dependent")
    coeffs = linalg.solve_left([list(b) for b in basis], list(target))
    if coeffs is None:
        raise NoFieldSolution("target is not in the span of the basis")
    out = []
    for c in coeffs:
        if not c.is_rational() or c.to_fraction().denominator != 1:
            raise NonIntegerSolution(f"coefficient {c} is not an integer")
        k = int(c.to_fraction())
        if k < 0:
            raise NegativeCoefficient(f"coefficient {k} is negative")
        out.append(k)
    return out


def _try_decompose(target, basis):
    try:
        return nnint_decompose(target, basis)
    except DecompositionError:
        return None


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "irreducible", "reducible" or "undetermined"
    reason: str | None = None  # defect_zero, dim_one, dim_two_no_invariant_line, search_hypothesis_verified
    witness: object = None  # invariant line with eigenvalues, or a decomposition row

    def __post_init__(self):
        if self.verdict not in ("irreducible", "reducible", "undetermined"):
            raise ValueError(f"bad verdict {self.verdict!r}")


@dataclass
class DecompositionMatrix:
    rows: list[str]
    columns: list[str]
    entries: list[list[int] | None]
    certificates: dict[str, Certificate]
    word_basis: list[tuple[str, ...]]
    defect_zero: frozenset[str]
    spec: Specialization | None = None
    classes: dict[str, list[str]] = field(default_factory=dict)  # lift -> labels with equal reduction
    candidates: list[list[str]] = field(default_factory=list)  # surviving hypotheses
    undetermined: bool = False

    def row(self, label: str) -> list[int] | None:
        return self.entries[self.rows.index(label)]

    def entry(self, label: str, column: str) -> int:
        return self.row(label)[self.columns.index(column)]

    def is_identity(self) -> bool:
        return self.columns == self.rows and all(
            row == [int(i == j) for j in range(len(self.columns))]
            for i, row in enumerate(self.entries)
        )

    def check_dimensions(self, ds: Dataset) -> bool:
        dims = {c.label: c.dim for c in ds.characters}
        return all(
            row is None or dims[lab] == sum(d * dims[c] for d, c in zip(row, self.columns))
            for lab, row in zip(self.rows, self.entries)
        )

    def check_characters(self, vectors: dict[str, list]) -> bool:
        for lab, row in zip(self.rows, self.entries):
            if row is None:
                continue
            acc = [as_cyc(0)] * len(vectors[lab])
            for d, c in zip(row, self.columns):
                if d:
                    acc = [x + d * y for x, y in zip(acc, vectors[c])]
            if acc != vectors[lab]:
                return False
        return True


# ---------------------------------------------------------------------------
# the algorithm


@dataclass
class _Class:
    labels: list[str]
    lift: str
    dim: int
    a: Fraction


def _certify_small(reps, allowed, cls: _Class, use_criterion3: bool) -> Certificate | None:
    if cls.dim == 1:
        return Certificate("irreducible", "dim_one")
    lines = common_invariant_line(reps[cls.lift], allowed)
    if lines:
        return Certificate("reducible", None, lines[0])
    if cls.dim == 2 and use_criterion3:
        return Certificate("irreducible", "dim_two_no_invariant_line")
    return None


def _assemble(vectors, lifts, labels):
    """Rows over the given lifts, or None if some row does not decompose."""
    basis = [vectors[lift] for lift in lifts]
    rows = []
    for lab in labels:
        r = _try_decompose(vectors[lab], basis)
        if r is None:
            return None
        rows.append(r)
    return rows


def decomposition_matrix(
    ds: Dataset,
    spec: Specialization,
    *,
    use_criterion3: bool = True,
    max_len: int = 12,
    P=None,
) -> DecompositionMatrix:
    labels = ds.labels
    report = spec_report(ds, spec)
    dz = report.defect_zero
    av = a_values(ds)
    order_key = av.key(labels)

    # semisimple: every character is its own modular irreducible
    if report.semisimple:
        n = len(labels)
        return DecompositionMatrix(
            list(labels),
            list(labels),
            [[int(i == j) for j in range(n)] for i in range(n)],
            {lab: Certificate("irreducible", "defect_zero") for lab in labels},
            [],
            dz,
            spec,
            {lab: [lab] for lab in labels},
        )

    words = word_basis(ds, max_len)
    vectors = character_vectors(ds, spec, words)
    reps = specialized_reps(ds, spec)
    allowed = specialized_parameters(ds, spec)
    dims = {c.label: c.dim for c in ds.characters}

    # classes of equal modular reduction
    classes: list[_Class] = []
    by_vec: dict[tuple, _Class] = {}
    for lab in labels:
        vkey = ("dz", lab) if lab in dz else tuple(vectors[lab])
        if vkey in by_vec:
            by_vec[vkey].labels.append(lab)
        else:
            cls = _Class([lab], lab, dims[lab], av[lab])
            by_vec[vkey] = cls
            classes.append(cls)
    for cls in classes:
        cls.lift = min(cls.labels, key=order_key)

    certs: dict[str, Certificate] = {}
    certified: list[_Class] = []
    unresolved: list[_Class] = []
    for cls in classes:
        if cls.lift in dz:
            cert = Certificate("irreducible", "defect_zero")
        else:
            cert = _certify_small(reps, allowed, cls, use_criterion3)
        if cert is not None and cert.verdict == "irreducible":
            certified.append(cls)
        else:
            unresolved.append(cls)
        if cert is not None:
            for lab in cls.labels:
                certs[lab] = cert

    # closure over the certified set
    changed = True
    while changed:
        changed = False
        basis = [vectors[c.lift] for c in certified]
        for cls in list(unresolved):
            row = _try_decompose(vectors[cls.lift], basis)
            if row is not None:
                cert = Certificate("reducible", "row", row)
                for lab in cls.labels:
                    certs[lab] = cert
                unresolved.remove(cls)
                changed = True

    candidates: list[list[_Class]] = []
    if unresolved:
        if P is None:
            P = default_P(ds)
        degrees = generic_degrees(ds, P)
        partitions = [lambda_partition(ds, spec, w, dz) for w in central_words(ds)]
        ranked = sorted(unresolved, key=lambda c: (c.dim, c.a, labels.index(c.lift)))
        accepted: list[frozenset[int]] = []
        for size in range(1, len(ranked) + 1):
            for combo in combinations(range(len(ranked)), size):
                chosen = frozenset(combo)
                if any(prev <= chosen for prev in accepted):
                    continue
                trial = certified + [ranked[i] for i in combo]
                if _hypothesis_ok(ds, vectors, trial, dz, degrees, partitions, spec):
                    accepted.append(chosen)
        candidates = [[ranked[i] for i in sorted(c)] for c in accepted]
        if len(candidates) == 1:
            for cls in candidates[0]:
                cert = Certificate("irreducible", "search_hypothesis_verified")
                for lab in cls.labels:
                    certs[lab] = cert
                certified.append(cls)
                unresolved.remove(cls)
            basis = [vectors[c.lift] for c in certified]
            for cls in unresolved:
                cert = Certificate("reducible", "row", nnint_decompose(vectors[cls.lift], basis))
                for lab in cls.labels:
                    certs[lab] = cert
            unresolved = []

    certified.sort(key=lambda c: labels.index(c.lift))
    columns = [c.lift for c in certified]
    basis = [vectors[c] for c in columns]
    entries: list[list[int] | None] = []
    for lab in labels:
        entries.append(_try_decompose(vectors[lab], basis))
        if lab not in certs:
            certs[lab] = Certificate("undetermined")
    for cls in unresolved:
        for lab in cls.labels:
            certs[lab] = Certificate("undetermined")
    return DecompositionMatrix(
        list(labels),
        columns,
        entries,
        certs,
        words,
        dz,
        spec,
        {c.lift: list(c.labels) for c in certified},
        [[c.lift for c in cand] for cand in candidates] if unresolved or len(candidates) > 1 else [],
        bool(unresolved),
    )


def _hypothesis_ok(ds, vectors, trial, dz, degrees, partitions, spec) -> bool:
    lifts = [c.lift for c in trial]
    basis = [vectors[lift] for lift in lifts]
    if linalg.rank([list(b) for b in basis]) < len(basis):
        return False
    rows = _assemble(vectors, lifts, ds.labels)
    if rows is None:
        return False
    probe = DecompositionMatrix(list(ds.labels), lifts, rows, {}, [], dz, spec)
    if not all(lemma_gr_check(probe, degrees, spec)):
        return False
    if partitions:
        blocks = [[ds.labels[i] for i in ri] for ri, _ in components(ds.labels, rows)]
        if not all(refines(blocks, p) for p in partitions):
            return False
    return True
