"""Central elements, lambda scalars, block partitions and block shapes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from . import linalg
from .heckedata import Dataset, eval_word
from .laurent import LaurentPoly, evaluate

# decomposition patterns of the frequently occurring blocks, rows top to bottom
SHAPES: dict[str, tuple[tuple[int, ...], ...]] = {
    "i": ((1,), (1,)),
    "ii": ((1, 0), (1, 1), (0, 1)),
    "iii": ((1, 0), (1, 1), (0, 1), (1, 1), (1, 0)),
    "iv": ((1, 0), (0, 1), (1, 1), (0, 1), (1, 0)),
    "v": ((1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1), (0, 0, 1)),
}


class NonScalarError(ValueError):
    def __init__(self, label: str, word):
        super().__init__(f"word {''.join(word)} does not act by a scalar on {label}")
        self.label = label


def verify_central(ds: Dataset, word) -> bool:
    """True iff the word commutes with every generator in every representation."""
    word = tuple(word)
    key = ("central", word)
    if key in ds._cache:
        return ds._cache[key]
    ok = True
    for lab in ds.labels:
        rep = ds.representations[lab]
        z = eval_word(rep, word)
        for m in rep.matrices:
            if linalg.matmul(z, m) != linalg.matmul(m, z):
                ok = False
                break
        if not ok:
            break
    ds._cache[key] = ok
    return ok


def central_words(ds: Dataset) -> list[tuple[str, ...]]:
    """The candidate words from the data file that pass verify_central."""
    return [w for w in ds.group.central_candidates if verify_central(ds, w)]


@dataclass(frozen=True)
class LambdaTable:
    values: dict[str, LaurentPoly]
    word: tuple[str, ...]


def lambda_table(ds: Dataset, word) -> LambdaTable:
    word = tuple(word)
    key = ("lambda", word)
    if key in ds._cache:
        return ds._cache[key]
    vals = {}
    for lab in ds.labels:
        c = linalg.is_scalar(eval_word(ds.representations[lab], word))
        if c is None:
            raise NonScalarError(lab, word)
        vals[lab] = c
    table = LambdaTable(vals, word)
    ds._cache[key] = table
    return table


def lambda_partition(ds: Dataset, spec, word, defect_zero=None) -> list[list[str]]:
    """Non-defect-zero labels grouped by the value of lambda at q = xi."""
    if defect_zero is None:
        from .speceng import spec_report

        defect_zero = spec_report(ds, spec).defect_zero
    table = lambda_table(ds, word)
    groups: dict = {}
    for lab in ds.labels:
        if lab in defect_zero:
            continue
        groups.setdefault(evaluate(table.values[lab], spec.xi), []).append(lab)
    return list(groups.values())


def refines(blocks: list[list[str]], partition: list[list[str]]) -> bool:
    """Every block, restricted to the partitioned labels, lies inside one class."""
    where = {lab: i for i, cls in enumerate(partition) for lab in cls}
    for b in blocks:
        seen = {where[lab] for lab in b if lab in where}
        if len(seen) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# blocks of a decomposition matrix


def components(rows: list[str], entries: list[list[int]]) -> list[tuple[list[int], list[int]]]:
    """Connected components of the row-column graph as (row indices, column indices)."""
    ncols = len(entries[0]) if entries else 0
    parent = list(range(len(rows) + ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, row in enumerate(entries):
        for j, d in enumerate(row):
            if d:
                parent[find(i)] = find(len(rows) + j)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i in range(len(rows)):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(ncols):
        groups.setdefault(find(len(rows) + j), ([], []))[1].append(j)
    return sorted(groups.values(), key=lambda g: (g[0][0] if g[0] else len(rows), g[1]))


def match_shape(sub: list[list[int]]) -> tuple[str, list[tuple[int, ...]]]:
    """Shape tag of a block submatrix and every column order realizing it.

    Matching is up to row and column permutation: a column order is valid
    when the multiset of permuted rows equals the template's rows.
    """
    nrows, ncols = len(sub), len(sub[0]) if sub else 0
    for tag, template in SHAPES.items():
        if len(template) != nrows or len(template[0]) != ncols:
            continue
        target = sorted(template)
        orders = [
            perm
            for perm in permutations(range(ncols))
            if sorted(tuple(r[j] for j in perm) for r in sub) == target
        ]
        if orders:
            return tag, orders
    return "other", []


@dataclass
class BlockPartition:
    blocks: list[list[str]]
    columns: list[list[str]]
    shape_tags: list[str]
    column_orders: list[list[tuple[str, ...]]] = field(default_factory=list)

    def block_of(self, label: str) -> int:
        for i, b in enumerate(self.blocks):
            if label in b:
                return i
        raise KeyError(label)


def block_partition(dm) -> BlockPartition:
    """Blocks of a decomposition matrix with their shape tags."""
    blocks, cols, tags, orders = [], [], [], []
    entries = [row if row is not None else [0] * len(dm.columns) for row in dm.entries]
    for ri, ci in components(dm.rows, entries):
        labels = [dm.rows[i] for i in ri]
        names = [dm.columns[j] for j in ci]
        blocks.append(labels)
        cols.append(names)
        if len(labels) == 1 and labels[0] in dm.defect_zero:
            tags.append("defect_zero_singleton")
            orders.append([tuple(names)])
            continue
        sub = [[entries[i][j] for j in ci] for i in ri]
        tag, perms = match_shape(sub)
        tags.append(tag)
        orders.append([tuple(names[j] for j in p) for p in perms])
    return BlockPartition(blocks, cols, tags, orders)
