from dataclasses import dataclass

import pytest

from heckedecomp.blocks import (
    NonScalarError,
    block_partition,
    central_words,
    lambda_partition,
    lambda_table,
    match_shape,
    refines,
    verify_central,
)
from heckedecomp.decomp import decomposition_matrix
from heckedecomp.exactnum import RootOfUnity, as_cyc
from heckedecomp.laurent import LaurentPoly, evaluate
from heckedecomp.speceng import q_specialization, specialize_rep
from heckedecomp import linalg


@dataclass
class Plain:
    rows: list
    columns: list
    entries: list
    defect_zero: frozenset = frozenset()


def test_central_words(g4, g12):
    assert verify_central(g4, "ststst")
    assert not verify_central(g4, "s")
    assert not verify_central(g4, "st")
    assert central_words(g4) == [tuple("ststst")]
    assert verify_central(g12, "stu" * 4)
    assert not verify_central(g12, "stu")


def test_lambda_table(g4, g12):
    table = lambda_table(g4, "ststst")
    assert table.values["phi{1,0}"] == LaurentPoly.const(1)
    # the trivial character of the group: value 1 at the group point q = zeta3
    assert evaluate(table.values["phi{1,0}"], RootOfUnity(3, 1)) == as_cyc(1)
    assert table.values["phi{1,8}"] == LaurentPoly.monomial(12)
    with pytest.raises(NonScalarError) as err:
        lambda_table(g4, "st")
    assert err.value.label in g4.labels


def test_lambda_specializes_consistently(g12):
    spec = q_specialization(g12, RootOfUnity(8, 1))
    table = lambda_table(g12, "stu" * 4)
    for lab in g12.labels:
        mats = specialize_rep(g12.representations[lab], spec)
        prod = linalg.identity(len(mats[0]))
        for _ in range(4):
            for m in mats:
                prod = linalg.matmul(prod, m)
        assert linalg.is_scalar(prod) == evaluate(table.values[lab], spec.xi)


def test_lambda_partition_refined_by_blocks(g4, g12):
    for ds, word, orders in ((g4, "ststst", (1, 2, 6, 12)), (g12, "stu" * 4, (2, 8, 12, 24))):
        for m in orders:
            spec = q_specialization(ds, RootOfUnity(m, 1))
            part = lambda_partition(ds, spec, word)
            dm = decomposition_matrix(ds, spec)
            assert sorted(lab for cls in part for lab in cls) == sorted(
                lab for lab in ds.labels if lab not in dm.defect_zero
            )
            assert refines(block_partition(dm).blocks, part)


def test_lambda_partition_semisimple_is_empty(g12):
    assert lambda_partition(g12, q_specialization(g12, RootOfUnity(5, 1)), "stu" * 4) == []


def test_shape_templates():
    assert match_shape([[1, 0], [1, 1], [0, 1]])[0] == "ii"
    assert match_shape([[1], [1]])[0] == "i"
    assert match_shape([[1, 1], [0, 1], [1, 0], [1, 0], [1, 1]])[0] == "iii"
    assert match_shape([[0, 1], [1, 0], [1, 1], [1, 0], [0, 1]])[0] == "iv"
    assert match_shape([[1, 1]])[0] == "other"
    tag, orders = match_shape([[0, 0, 1], [0, 1, 1], [1, 1, 1], [0, 1, 0], [1, 1, 0], [1, 0, 0]])
    assert tag == "v"
    assert sorted(orders) == [(0, 1, 2), (2, 1, 0)]


def test_block_partition_small():
    dm = Plain(["a", "b", "c"], ["a", "c"], [[1, 0], [1, 1], [0, 1]])
    bp = block_partition(dm)
    assert bp.blocks == [["a", "b", "c"]]
    assert bp.shape_tags == ["ii"]
    ident = Plain(["a", "b"], ["a", "b"], [[1, 0], [0, 1]], frozenset({"a", "b"}))
    assert block_partition(ident).shape_tags == ["defect_zero_singleton"] * 2


def test_block_partition_g12_zeta8(g12):
    dm = decomposition_matrix(g12, q_specialization(g12, RootOfUnity(8, 1)))
    bp = block_partition(dm)
    big = [b for b, t in zip(bp.blocks, bp.shape_tags) if t == "v"]
    assert len(big) == 1 and len(big[0]) == 6
    assert bp.shape_tags.count("defect_zero_singleton") == 2
    i = bp.shape_tags.index("v")
    assert ("phi{1,0}", "phi{2,1}", "phi{1,12}") in bp.column_orders[i]
    assert ("phi{1,0}", "phi{1,12}", "phi{2,1}") not in bp.column_orders[i]
