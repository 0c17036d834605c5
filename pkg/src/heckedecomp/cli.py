"""Command-line interface: validation, decompositions, blocks, basic sets, golden runs.

Exit status is 0 on success, 1 when a check fails (validation, golden
mismatch) and 2 for usage errors (unknown group, bad q, missing files).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .basicsets import (
    BasicSetReport,
    ConjectureReport,
    a_values,
    basic_set_report,
    conjecture_audit,
    default_P,
    generic_degrees,
    lemma_gr_check,
)
from .blocks import BlockPartition, block_partition
from .decomp import DecompositionMatrix, WordBasisError, decomposition_matrix
from .exactnum import Cyclotomic, RootOfUnity
from .heckedata import Dataset, DatasetError, load_dataset, validate_dataset
from .speceng import SpecReport, Specialization, critical_orders, q_specialization, spec_report

REPORT_VERSION = 1
DATA_DIR = Path(__file__).parent / "data"
GOLDEN_FILE = "golden.json"

Q_HELP = (
    "value of q: 1, -1, zetaN (primitive N-th root exp(2 pi i/N)), zetaN^k, "
    "or E(N), E(N)^k; several values may be separated by commas"
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# q values


_ZETA = re.compile(r"^(?:zeta(\d+)|E\((\d+)\))(?:\^(-?\d+))?$")


def parse_q(text: str) -> RootOfUnity:
    s = text.strip().replace(" ", "")
    if s == "1":
        return RootOfUnity(1, 0)
    if s == "-1":
        return RootOfUnity(2, 1)
    m = _ZETA.match(s)
    if not m or int(m.group(1) or m.group(2)) == 0:
        raise UsageError(f"cannot parse q value {text!r}; expected {Q_HELP}")
    n = int(m.group(1) or m.group(2))
    k = int(m.group(3)) if m.group(3) is not None else 1
    return RootOfUnity(n, k)


def parse_q_list(text: str) -> list[RootOfUnity]:
    return [parse_q(part) for part in text.split(",") if part.strip()]


# ---------------------------------------------------------------------------
# datasets


def dataset_files(data_dir: Path) -> list[Path]:
    out = []
    for p in sorted(Path(data_dir).glob("*.json")):
        if p.name == GOLDEN_FILE:
            continue
        out.append(p)
    return out


_LOADED: dict[Path, Dataset] = {}


def open_group(data_dir: Path, group: str) -> Dataset:
    """Load a group's dataset; repeated calls share one instance and its caches."""
    path = (Path(data_dir) / f"{group}.json").resolve()
    if not path.is_file():
        known = ", ".join(p.stem for p in dataset_files(data_dir)) or "none"
        raise UsageError(f"unknown group {group!r} (available: {known})")
    if path not in _LOADED:
        _LOADED[path] = load_dataset(path)
    return _LOADED[path]


# ---------------------------------------------------------------------------
# run reports


@dataclass
class RunReport:
    group: str
    spec: Specialization
    spec_report: SpecReport
    matrix: DecompositionMatrix
    blocks: BlockPartition
    basic_sets: BasicSetReport | None
    conjectures: ConjectureReport | None
    lemma_gr: list[bool]
    timings: dict[str, float] = field(default_factory=dict)


def compute_run(ds: Dataset, xi: RootOfUnity, words_maxlen: int = 12, p_choice: str = "lcm") -> RunReport:
    timings = {}
    t0 = time.perf_counter()
    spec = q_specialization(ds, xi)
    rep = spec_report(ds, spec)
    P = default_P(ds, p_choice)
    dm = decomposition_matrix(ds, spec, max_len=words_maxlen, P=P)
    timings["decompose"] = time.perf_counter() - t0
    bp = block_partition(dm)
    av = a_values(ds)
    gr = lemma_gr_check(dm, generic_degrees(ds, P), spec)
    if dm.undetermined:
        bs, conj = None, None
    else:
        bs = basic_set_report(dm, av)
        conj = None if rep.semisimple else conjecture_audit(ds, dm, spec, P, bp.blocks)
    timings["total"] = time.perf_counter() - t0
    return RunReport(ds.group.name, spec, rep, dm, bp, bs, conj, gr, timings)


def _cyc(c: Cyclotomic | None):
    return None if c is None else str(c)


def _basic_set_json(bs):
    if bs is None:
        return None
    return {"members": list(bs.members), "bijection": dict(bs.bijection)}


def _certificate_json(cert) -> dict:
    witness = cert.witness
    if isinstance(witness, tuple):  # invariant line with eigenvalues
        vec, lams = witness
        witness = {"line": [str(x) for x in vec], "eigenvalues": [str(x) for x in lams]}
    return {"verdict": cert.verdict, "reason": cert.reason, "witness": witness}


def report_to_json(r: RunReport, with_timings: bool = False) -> dict:
    dm = r.matrix
    out = {
        "format_version": REPORT_VERSION,
        "group": r.group,
        "q": str(r.spec.xi),
        "y": str(r.spec.zeta),
        "schur_values": {lab: str(v) for lab, v in r.spec_report.schur_values.items()},
        "defect_zero": [lab for lab in dm.rows if lab in r.spec_report.defect_zero],
        "semisimple": r.spec_report.semisimple,
        "matrix": {
            "rows": list(dm.rows),
            "columns": list(dm.columns),
            "entries": dm.entries,
            "classes": dm.classes,
            "word_basis_size": len(dm.word_basis),
            "word_basis_max_length": max((len(w) for w in dm.word_basis), default=0),
            "undetermined": dm.undetermined,
            "candidates": dm.candidates,
        },
        "certificates": {lab: _certificate_json(dm.certificates[lab]) for lab in dm.rows},
        "blocks": [
            {"labels": b, "columns": c, "shape": t, "column_orders": [list(o) for o in orders]}
            for b, c, t, orders in zip(
                r.blocks.blocks, r.blocks.columns, r.blocks.shape_tags, r.blocks.column_orders
            )
        ],
        "lemma_gr": dict(zip(dm.columns, r.lemma_gr)),
        "basic_sets": None
        if r.basic_sets is None
        else {
            "canonical": _basic_set_json(r.basic_sets.canonical),
            "optimal": _basic_set_json(r.basic_sets.optimal),
            "notes": r.basic_sets.notes,
        },
        "conjectures": None if r.conjectures is None else _conjectures_json(r.conjectures),
    }
    if with_timings:
        out["timings"] = {k: round(v, 4) for k, v in r.timings.items()}
    return out


def _conjectures_json(c: ConjectureReport) -> dict:
    return {
        "vanishing_orders": [
            {"column": e.column, "order_sum": e.order_sum, "order_P": e.order_P, "ok": e.ok}
            for e in c.conj1
        ],
        "broue": [
            {
                "labels": b.labels,
                "chi_B": b.chi_B,
                "tie": b.tie,
                "ratios": [
                    {
                        "label": x.label,
                        "ratio": _cyc(x.ratio),
                        "real": x.real,
                        "rational": x.rational,
                        "sign": x.sign,
                        "l_mod2": x.l_mod2,
                    }
                    for x in b.ratios
                ],
                "plus": b.plus,
                "minus": b.minus,
                "ok": b.ok,
            }
            for b in c.conj2
        ],
        "ok": c.ok,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------------------
# text rendering


def _ordered_blocks(ds: Dataset, dm: DecompositionMatrix, bp: BlockPartition):
    """Blocks with columns sorted by (a-value, label order) and rows in echelon order.

    A row goes under its first nonzero column; rows under the same column
    are sorted by a-value, then label order.
    """
    key = a_values(ds).key(ds.labels)
    out = []
    for labels, cols in zip(bp.blocks, bp.columns):
        cols = sorted(cols, key=key)

        def lead(lab, cols=cols):
            row = dm.row(lab)
            if row is None:
                return len(cols)
            return next((i for i, c in enumerate(cols) if row[dm.columns.index(c)]), len(cols))

        out.append((sorted(labels, key=lambda lab: (lead(lab), key(lab))), cols))
    out.sort(key=lambda b: key(b[1][0]) if b[1] else key(b[0][0]))
    return out


def render_matrix(ds: Dataset, dm: DecompositionMatrix, bp: BlockPartition) -> str:
    """Decomposition matrix with blocks separated by rules; zeros print as dots."""
    blocks = _ordered_blocks(ds, dm, bp)
    cols = [c for _, cs in blocks for c in cs]
    width = max(len(c) for c in cols + list(dm.rows))
    head = " " * width + " | " + " ".join(f"{c:>{len(c)}}" for c in cols)
    lines = [head, "-" * len(head)]
    for labels, _ in blocks:
        for lab in labels:
            row = dm.row(lab)
            cells = []
            for c in cols:
                d = row[dm.columns.index(c)] if row is not None else None
                cells.append(f"{'?' if d is None else (d or '.')!s:>{len(c)}}")
            lines.append(f"{lab:<{width}} | " + " ".join(cells))
        lines.append("-" * len(head))
    return "\n".join(lines)


def render_text(ds: Dataset, r: RunReport, sections=("summary", "matrix", "blocks", "basic", "conj")) -> str:
    dm = r.matrix
    out = [f"{r.group} at q={r.spec.xi} (y={r.spec.zeta})"]
    if "summary" in sections:
        vals = ", ".join(f"{lab}={v}" for lab, v in r.spec_report.schur_values.items())
        out.append(f"schur values: {vals}")
        out.append("semisimple: " + ("yes" if r.spec_report.semisimple else "no"))
        dz = [lab for lab in dm.rows if lab in r.spec_report.defect_zero]
        out.append("defect zero: " + (", ".join(dz) or "none"))
        if dm.word_basis:
            out.append(
                f"word basis: {len(dm.word_basis)} words of length <= {max(len(w) for w in dm.word_basis)}"
            )
    if "matrix" in sections:
        out.append("")
        out.append(render_matrix(ds, dm, r.blocks))
        if dm.undetermined:
            out.append("UNDETERMINED; surviving hypotheses: " + "; ".join(map(str, dm.candidates)))
        out.append("certificates: " + ", ".join(
            f"{lab}={c.reason or c.verdict}" for lab, c in dm.certificates.items()
        ))
    if "blocks" in sections:
        out.append("")
        for labels, cols, tag in zip(r.blocks.blocks, r.blocks.columns, r.blocks.shape_tags):
            if tag == "defect_zero_singleton":
                continue
            out.append(f"block [{tag}] rows {', '.join(labels)}; columns {', '.join(cols)}")
        if all(gr for gr in r.lemma_gr):
            out.append("Lemma GR: all columns pass")
        else:
            bad = [c for c, ok in zip(dm.columns, r.lemma_gr) if not ok]
            out.append("Lemma GR: FAILS for " + ", ".join(bad))
    if "basic" in sections and r.basic_sets is not None:
        out.append("")
        for name, bs in (("canonical", r.basic_sets.canonical), ("optimal", r.basic_sets.optimal)):
            out.append(f"{name} basic set: " + ("none" if bs is None else ", ".join(bs.members)))
        for note in r.basic_sets.notes:
            out.append(f"  note: {note}")
    if "conj" in sections and r.conjectures is not None:
        c = r.conjectures
        out.append("")
        out.append("vanishing orders: " + ", ".join(
            f"{e.column} {e.order_sum}/{e.order_P}" for e in c.conj1
        ) + (" (ok)" if c.conj1_ok else " (MISMATCH)"))
        for b in c.conj2:
            if len(b.labels) == 1:
                continue
            ratios = ", ".join(f"{x.label}:{_cyc(x.ratio)}" for x in b.ratios)
            out.append(f"block of {b.chi_B}: ratios {ratios}")
            out.append(f"  B+ = {{{', '.join(b.plus)}}}  B- = {{{', '.join(b.minus)}}}")
            if b.tie:
                out.append(f"  tie for chi_B among {', '.join(b.tie)}")
        out.append("broue invariants: " + ("ok" if c.conj2_ok else "FAIL"))
    return "\n".join(out)


# ---------------------------------------------------------------------------
# golden corpus


@dataclass(frozen=True)
class GoldenRecord:
    group: str
    q_order: int
    blocks: tuple[tuple[tuple[str, ...], str], ...]  # (members, shape)
    q_value_hint: str | None = None
    notation: str | None = None
    note: str | None = None
    optimal_set_note: str = "plus all defect-zero"

    @classmethod
    def from_json(cls, obj: dict) -> "GoldenRecord":
        return cls(
            obj["group"],
            int(obj["q_order"]),
            tuple((tuple(b["members"]), b["shape"]) for b in obj["blocks"]),
            obj.get("q_value_hint"),
            obj.get("notation"),
            obj.get("note"),
            obj.get("optimal_set_note", "plus all defect-zero"),
        )


def load_golden(path: Path) -> list[GoldenRecord]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise ValueError(f"{path}: expected a JSON array of records")
    return [GoldenRecord.from_json(r) for r in raw]


def golden_mismatches(rec: GoldenRecord, r: RunReport) -> list[str]:
    """Differences between a golden record and a computed run (empty if they agree)."""
    where = f"{rec.group} q_order={rec.q_order}"
    dz = r.spec_report.defect_zero
    bp = r.blocks
    problems = []
    computed = [
        i for i, labels in enumerate(bp.blocks) if any(lab not in dz for lab in labels)
    ]
    matched = set()
    for members, shape in rec.blocks:
        hit = [i for i in computed if set(bp.columns[i]) == set(members)]
        if not hit:
            problems.append(f"{where}: no block with columns {list(members)}")
            continue
        i = hit[0]
        matched.add(i)
        if shape == "paren":
            continue
        if bp.shape_tags[i] != shape:
            problems.append(
                f"{where}: block {list(members)} has shape {bp.shape_tags[i]}, expected {shape}"
            )
        elif tuple(members) not in bp.column_orders[i]:
            problems.append(
                f"{where}: block {list(members)} column order does not fit shape {shape}"
            )
    for i in computed:
        if i not in matched:
            problems.append(f"{where}: unexpected block with columns {bp.columns[i]}")
    expected = {m for members, _ in rec.blocks for m in members} | set(dz)
    opt = r.basic_sets.optimal if r.basic_sets else None
    if opt is None or set(opt.members) != expected:
        got = None if opt is None else sorted(opt.members)
        problems.append(f"{where}: optimal basic set {got}, expected {sorted(expected)}")
    return problems


def _golden_worker(args):
    data_dir, rec, words_maxlen = args
    ds = open_group(data_dir, rec.group)
    r = compute_run(ds, RootOfUnity(rec.q_order, 1), words_maxlen)
    return golden_mismatches(rec, r)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    files = dataset_files(args.data_dir)
    if not files:
        print(f"no datasets in {args.data_dir}", file=sys.stderr)
        return 2
    status = 0
    results = []
    for path in files:
        try:
            ds = load_dataset(path)
        except DatasetError as exc:
            results.append({"file": path.name, "ok": False, "error": str(exc)})
            status = 1
            continue
        rep = validate_dataset(ds)
        fails = [f"{f.check}:{f.label or '-'}:{f.detail}" for f in rep.failures()]
        results.append({"file": path.name, "group": ds.group.name, "ok": rep.ok, "failures": fails,
                        "checks": len(rep.results)})
        if not rep.ok:
            status = 1
    if args.format == "json":
        print(dumps(results))
    else:
        for res in results:
            if res["ok"]:
                print(f"{res['file']}: ok ({res['checks']} checks)")
            elif "error" in res:
                print(f"{res['file']}: ERROR {res['error']}")
            else:
                print(f"{res['file']}: FAILED " + "; ".join(res["failures"]))
    return status


def cmd_orders(args) -> int:
    ds = open_group(args.data_dir, args.group)
    orders = critical_orders(ds)
    if args.format == "json":
        print(dumps({"group": ds.group.name, "critical_orders": orders}))
    else:
        print(f"{ds.group.name}: " + " ".join(map(str, orders)))
    return 0


def _run_worker(args):
    data_dir, group, xi, words_maxlen, p_choice = args
    return compute_run(open_group(data_dir, group), xi, words_maxlen, p_choice)


def _runs(args) -> tuple[Dataset, list[RunReport]]:
    ds = open_group(args.data_dir, args.group)
    qs = parse_q_list(args.q)
    if not qs:
        raise UsageError("no q value given")
    jobs = [(args.data_dir, args.group, xi, args.words_maxlen, args.P) for xi in qs]
    if args.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as pool:
            runs = list(pool.map(_run_worker, jobs))
    else:
        runs = [compute_run(ds, xi, args.words_maxlen, args.P) for xi in qs]
    return ds, runs


def _emit(args, ds, runs, sections, json_keys=None) -> None:
    if args.format == "json":
        docs = []
        for r in runs:
            doc = report_to_json(r, args.timings)
            if json_keys is not None:
                doc = {k: v for k, v in doc.items() if k in json_keys or k == "timings"}
            docs.append(doc)
        print(dumps(docs if len(docs) > 1 else docs[0]))
    else:
        texts = [render_text(ds, r, sections) for r in runs]
        if args.timings:
            texts = [t + f"\ntime: {r.timings['total']:.3f}s" for t, r in zip(texts, runs)]
        print("\n\n".join(texts))


_BASE_KEYS = {"format_version", "group", "q", "y", "defect_zero", "semisimple"}


def cmd_decompose(args) -> int:
    ds, runs = _runs(args)
    _emit(args, ds, runs, ("summary", "matrix", "blocks", "basic", "conj"))
    return 1 if any(r.matrix.undetermined for r in runs) else 0


def cmd_blocks(args) -> int:
    ds, runs = _runs(args)
    _emit(args, ds, runs, ("blocks",), _BASE_KEYS | {"blocks", "lemma_gr"})
    return 0


def cmd_basic_sets(args) -> int:
    ds, runs = _runs(args)
    _emit(args, ds, runs, ("basic",), _BASE_KEYS | {"basic_sets"})
    return 0 if all(r.basic_sets and r.basic_sets.optimal for r in runs) else 1


def cmd_conjectures(args) -> int:
    ds, runs = _runs(args)
    _emit(args, ds, runs, ("conj",), _BASE_KEYS | {"conjectures"})
    return 0 if all(r.conjectures is None or r.conjectures.ok for r in runs) else 1


def cmd_golden(args) -> int:
    path = Path(args.golden) if args.golden else Path(args.data_dir) / GOLDEN_FILE
    if not path.is_file():
        print(f"golden file not found: {path}", file=sys.stderr)
        return 2
    records = load_golden(path)
    jobs = [(args.data_dir, rec, args.words_maxlen) for rec in records]
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_golden_worker, jobs))
    else:
        results = [_golden_worker(j) for j in jobs]
    status = 0
    rows = []
    for rec, problems in zip(records, results):
        rows.append({"group": rec.group, "q_order": rec.q_order, "ok": not problems, "problems": problems})
        if problems:
            status = 1
    if args.format == "json":
        print(dumps(rows))
    else:
        for row in rows:
            mark = "ok" if row["ok"] else "MISMATCH"
            print(f"{row['group']} q_order={row['q_order']}: {mark}")
            for p in row["problems"]:
                print(f"  {p}")
    return status


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", type=Path, default=DATA_DIR, help="directory of dataset files")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--words-maxlen", type=int, default=12, help="cap on the word length for character vectors")
    common.add_argument("--parallel", action="store_true", help="compute specializations in worker processes")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings (output is then not reproducible)")

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument("--group", required=True, help="group name, e.g. G4 or G12")
    spec_args.add_argument("--q", required=True, help=Q_HELP)
    spec_args.add_argument("--P", choices=("lcm", "poincare"), default="lcm",
                           help="common multiple of the Schur elements used for generic degrees")

    parser = argparse.ArgumentParser(
        prog="heckedecomp",
        description="Decomposition matrices, blocks and basic sets of cyclotomic Hecke algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check every dataset file").set_defaults(func=cmd_validate)
    p = sub.add_parser("orders", parents=[common], help="orders of q where the algebra is not semisimple")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_orders)
    for name, func, text in (
        ("decompose", cmd_decompose, "full report for one or more values of q"),
        ("blocks", cmd_blocks, "blocks and their shapes"),
        ("basic-sets", cmd_basic_sets, "canonical and optimal basic sets"),
        ("conjectures", cmd_conjectures, "vanishing orders and Broue invariants"),
    ):
        sub.add_parser(name, parents=[common, spec_args], help=text).set_defaults(func=func)
    p = sub.add_parser("golden", parents=[common], help="recompute the stored expected results")
    p.add_argument("--golden", help="golden file (default: golden.json in the data directory)")
    p.set_defaults(func=cmd_golden)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WordBasisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
