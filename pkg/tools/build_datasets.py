"""Generate the shipped G4 and G12 dataset files.

Representation matrices are written out below.  Schur elements are not
typed in: they are recomputed from the matrices by imposing the trace
conditions t(T_w) = delta(w, 1) on a set of minimal words w (one per group
element), solved at rational sample points and interpolated exactly.  The
result is factored over the coefficient field of the dataset and written in
factored form.

    python tools/build_datasets.py [output_dir]
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from heckedecomp import linalg  # noqa: E402
from heckedecomp.exactnum import ONE, ZERO, Cyclotomic, E  # noqa: E402
from heckedecomp.heckedata import parse_dataset, validate_dataset  # noqa: E402
from heckedecomp.laurent import FactoredPoly, LaurentPoly, divide_out_root, evaluate  # noqa: E402

q = LaurentPoly.monomial(1)
one = LaurentPoly.const(1)


def lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def mat(rows):
    return [[lp(x) for x in row] for row in rows]


# ---------------------------------------------------------------------------
# G4: sts = tst, (x-1)(x-q)(x-q^2) = 0


def tuba_wenzl(l1, l2):
    return [mat([[l1, l1], [0, l2]]), mat([[l2, 0], [-l2, l1]])]


def g4_reps():
    Q2 = q ** 2
    half_qinv = LaurentPoly.monomial(-1, Fraction(1, 2))
    s3 = mat([[1, 1, half_qinv], [0, q, 1], [0, 0, Q2]])
    t3 = mat([[Q2, 0, 0], [-2 * Q2, q, 0], [2 * q ** 3, -2 * Q2, 1]])
    return {
        "phi{1,0}": [mat([[1]])] * 2,
        "phi{1,4}": [mat([[q]])] * 2,
        "phi{1,8}": [mat([[Q2]])] * 2,
        "phi{2,5}": tuba_wenzl(q, Q2),
        "phi{2,3}": tuba_wenzl(one, Q2),
        "phi{2,1}": tuba_wenzl(one, q),
        "phi{3,2}": [s3, t3],
    }


# ---------------------------------------------------------------------------
# G12: stus = tust = ustu, (x-1)(x-q^2) = 0


def g12_pair(a):
    Q = q ** 2
    return [
        mat([[Q, a * q - 1], [0, 1]]),
        mat([[1, 0], [q * (q - a), Q]]),
        mat([[a * q, -q * (q - a)], [-(a * q - 1), 1 + Q - a * q]]),
    ]


def g12_cartan():
    # M_g e_g = Q e_g and M_g e_h = e_h + c(g, h) e_g
    Q = q ** 2
    qinv2 = LaurentPoly.monomial(-2)
    c = {
        ("t", "s"): one, ("u", "t"): one, ("s", "u"): -(Q ** 2),
        ("u", "s"): qinv2, ("t", "u"): -Q, ("s", "t"): -Q,
    }
    gens = "stu"
    out = []
    for i, g in enumerate(gens):
        m = linalg.identity(3, one, LaurentPoly())
        m = [row[:] for row in m]
        m[i][i] = Q
        for j, h in enumerate(gens):
            if h != g:
                m[i][j] = c[(g, h)]
        out.append(m)
    return out


def dual(m, scale):
    """scale * (m^-1)^T for a generator with eigenvalues {1, scale}."""
    n = len(m)
    # (m - 1)(m - scale) = 0 gives scale * m^-1 = (1 + scale) - m
    inv = [[(one + scale if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
    return [[inv[j][i] for j in range(n)] for i in range(n)]


def g12_four():
    Q = q ** 2
    i = E(4)
    s = mat([
        [Q, 0, i * q + 1, Q + 2],
        [0, Q, 0, -Q + i * q],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ])
    t = mat([
        [0, -3 * i * q - 3, 0, -Q + 3 * i * q + 3],
        [1, 3 * i * q + 4, 0, Q - 3 * i * q - 3],
        [0, Q ** 2 + Q, Q, -(Q ** 2) - Q],
        [1, 3 * i * q + 3, 0, Q - 3 * i * q - 2],
    ])
    u = mat([
        [Q - 2 * i * q - 2, -(Q ** 2) + 4 * i * q ** 3 + 8 * Q - 10 * i * q - 7,
         2 * i * q + 2, -4 * i * q ** 3 - 10 * Q + 10 * i * q + 4],
        [0, 1, 0, 0],
        [-Q + i * q - 1, Q ** 2 - 3 * i * q ** 3 - 4 * Q - 3,
         2 * Q - i * q + 1, -2 * Q ** 2 + 5 * i * q ** 3 + 3 * Q + i * q + 2],
        [-1, Q - 2 * i * q - 2, 1, -Q + 3 * i * q + 2],
    ])
    return [s, t, u]


def g12_reps():
    Q = q ** 2
    r2 = E(8) - E(8, 3)
    cartan = g12_cartan()
    return {
        "phi{1,0}": [mat([[1]])] * 3,
        "phi{1,12}": [mat([[Q]])] * 3,
        "phi{2,1}": g12_pair(r2),
        "phi{2,4}": [
            mat([[Q, 1], [0, 1]]),
            mat([[1, 0], [-Q, Q]]),
            mat([[0, Q], [-1, 1 + Q]]),
        ],
        "phi{2,5}": g12_pair(-r2),
        "phi{3,2}": cartan,
        "phi{3,6}": [dual(m, Q) for m in cartan],
        "phi{4,3}": g12_four(),
    }


# ---------------------------------------------------------------------------
# Schur elements from the trace conditions


def specialize(m, x):
    return [[evaluate(e, x) for e in row] for row in m]


def group_words(gen_mats):
    """Breadth-first minimal words, one per element of the finite group."""
    n = len(gen_mats[0])
    ident = linalg.identity(n)
    key = lambda m: tuple(tuple(row) for row in m)
    seen = {key(ident): ()}
    frontier = [((), ident)]
    while frontier:
        nxt = []
        for w, m in frontier:
            for k, g in enumerate(gen_mats):
                mm = linalg.matmul(m, g)
                kk = key(mm)
                if kk not in seen:
                    seen[kk] = w + (k,)
                    nxt.append((w + (k,), mm))
        frontier = nxt
    return list(seen.values())


def traces_at(reps, labels, words, x):
    out = []
    for lab in labels:
        mats = [specialize(m, x) for m in reps[lab]]
        cache = {(): linalg.identity(len(mats[0]))}
        for w in sorted(words, key=len):
            if w:
                cache[w] = linalg.matmul(cache[w[:-1]], mats[w[-1]])
        out.append([linalg.trace(cache[w]) for w in words])
    return out


def schur_values_at(reps, labels, words, x):
    tr = traces_at(reps, labels, words, x)
    # unknowns 1/s_chi; one equation per word
    rows = [[tr[c][i] for c in range(len(labels))] + [ONE if not words[i] else ZERO]
            for i in range(len(words))]
    red, piv = linalg.row_reduce(rows)
    k = len(labels)
    if piv != list(range(k)):
        raise RuntimeError(f"trace conditions are singular or inconsistent at q={x}")
    return [red[j][k].inverse() for j in range(k)]


def interpolate(xs, ys) -> LaurentPoly:
    """Newton interpolation; returns the polynomial through (xs, ys)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = LaurentPoly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        p = p * (q - xs[i]) + coef[i]
    return p


def derive_schur(reps, labels, words, window: int) -> dict[str, LaurentPoly]:
    """Schur elements assumed to live in q^-window .. q^window."""
    npts = 2 * window + 1
    xs = [Cyclotomic.from_rational(k) for k in range(2, 2 + npts + 3)]
    vals = [schur_values_at(reps, labels, words, x) for x in xs]
    out = {}
    for c, lab in enumerate(labels):
        ys = [v[c] * x ** window for v, x in zip(vals, xs)]
        p = interpolate(xs[:npts], ys[:npts])
        for x, y in zip(xs[npts:], ys[npts:]):
            if evaluate(p, x) != y:
                raise RuntimeError(f"Schur element of {lab} exceeds the degree window")
        out[lab] = p * LaurentPoly.monomial(-window)
    return out


def factor_over(p: LaurentPoly, n: int, field: int) -> FactoredPoly:
    """Factor p (all roots in mu_n) into irreducibles over Q(zeta_field)."""
    mono = p.valuation()
    rest = LaurentPoly(p.var, {e - mono: c for e, c in p.terms.items()})
    fixing = [k for k in range(1, n) if _gcd(k, n) == 1 and (k - 1) % field == 0] if field > 1 else [
        k for k in range(1, n) if _gcd(k, n) == 1
    ]
    done = set()
    factors = []
    for e in range(n):
        if e in done:
            continue
        orbit = sorted({(e * k) % n for k in fixing} | {e} if e else {0})
        done.update(orbit)
        mult, _ = divide_out_root(rest, E(n, e))
        if not mult:
            continue
        f = one
        for o in orbit:
            f = f * (q - E(n, o))
        factors.append((f, mult))
        for _ in range(mult):
            rest = rest / f
    if not rest.is_constant():
        raise RuntimeError(f"{p} has roots outside mu_{n}")
    return FactoredPoly("q", rest.coeff(0), mono, factors)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------


def build(name, gens, rels, params, mu, central, labels, reps, group_point, faithful,
          n_roots, field, window):
    xs = group_point
    words = group_words([specialize(m, xs) for m in reps[faithful]])
    schur = derive_schur(reps, labels, words, window)
    raw = {
        "format_version": 1,
        "group": {
            "name": name,
            "generators": list(gens),
            "braid_relations": rels,
            "parameters": {g: [lp(p).to_json() for p in params] for g in gens},
            "mu_order": mu,
            "central_candidates": central,
        },
        "characters": [
            {"label": lab, "dim": len(reps[lab][0]), "b": int(lab.split(",")[1].rstrip("}"))}
            for lab in labels
        ],
        "representations": {
            lab: [[[x.to_json() for x in row] for row in m] for m in reps[lab]] for lab in labels
        },
        "schur": {lab: factor_over(schur[lab], n_roots, field).to_json() for lab in labels},
        "poincare": "phi{1,0}",
    }
    ds = parse_dataset(json.loads(json.dumps(raw)))
    report = validate_dataset(ds)
    if not report.ok:
        raise RuntimeError(f"{name}: validation failed: {report.failures()}")
    return raw, len(words)


def main(argv=None):
    argv = argv if argv is not None else sys.argv[1:]
    out = Path(argv[0]) if argv else ROOT / "src" / "heckedecomp" / "data"
    out.mkdir(parents=True, exist_ok=True)
    g4_labels = ["phi{1,0}", "phi{1,4}", "phi{1,8}", "phi{2,5}", "phi{2,3}", "phi{2,1}", "phi{3,2}"]
    g4, n4 = build(
        "G4", "st", [["sts", "tst"]], [1, q, q ** 2], 6, [list("ststst")],
        g4_labels, g4_reps(), E(3), "phi{2,1}", 12, 3, 12,
    )
    g12_labels = ["phi{1,0}", "phi{1,12}", "phi{2,1}", "phi{2,4}", "phi{2,5}",
                  "phi{3,2}", "phi{3,6}", "phi{4,3}"]
    g12, n12 = build(
        "G12", "stu", [["stus", "tust", "ustu"]], [1, q ** 2], 2, [list("stu" * 4)],
        g12_labels, g12_reps(), E(4), "phi{2,1}", 24, 8, 24,
    )
    for name, raw, n in (("G4", g4, n4), ("G12", g12, n12)):
        path = out / f"{name}.json"
        path.write_text(json.dumps(raw, indent=1, sort_keys=False) + "\n", encoding="utf-8")
        print(f"{path}: {n} group elements, validated")


if __name__ == "__main__":
    main()
