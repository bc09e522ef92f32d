"""Named verification suites; each returns a JSON-serializable report."""
from __future__ import annotations

from typing import Callable

from . import closed_forms as cf
from .finite_field import make_field
from .grassmannian import (Filter, count, count_table, dual, dual_inverse,
                           enumerate_subspaces, gaussian_binomial, is_tnn, lift)
from .matrix import colex_subsets
from .structures import conjecture_scan, dual_matroid, positroids


def _report(suite: str, n_range, ok: bool, **extra) -> dict:
    return {"suite": suite, "n_range": list(n_range), "status": "pass" if ok else "fail", **extra}


def duality(max_n: int = 5, p: int = 3, r: int = 1) -> dict:
    """alt-perp maps TNN points bijectively onto the complementary TNN points."""
    F = make_field(p, r)
    failures = []
    for n in range(0, max_n + 1):
        for k in range(n + 1):
            src = list(enumerate_subspaces(k, n, F, Filter.TNN))
            tgt = set(enumerate_subspaces(n - k, n, F, Filter.TNN))
            image = [dual(V) for V in src]
            if set(image) != tgt or len(set(image)) != len(src):
                failures.append({"k": k, "n": n, "reason": "not a bijection"})
            if any(dual_inverse(W) != V for V, W in zip(src, image)):
                failures.append({"k": k, "n": n, "reason": "inverse mismatch"})
            for V, W in zip(src, image):
                if not plucker_complementary(V, W):
                    failures.append({"k": k, "n": n, "reason": "Plucker ratio not constant"})
                    break
    return _report("duality", [0, max_n], not failures, q=F.q, failures=failures)


def plucker_complementary(V, W) -> bool:
    """Delta_I(W) = alpha * Delta_{[n]-I}(V) for one nonzero alpha and all I."""
    F = V.spec
    n = V.n
    pv, pw = V.plucker(), W.plucker()
    ratio = None
    for I in colex_subsets(n, W.k):
        comp = tuple(i for i in range(1, n + 1) if i not in I)
        a, b = pw[I], pv[comp]
        if (a.code == 0) != (b.code == 0):
            return False
        if a.code:
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None and ratio.code != 0


def closed_forms_f3(max_n: int = 8) -> dict:
    F = make_field(3)
    disagree = [n for n in range(2, 16) if len({cf.f3_k2(n, v) for v in range(1, 7)}) != 1]
    mismatch = [n for n in range(2, max_n + 1) if cf.f3_k2(n) != count(2, n, F)]
    return _report("f3-k2", [2, 15], not disagree and not mismatch,
                   enumerated_up_to=max_n, variant_disagreements=disagree,
                   enumeration_mismatches=mismatch)


def closed_forms_f5(max_n: int = 6) -> dict:
    F = make_field(5)
    disagree = [n for n in range(2, 16) if len({cf.f5_k2(n, v) for v in range(1, 4)}) != 1]
    mismatch = [n for n in range(2, max_n + 1) if cf.f5_k2(n) != count(2, n, F)]
    pf = cf.partial_fraction_check(20)
    return _report("f5-k2", [2, 15], not disagree and not mismatch and pf["status"] == "pass",
                   enumerated_up_to=max_n, variant_disagreements=disagree,
                   enumeration_mismatches=mismatch)


def k1(max_n: int = 6, qs=((3, 1), (5, 1), (7, 1), (3, 2), (13, 1))) -> dict:
    failures = []
    for p, r in qs:
        F = make_field(p, r)
        for n in range(1, max_n + 1):
            if cf.k1_nonneg(F, n) != count(1, n, F, Filter.TNN):
                failures.append({"q": F.q, "n": n, "filter": "tnn"})
            if cf.k1_pos(F, n) != count(1, n, F, Filter.TP):
                failures.append({"q": F.q, "n": n, "filter": "tp"})
    for n in range(2, 6):
        if not (cf.k1_nonneg_poly(n) == cf.K1_NONNEG_PRINTED[n] == cf.k1_nonneg_poly_geometric(n)):
            failures.append({"poly": "nonneg", "n": n})
        if not (cf.k1_pos_poly(n) == cf.K1_POS_PRINTED[n] == cf.k1_pos_poly_power(n)):
            failures.append({"poly": "pos", "n": n})
    return _report("k1", [1, max_n], not failures, failures=failures)


def chebyshev(max_n: int = 20) -> dict:
    bad = [n for n in range(max_n + 1)
           if cf.chebyshev_via_tilings(n) != cf.chebyshev_poly(n)
           or len(list(cf.tilings(n))) != cf.fibonacci(n + 1)]
    t4_ok = cf.chebyshev_poly(4) == cf.Poly([1, 0, -8, 0, 8])
    tile_bad = [n for n in range(15)
                if cf.chebyshev_low_coeff(n) != cf.chebyshev_poly(n + 6)[n]]
    return _report("chebyshev", [0, max_n], not bad and t4_ok and not tile_bad,
                   tiling_mismatches=bad, low_coeff_mismatches=tile_bad)


def plane_recurrence(max_n: int = 20) -> dict:
    return cf.plane_recurrence_check(max_n)


def f5_column_pairs(max_n: int | None = None) -> dict:
    rep = cf.f5_column_pair_table()
    rep["n_range"] = [2, 2]
    return rep


def partial_fraction(max_n: int = 20) -> dict:
    return cf.partial_fraction_check(max_n)


def subfield(max_n: int = 5) -> dict:
    """Gr_{2,4}(F_3) lifts injectively into the TNN part over F_9; F_9 row check."""
    F3, F9 = make_field(3), make_field(3, 2)
    pts = list(enumerate_subspaces(2, 4, F3, Filter.ALL))
    lifted = [lift(V, F9) for V in pts]
    inj = len(set(lifted)) == len(pts) == gaussian_binomial(4, 2, 3)
    all_tnn = all(is_tnn(W) for W in lifted)
    row = [count(k, max_n, F9) for k in range(max_n + 1)]
    bound = all(row[k] >= gaussian_binomial(max_n, k, 3) for k in range(max_n + 1))
    return _report("subfield", [4, max_n], inj and all_tnn and bound,
                   lifted=len(set(lifted)), f9_row=row)


def positroid_dual(max_n: int = 4, p: int = 3) -> dict:
    F = make_field(p)
    failures = []
    for n in range(1, max_n + 1):
        for k in range(n + 1):
            mine = positroids(k, n, F)
            theirs = positroids(n - k, n, F)
            missing = [M.to_dict() for M in mine if dual_matroid(M) not in theirs]
            if missing:
                failures.append({"k": k, "n": n, "missing": missing})
    return _report("positroid-dual", [1, max_n], not failures, q=F.q, failures=failures)


def conjecture(max_n: int = 5) -> dict:
    rows = {}
    for p, top in ((3, max(6, max_n)), (5, max_n), (7, max_n)):
        table = count_table(make_field(p), top)
        for n in range(top + 1):
            rows[f"q={p},n={n}"] = table.row(n)
    rep = conjecture_scan(rows)
    rep["n_range"] = [0, max_n]
    return rep


SUITES: dict[str, tuple[Callable[..., dict], int | None]] = {
    "duality": (duality, 5),
    "closed-forms-f3": (closed_forms_f3, 8),
    "closed-forms-f5": (closed_forms_f5, 6),
    "k1": (k1, 6),
    "chebyshev": (chebyshev, 20),
    "lemma-rec": (plane_recurrence, 20),
    "lemma-2x2-f5": (f5_column_pairs, None),
    "partial-fraction": (partial_fraction, 20),
    "subfield": (subfield, 5),
    "positroid-dual": (positroid_dual, 4),
    "conjecture-scan": (conjecture, 5),
}


def run_suite(name: str, max_n: int | None = None) -> dict:
    fn, default = SUITES[name]
    arg = default if max_n is None else max_n
    return fn(arg) if arg is not None else fn()
