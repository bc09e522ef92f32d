"""Points of Gr_{k,n}(F_q), total nonnegativity, and the pruned enumerator."""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .finite_field import FieldError, FieldSpec, Sign, embedding_codes
from .matrix import (MatrixError, MatrixFq, alt_rows, colex_subsets, minor,
                     null_space_basis, plucker_vector, rref)

DEFAULT_WORK_CAP = 10 ** 9


class Filter(str, enum.Enum):
    ALL = "all"
    TNN = "tnn"
    TP = "tp"

    @property
    def mode(self) -> int:
        return {Filter.ALL: _kernels.MODE_ALL, Filter.TNN: _kernels.MODE_TNN,
                Filter.TP: _kernels.MODE_TP}[self]


class WorkCapExceeded(RuntimeError):
    def __init__(self, visited: int, cap: int, estimate: int):
        super().__init__(f"work cap {cap} exceeded after {visited} nodes "
                         f"(unpruned search space estimate {estimate})")
        self.visited, self.cap, self.estimate = visited, cap, estimate


def work_cap() -> int:
    return int(os.environ.get("TNN_WORK_CAP", DEFAULT_WORK_CAP))


def search_space(k: int, n: int, q: int) -> int:
    """Upper bound C(n,k) * q^(k(n-k)) on the unpruned RREF search."""
    return math.comb(n, k) * q ** (k * (n - k))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True, eq=False)
class Subspace:
    """A point of Gr_{k,n}(F_q), held as its unique RREF matrix."""

    canonical: MatrixFq
    pivots: tuple

    @property
    def spec(self) -> FieldSpec:
        return self.canonical.spec

    @property
    def k(self) -> int:
        return self.canonical.k

    @property
    def n(self) -> int:
        return self.canonical.n

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"Subspace({self.canonical.values()}, F_{self.spec.q})"

    def plucker(self):
        if self.k == 0:
            return {(): self.spec(1)}
        return plucker_vector(self.canonical)

    def to_dict(self) -> dict:
        return self.canonical.to_dict()


def canonicalize(M: MatrixFq) -> Subspace:
    R, pivots, rk = rref(M)
    if rk != M.k:
        raise MatrixError(f"matrix has rank {rk}, expected {M.k}")
    return Subspace(R, pivots)


def from_codes(spec: FieldSpec, codes: np.ndarray, pivots) -> Subspace:
    """Wrap an array already known to be in RREF (enumerator output)."""
    return Subspace(MatrixFq(spec, codes), tuple(pivots))


def _signs(V: Subspace) -> np.ndarray:
    return np.array([int(d.sign()) for d in V.plucker().values()])


def is_tnn(V: Subspace) -> bool:
    return bool(np.all(_signs(V) >= 0))


def is_tp(V: Subspace) -> bool:
    return bool(np.all(_signs(V) > 0))


def _subset_schedule(k: int, n: int):
    """Per column c, the 0-based k-subsets whose largest element is c."""
    rows = []
    start = np.zeros(n + 1, dtype=np.int64)
    for c in range(n):
        start[c] = len(rows)
        if k >= 1:
            for rest in colex_subsets(c, k - 1):
                rows.append([i - 1 for i in rest] + [c])
    start[n] = len(rows)
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), max(k, 1))
    return arr, start


class _Plan:
    def __init__(self, k: int, n: int, spec: FieldSpec, filt: Filter, cap: int):
        self.k, self.n, self.spec, self.filt, self.cap = k, n, spec, filt, cap
        self.tables = spec.dense_tables()
        self.sign_t = spec.sign_table
        self.order = spec.order
        self.subsets, self.sub_start = _subset_schedule(k, n)
        self.pivot_sets = colex_subsets(n, k)

    def run(self, pivots, cap, out_capacity=0):
        piv = np.array([p - 1 for p in pivots], dtype=np.int64)
        out = np.zeros((out_capacity, self.k, self.n), dtype=np.int64)
        add_t, mul_t, neg_t, inv_t = self.tables
        cnt, visited = _kernels.enumerate_pivot_set(
            piv, self.k, self.n, self.order, add_t, mul_t, neg_t, inv_t, self.sign_t,
            self.filt.mode, self.subsets, self.sub_start, cap, out)
        return int(cnt), int(visited), out


def _validate(k: int, n: int):
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")


def _as_filter(filt) -> Filter:
    return filt if isinstance(filt, Filter) else Filter(str(filt).lower())


def _trivial(k: int, n: int, spec: FieldSpec) -> Subspace:
    codes = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        codes[i, i] = 1
    return from_codes(spec, codes, tuple(range(1, k + 1)))


def count_by_pivots(k: int, n: int, spec: FieldSpec, filt=Filter.TNN, *,
                    cap: int | None = None, workers: int = 1,
                    progress: Callable[[int, int], None] | None = None) -> dict:
    """Per-pivot-set counts, keyed by pivot set in colex order."""
    _validate(k, n)
    filt = _as_filter(filt)
    cap = work_cap() if cap is None else cap
    if k == 0 or k == n:
        return {tuple(range(1, k + 1)): 1}
    plan = _Plan(k, n, spec, filt, cap)
    estimate = search_space(k, n, spec.q)

    # every pivot set gets the full remaining budget; total is checked after
    def job(pivots):
        return plan.run(pivots, cap)[:2]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, plan.pivot_sets))
    else:
        results = []
        for i, piv in enumerate(plan.pivot_sets):
            results.append(job(piv))
            if progress:
                progress(i + 1, len(plan.pivot_sets))
    total_visited = 0
    out = {}
    for piv, (cnt, visited) in zip(plan.pivot_sets, results):
        total_visited += visited
        if cnt == _kernels.CAP_EXCEEDED or total_visited > cap:
            raise WorkCapExceeded(total_visited, cap, estimate)
        out[piv] = cnt
    return out


def count(k: int, n: int, spec: FieldSpec, filt=Filter.TNN, *, cap: int | None = None,
          workers: int = 1, progress=None) -> int:
    return sum(count_by_pivots(k, n, spec, filt, cap=cap, workers=workers,
                               progress=progress).values())


def enumerate_subspaces(k: int, n: int, spec: FieldSpec, filt=Filter.TNN, *,
                        cap: int | None = None) -> Iterator[Subspace]:
    """Stream subspaces by colex pivot set, then free entries in canonical order."""
    _validate(k, n)
    filt = _as_filter(filt)
    cap = work_cap() if cap is None else cap
    if k == 0 or k == n:
        V = _trivial(k, n, spec)
        if filt is not Filter.TP or k == 0 or is_tp(V):
            yield V
        return
    plan = _Plan(k, n, spec, filt, cap)
    estimate = search_space(k, n, spec.q)
    spent = 0
    for piv in plan.pivot_sets:
        cnt, visited, _ = plan.run(piv, cap - spent)
        if cnt == _kernels.CAP_EXCEEDED:
            raise WorkCapExceeded(spent + visited, cap, estimate)
        spent += visited
        if cnt == 0:
            continue
        cnt2, visited2, out = plan.run(piv, cap, out_capacity=cnt)
        assert cnt2 == cnt
        for codes in out:
            yield from_codes(spec, codes, piv)


def dual(V: Subspace) -> Subspace:
    """alt of the orthogonal complement, in Gr_{n-k,n}."""
    if V.k == 0:
        return _trivial(V.n, V.n, V.spec)
    if V.k == V.n:
        return _trivial(0, V.n, V.spec)
    return canonicalize(alt_rows(null_space_basis(V.canonical)))


def dual_inverse(W: Subspace) -> Subspace:
    """perp of alt; inverse of :func:`dual`."""
    if W.k == 0:
        return _trivial(W.n, W.n, W.spec)
    if W.k == W.n:
        return _trivial(0, W.n, W.spec)
    return canonicalize(null_space_basis(alt_rows(W.canonical)))


def lift(V: Subspace, target: FieldSpec) -> Subspace:
    """Entrywise subfield embedding into F_{p^s}, s = 2mr; lands in the TNN part."""
    src = V.spec
    if target.p != src.p or target.r % (2 * src.r):
        raise FieldError(f"F_{target.q} is not an even-degree extension of F_{src.q}")
    image = embedding_codes(src, target)
    return from_codes(target, image[V.canonical.codes], V.pivots)


@dataclass
class CountTable:
    q: int
    max_n: int
    filter: Filter
    cells: dict

    def row(self, n: int) -> list[int]:
        return [self.cells[(k, n)] for k in range(n + 1)]

    def to_csv(self) -> str:
        lines = ["n,k,count"]
        for n in range(self.max_n + 1):
            for k in range(n + 1):
                lines.append(f"{n},{k},{self.cells[(k, n)]}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"q": self.q, "filter": self.filter.value,
                "cells": [{"n": n, "k": k, "count": self.cells[(k, n)]}
                          for n in range(self.max_n + 1) for k in range(n + 1)]}

    @classmethod
    def from_dict(cls, d: dict) -> "CountTable":
        cells = {(c["k"], c["n"]): int(c["count"]) for c in d["cells"]}
        max_n = max(n for _, n in cells)
        return cls(d["q"], max_n, Filter(d["filter"]), cells)


class PalindromyError(AssertionError):
    pass


def count_table(spec: FieldSpec, max_n: int, filt=Filter.TNN, *, cap: int | None = None,
                workers: int = 1, check_palindromy: bool = True) -> CountTable:
    filt = _as_filter(filt)
    cells = {}
    for n in range(max_n + 1):
        for k in range(n + 1):
            cells[(k, n)] = count(k, n, spec, filt, cap=cap, workers=workers)
    table = CountTable(spec.q, max_n, filt, cells)
    if check_palindromy:
        for n in range(max_n + 1):
            row = table.row(n)
            if row != row[::-1]:
                raise PalindromyError(f"row n={n} is not palindromic: {row}")
    return table


def minors_sign_ok(M: MatrixFq, strict: bool = False) -> bool:
    """All maximal minors of this particular representative have sign >= 0 (> 0)."""
    signs = [minor(M, I).sign() for I in colex_subsets(M.n, M.k)]
    if strict:
        return all(s == Sign.POSITIVE for s in signs)
    return all(s != Sign.NEGATIVE for s in signs)
