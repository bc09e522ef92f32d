"""Dense matrices over a finite field, stored as arrays of element codes."""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Sequence

import numpy as np

from .finite_field import FieldElement, FieldSpec

IndexSet = tuple  # sorted, 1-based column labels


class MatrixError(ValueError):
    pass


def colex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of {1..n} in colexicographic order."""
    subs = itertools.combinations(range(1, n + 1), k)
    return sorted(subs, key=lambda s: s[::-1])


class MatrixFq:
    __slots__ = ("spec", "codes")

    def __init__(self, spec: FieldSpec, entries):
        self.spec = spec
        if isinstance(entries, np.ndarray) and entries.dtype.kind in "iu":
            codes = entries.astype(np.int64, copy=True)
        else:
            rows = [list(row) for row in entries]
            width = len(rows[0]) if rows else 0
            codes = np.array([[spec.code_of(v) for v in row] for row in rows],
                             dtype=np.int64).reshape(len(rows), width)
        if codes.ndim != 2:
            raise MatrixError("matrix entries must be two-dimensional")
        if codes.size and (codes.min() < 0 or codes.max() >= spec.q):
            raise MatrixError("entry code out of range for field")
        codes.setflags(write=False)
        self.codes = codes

    @classmethod
    def zeros(cls, spec: FieldSpec, k: int, n: int) -> "MatrixFq":
        return cls(spec, np.zeros((k, n), dtype=np.int64))

    @property
    def k(self) -> int:
        return self.codes.shape[0]

    @property
    def n(self) -> int:
        return self.codes.shape[1]

    @property
    def shape(self):
        return self.codes.shape

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.spec, int(self.codes[i, j]))

    def __eq__(self, other):
        return (isinstance(other, MatrixFq) and self.spec == other.spec
                and self.codes.shape == other.codes.shape
                and bool(np.array_equal(self.codes, other.codes)))

    def __hash__(self):
        return hash((self.spec.key, self.codes.shape, self.codes.tobytes()))

    def __repr__(self):
        rows = [[self.spec.value_of(c) for c in row] for row in self.codes]
        return f"MatrixFq({rows}, F_{self.spec.q})"

    def values(self) -> list[list]:
        return [[self.spec.value_of(int(c)) for c in row] for row in self.codes]

    def transpose(self) -> "MatrixFq":
        return MatrixFq(self.spec, self.codes.T.copy())

    def matmul(self, other: "MatrixFq") -> "MatrixFq":
        if self.spec != other.spec:
            raise MatrixError("mismatched fields")
        if self.n != other.k:
            raise MatrixError("shape mismatch")
        F = self.spec
        out = np.zeros((self.k, other.n), dtype=np.int64)
        for t in range(self.n):
            out = F.add(out, F.mul(self.codes[:, t:t + 1], other.codes[t:t + 1, :]))
        return MatrixFq(F, out)

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "entries": self.values(),
                "field": self.spec.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "MatrixFq":
        from .finite_field import FieldSpec as _FS

        spec = _FS.from_dict(d["field"])
        entries = d["entries"]
        if not entries:
            return cls.zeros(spec, d.get("k", 0), d["n"])
        return cls(spec, entries)


def rref(M: MatrixFq) -> tuple[MatrixFq, IndexSet, int]:
    """Reduced row echelon form, 1-based pivot columns, and rank."""
    F = M.spec
    a = M.codes.copy()
    k, n = a.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == k:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = F.mul(a[row], F.inv(a[row, col]))
        for r in range(k):
            if r != row and a[r, col] != 0:
                a[r] = F.sub(a[r], F.mul(a[row], a[r, col]))
        pivots.append(col + 1)
        row += 1
    return MatrixFq(F, a), tuple(pivots), len(pivots)


def rank(M: MatrixFq) -> int:
    return rref(M)[2]


def det(M: MatrixFq) -> FieldElement:
    """Determinant of a square matrix by Gaussian elimination."""
    F = M.spec
    if M.k != M.n:
        raise MatrixError("determinant of a non-square matrix")
    a = M.codes.copy()
    k = a.shape[0]
    d = 1
    for col in range(k):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            return FieldElement(F, 0)
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            d = int(F.neg_table[d])
        pv = int(a[col, col])
        d = int(F.mul(d, pv))
        pinv = F.inv(pv)
        for r in range(col + 1, k):
            if a[r, col] != 0:
                f = F.mul(a[r, col], pinv)
                a[r] = F.sub(a[r], F.mul(a[col], f))
    return FieldElement(F, d)


def _check_index_set(M: MatrixFq, I: Sequence[int]) -> list[int]:
    cols = [int(i) - 1 for i in I]
    if len(cols) != M.k:
        raise MatrixError(f"index set of size {len(cols)} for a matrix with {M.k} rows")
    if any(c < 0 or c >= M.n for c in cols) or sorted(set(cols)) != cols:
        raise MatrixError(f"{tuple(I)} is not an increasing subset of 1..{M.n}")
    return cols


def minor(M: MatrixFq, I: Sequence[int]) -> FieldElement:
    """Maximal minor on the 1-based columns ``I``: the Plucker coordinate."""
    cols = _check_index_set(M, I)
    F = M.spec
    sub = M.codes[:, cols]
    if M.k == 2:
        a, b, c, d = (int(x) for x in sub.ravel())
        return FieldElement(F, int(F.sub(F.mul(a, d), F.mul(b, c))))
    return det(MatrixFq(F, sub))


def plucker_vector(M: MatrixFq) -> dict[IndexSet, FieldElement]:
    if rank(M) != M.k:
        raise MatrixError("Plucker coordinates need a full-rank matrix")
    return {I: minor(M, I) for I in colex_subsets(M.n, M.k)}


def null_space_basis(M: MatrixFq) -> MatrixFq:
    """RREF basis of {v : M v^T = 0}, an (n-k) x n matrix."""
    R, pivots, rk = rref(M)
    if rk != M.k:
        raise MatrixError("null space requested for a rank-deficient matrix")
    F = M.spec
    n = M.n
    piv0 = [p - 1 for p in pivots]
    free = [c for c in range(n) if c not in piv0]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv0):
            basis[t, pc] = F.neg_table[R.codes[i, f]]
    return rref(MatrixFq(F, basis))[0]


def alt_rows(M: MatrixFq) -> MatrixFq:
    """Scale column j (1-based) by (-1)^(j-1)."""
    a = M.codes.copy()
    a[:, 1::2] = M.spec.neg_table[a[:, 1::2]]
    return MatrixFq(M.spec, a)


def from_rows(spec: FieldSpec, rows: Iterable[Iterable]) -> MatrixFq:
    return MatrixFq(spec, [list(r) for r in rows])
