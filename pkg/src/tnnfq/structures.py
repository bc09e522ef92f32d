"""Sign variation, cyclic shifts, matroids and F_q-positroids."""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .finite_field import FieldElement, FieldSpec
from .grassmannian import (Filter, Subspace, canonicalize, enumerate_subspaces,
                           is_tnn)
from .matrix import MatrixFq

MAX_VARIATION_CAP = 1 << 22


def _codes(v, spec: FieldSpec | None) -> tuple[np.ndarray, FieldSpec]:
    v = list(v)
    if v and isinstance(v[0], FieldElement):
        spec = v[0].spec
        return np.array([e.code for e in v], dtype=np.int64), spec
    if spec is None:
        raise ValueError("a FieldSpec is needed for raw values")
    return np.array([spec.code_of(e) for e in v], dtype=np.int64), spec


def sign_variation(v: Sequence, spec: FieldSpec | None = None) -> int:
    """Number of sign changes in v, ignoring zeros."""
    codes, spec = _codes(v, spec)
    if codes.size == 0:
        return 0
    return int(_kernels.sign_variation_batch(codes[None, :], spec.sign_table)[0])


def span_vectors(V: Subspace) -> np.ndarray:
    """All q^k vectors of V as rows of codes."""
    F = V.spec
    k, n = V.k, V.n
    if F.q ** k > MAX_VARIATION_CAP:
        raise ValueError(f"q^k = {F.q ** k} exceeds the brute-force cap")
    coeffs = np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64)
    coeffs = coeffs.reshape(-1, k)
    out = np.zeros((coeffs.shape[0], n), dtype=np.int64)
    for i in range(k):
        out = F.add(out, F.mul(coeffs[:, i:i + 1], V.canonical.codes[i][None, :]))
    return out


def max_variation(V: Subspace) -> tuple[int, list]:
    """Maximum sign variation over V, with one vector attaining it."""
    vecs = span_vectors(V)
    var = _kernels.sign_variation_batch(vecs, V.spec.sign_table)
    i = int(np.argmax(var))
    return int(var[i]), [V.spec.value_of(int(c)) for c in vecs[i]]


def shift_matrix(M: MatrixFq) -> MatrixFq:
    """Apply (v1..vn) -> (v2..vn, (-1)^(k-1) v1) to every row."""
    a = np.roll(M.codes, -1, axis=1)
    if M.k % 2 == 0:
        a[:, -1] = M.spec.neg_table[a[:, -1]]
    return MatrixFq(M.spec, a)


def cyclic_shift(V: Subspace) -> Subspace:
    if V.k == 0:
        return V
    return canonicalize(shift_matrix(V.canonical))


def shift_order(V: Subspace, limit: int = 10_000) -> int:
    """Smallest t >= 1 with shift^t(V) = V."""
    W = cyclic_shift(V)
    t = 1
    while W != V:
        W = cyclic_shift(W)
        t += 1
        if t > limit:
            raise RuntimeError("cyclic shift order exceeds limit")
    return t


def fixed_points(k: int, n: int, spec: FieldSpec, restrict_tnn: bool = False,
                 cap: int | None = None) -> list[Subspace]:
    filt = Filter.TNN if restrict_tnn else Filter.ALL
    return [V for V in enumerate_subspaces(k, n, spec, filt, cap=cap) if cyclic_shift(V) == V]


@dataclass(frozen=True)
class Matroid:
    n: int
    k: int
    bases: frozenset

    def __post_init__(self):
        if not self.bases:
            raise ValueError("a matroid needs at least one basis")
        for B in self.bases:
            if len(B) != self.k or not all(1 <= i <= self.n for i in B):
                raise ValueError(f"{B} is not a {self.k}-subset of 1..{self.n}")

    @classmethod
    def from_bases(cls, n: int, k: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        return cls(n, k, frozenset(tuple(sorted(b)) for b in bases))

    def sorted_bases(self) -> list[tuple]:
        return sorted(self.bases)

    def satisfies_exchange(self) -> bool:
        """Basis exchange: for A, B and a in A-B some b in B-A has A-a+b a basis."""
        for A in self.bases:
            for B in self.bases:
                for a in set(A) - set(B):
                    if not any(tuple(sorted((set(A) - {a}) | {b})) in self.bases
                               for b in set(B) - set(A)):
                        return False
        return True

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "bases": [list(b) for b in self.sorted_bases()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Matroid":
        return cls.from_bases(d["n"], d["k"], d["bases"])


def matroid_of(V: Subspace) -> Matroid:
    return Matroid.from_bases(V.n, V.k, [I for I, d in V.plucker().items() if d.code != 0])


def dual_matroid(M: Matroid) -> Matroid:
    ground = set(range(1, M.n + 1))
    return Matroid.from_bases(M.n, M.n - M.k, [ground - set(B) for B in M.bases])


class PositroidMode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    WITNESS = "witness"


def is_positroid(M: Matroid, spec: FieldSpec, mode=PositroidMode.EXHAUSTIVE,
                 witness: Subspace | None = None, cap: int | None = None):
    """Whether M = M_V for some totally nonnegative V over ``spec``.

    Returns ``(flag, witness_or_None)``.  Witness mode only checks the given V.
    """
    mode = PositroidMode(mode)
    if mode is PositroidMode.WITNESS:
        if witness is None:
            raise ValueError("witness mode needs a subspace")
        ok = witness.spec == spec and is_tnn(witness) and matroid_of(witness) == M
        return ok, (witness if ok else None)
    for V in enumerate_subspaces(M.k, M.n, spec, Filter.TNN, cap=cap):
        if matroid_of(V) == M:
            return True, V
    return False, None


def positroids(k: int, n: int, spec: FieldSpec, cap: int | None = None) -> set:
    """All F_q-positroids of rank k on [n]."""
    return {matroid_of(V) for V in enumerate_subspaces(k, n, spec, Filter.TNN, cap=cap)}


def linear_matroids(k: int, n: int, spec: FieldSpec, cap: int | None = None) -> set:
    return {matroid_of(V) for V in enumerate_subspaces(k, n, spec, Filter.ALL, cap=cap)}


def sequence_checks(seq: Sequence[int]) -> dict:
    s = list(seq)
    if not s:
        raise ValueError("sequence must be nonempty")
    peak = s.index(max(s))
    unimodal = (all(s[i] <= s[i + 1] for i in range(peak))
                and all(s[i] >= s[i + 1] for i in range(peak, len(s) - 1)))
    log_concave = all(s[i] ** 2 >= s[i - 1] * s[i + 1] for i in range(1, len(s) - 1))
    return {"palindromic": s == s[::-1], "unimodal": unimodal, "log_concave": log_concave}


def conjecture_scan(rows: dict) -> dict:
    """Report unimodality/log-concavity per row; violations are flagged, never raised."""
    report = []
    for label, seq in rows.items():
        checks = sequence_checks(seq)
        report.append({"row": label, "sequence": list(seq), **checks,
                       "flagged": not (checks["unimodal"] and checks["log_concave"])})
    return {"suite": "conjecture-scan", "rows": report,
            "flagged": [r["row"] for r in report if r["flagged"]], "status": "pass"}
