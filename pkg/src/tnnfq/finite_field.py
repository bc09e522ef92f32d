"""Finite fields F_{p^r} with the square-class notion of positivity.

Elements are stored as integer codes ``sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``x**i`` in the polynomial representative.  Constants of the
prime field therefore keep their usual integer value.  The *canonical* order
used for enumeration compares coefficient vectors low-degree-first; it is
exposed through :attr:`FieldSpec.order` and :attr:`FieldSpec.rank`.
"""
from __future__ import annotations

import enum
import functools
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_FIELD_CAP = 1 << 20
LOG_TABLE_CAP = 1 << 16
DENSE_TABLE_CAP = 1 << 10


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- scalar polynomial arithmetic over F_p (coefficient lists, constant first)

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    r = len(modulus) - 1
    if r < 1 or modulus[-1] % p != 1:
        return False
    if r == 1:
        return True
    for d in range(1, r // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible, low-degree coefficients first."""
    if r == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=r):
        cand = list(low) + [1]
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {r} over F_{p}")


class FieldSpec:
    """Immutable description of F_{p^r} with precomputed tables.

    Vectorized arithmetic methods (:meth:`add`, :meth:`mul`, ...) accept and
    return numpy arrays (or ints) of element codes.
    """

    def __init__(self, p: int, r: int = 1, modulus: Sequence[int] | None = None,
                 cap: int = DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if r < 1:
            raise FieldError("extension degree must be >= 1")
        q = p ** r
        if q > cap:
            raise FieldError(f"field size {q} exceeds cap {cap}")
        if modulus is None:
            modulus = smallest_irreducible(p, r)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or not is_irreducible(modulus, p):
            raise FieldError(f"{list(modulus)} is not a monic irreducible of degree {r} over F_{p}")
        self.p, self.r, self.q = p, r, q
        self.modulus = modulus
        self._powers = p ** np.arange(r, dtype=np.int64)

        codes = np.arange(q, dtype=np.int64)
        self.digits_table = (codes[:, None] // self._powers) % p
        # canonical order: coefficient vectors compared low-degree-first
        self.order = np.array(
            sorted(range(q), key=lambda c: tuple(self.digits_table[c])), dtype=np.int64)
        self.rank = np.empty(q, dtype=np.int64)
        self.rank[self.order] = codes

        self.neg_table = self._from_digits((-self.digits_table) % p)
        self._exp = self._log = None
        self.primitive_root_code = self._find_primitive_root()
        if q <= LOG_TABLE_CAP and q > 2:
            self._build_log_tables()

        sq = self.mul(codes, codes)
        sign = np.full(q, Sign.NEGATIVE, dtype=np.int8)
        sign[sq] = Sign.POSITIVE
        sign[0] = Sign.ZERO
        self.sign_table = sign
        self._dense = None

    # -- construction helpers

    def _from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) * self._powers).sum(axis=-1)

    def _digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def _scalar_poly(self, code: int) -> list[int]:
        return _trim([int(d) for d in self.digits_table[code]])

    def _scalar_code(self, poly: Sequence[int]) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(poly))

    def _poly_pow(self, code: int, e: int) -> int:
        result, base = [1], self._scalar_poly(code)
        while e:
            if e & 1:
                result = _poly_mod(_poly_mul(result, base, self.p), self.modulus, self.p)
            base = _poly_mod(_poly_mul(base, base, self.p), self.modulus, self.p)
            e >>= 1
        return self._scalar_code(result)

    def _find_primitive_root(self) -> int:
        if self.q == 2:
            return 1
        m = self.q - 1
        factors = prime_factors(m)
        for code in self.order:
            code = int(code)
            if code == 0:
                continue
            if all(self._poly_pow(code, m // f) != 1 for f in factors):
                return code
        raise FieldError("no primitive root found")  # unreachable for a field

    def _build_log_tables(self):
        m = self.q - 1
        exp = np.empty(2 * m, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        g = self._scalar_poly(self.primitive_root_code)
        cur = [1]
        for i in range(m):
            c = self._scalar_code(cur)
            exp[i] = c
            log[c] = i
            cur = _poly_mod(_poly_mul(cur, g, self.p), self.modulus, self.p)
        exp[m:] = exp[:m]
        self._exp, self._log = exp, log

    # -- vectorized arithmetic on codes

    def add(self, a, b):
        if self.r == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self._from_digits((self._digits(a) + self._digits(b)) % self.p)

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a * b) % self.p
        if self._log is not None:
            res = self._exp[self._log[a] + self._log[b]]
            return np.where((a == 0) | (b == 0), 0, res)
        return self._poly_mul_vec(a, b)

    def _poly_mul_vec(self, a, b):
        # schoolbook product of digit vectors, then reduction by the modulus
        p, r = self.p, self.r
        da, db = np.broadcast_arrays(self._digits(a), self._digits(b))
        prod = np.zeros(da.shape[:-1] + (2 * r - 1,), dtype=np.int64)
        for i in range(r):
            prod[..., i:i + r] += da[..., i:i + 1] * db
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for top in range(2 * r - 2, r - 1, -1):
            coef = prod[..., top:top + 1]
            prod[..., top - r:top + 1] = (prod[..., top - r:top + 1] - coef * mod) % p
        return self._from_digits(prod[..., :r])

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def dense_tables(self):
        """Full (add, mul, neg, inv) lookup tables for the enumeration kernels."""
        if self._dense is None:
            if self.q > DENSE_TABLE_CAP:
                raise FieldError(f"dense tables need q <= {DENSE_TABLE_CAP}, got {self.q}")
            codes = np.arange(self.q, dtype=np.int64)
            add_t = np.ascontiguousarray(self.add(codes[:, None], codes[None, :]), dtype=np.int64)
            mul_t = np.ascontiguousarray(self.mul(codes[:, None], codes[None, :]), dtype=np.int64)
            inv_t = np.zeros(self.q, dtype=np.int64)
            inv_t[1:] = self.inv(codes[1:])
            self._dense = (add_t, mul_t, self.neg_table.copy(), inv_t)
        return self._dense

    # -- element-level API

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.code_of(value))

    def code_of(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value.code
        if isinstance(value, (list, tuple)):
            if len(value) > self.r:
                raise FieldError(f"coefficient vector longer than degree {self.r}")
            return self._scalar_code([int(c) % self.p for c in value])
        return int(value) % self.p

    def value_of(self, code: int):
        """JSON-friendly canonical value: int for prime fields, coefficient list otherwise."""
        if self.r == 1:
            return int(code)
        return [int(d) for d in self.digits_table[code]]

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, int(c)) for c in self.order]

    def sign(self, code) -> Sign:
        return Sign(int(self.sign_table[code]))

    def positives(self) -> list[int]:
        return [int(c) for c in self.order if self.sign_table[c] == Sign.POSITIVE]

    def negatives(self) -> list[int]:
        return [int(c) for c in self.order if self.sign_table[c] == Sign.NEGATIVE]

    def primitive_root(self) -> "FieldElement":
        return FieldElement(self, self.primitive_root_code)

    def minimal_polynomial(self, code: int) -> list[int]:
        """Minimal polynomial over F_p of an element, as a coefficient list over F_p."""
        conj = []
        c = int(code)
        while c not in conj:
            conj.append(c)
            c = int(self.pow(c, self.p))
        poly = np.array([1], dtype=np.int64)  # codes, constant first
        for root in conj:
            shifted = np.zeros(len(poly) + 1, dtype=np.int64)
            shifted[1:] = poly
            shifted[:-1] = self.sub(shifted[:-1], self.mul(poly, root))
            poly = shifted
        if any(int(v) >= self.p for v in poly):
            raise FieldError("minimal polynomial has coefficients outside F_p")
        return [int(v) for v in poly]

    # -- identity / serialization

    @property
    def key(self):
        return (self.p, self.r, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.r == 1:
            return f"FieldSpec(F_{self.q})"
        return f"FieldSpec(F_{self.q}, modulus={list(self.modulus)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return make_field(d["p"], d.get("r", 1), modulus=d.get("modulus"))


@functools.lru_cache(maxsize=64)
def _make_field_cached(p, r, modulus, cap):
    return FieldSpec(p, r, modulus=modulus, cap=cap)


def make_field(p: int, r: int = 1, modulus: Iterable[int] | None = None,
               cap: int = DEFAULT_FIELD_CAP) -> FieldSpec:
    """Return F_{p^r}; by default the modulus is the smallest monic irreducible."""
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _make_field_cached(int(p), int(r), mod, int(cap))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("mismatched fields")
            return other.code
        return self.spec.code_of(other)

    def _wrap(self, code) -> "FieldElement":
        return FieldElement(self.spec, int(code))

    def __add__(self, other):
        return self._wrap(self.spec.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.spec.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.spec.sub(self._other(other), self.code))

    def __mul__(self, other):
        return self._wrap(self.spec.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.spec.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.spec.div(self._other(other), self.code))

    def __neg__(self):
        return self._wrap(self.spec.neg_table[self.code])

    def __pow__(self, e: int):
        return self._wrap(self.spec.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.spec.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, (int, list, tuple)):
            return self.code == self.spec.code_of(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.key, self.code))

    def __bool__(self):
        return self.code != 0

    @property
    def value(self):
        return self.spec.value_of(self.code)

    def sign(self) -> Sign:
        return self.spec.sign(self.code)

    def order(self) -> int:
        if self.code == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        m = self.spec.q - 1
        o = m
        for f in prime_factors(m):
            while o % f == 0 and int(self.spec.pow(self.code, o // f)) == 1:
                o //= f
        return o

    def __repr__(self):
        return f"{self.value}@F{self.spec.q}"


def sign_class(a: FieldElement) -> Sign:
    return a.sign()


def euler_sign(spec: FieldSpec, code: int) -> Sign:
    """Sign by the power test a^((q-1)/2) == 1; independent of the squaring table."""
    if code == 0:
        return Sign.ZERO
    if spec.p == 2:
        return Sign.POSITIVE
    return Sign.POSITIVE if int(spec.pow(code, (spec.q - 1) // 2)) == 1 else Sign.NEGATIVE


def primitive_root(spec: FieldSpec) -> FieldElement:
    return spec.primitive_root()


@functools.lru_cache(maxsize=32)
def embedding_codes(source: FieldSpec, target: FieldSpec) -> np.ndarray:
    """Code map of the field embedding F_{p^r} -> F_{p^s}.

    The primitive root of the source goes to the smallest (canonical order)
    root of its minimal polynomial in the target.
    """
    if source.p != target.p:
        raise FieldError("subfield embedding needs equal characteristic")
    if target.r % source.r:
        raise FieldError(f"F_{source.q} is not a subfield of F_{target.q}")
    if source.q == 2:
        return np.array([0, 1], dtype=np.int64)
    minpoly = source.minimal_polynomial(source.primitive_root_code)
    vals = np.zeros(target.q, dtype=np.int64)
    allc = np.arange(target.q, dtype=np.int64)
    for coef in reversed(minpoly):
        vals = target.add(target.mul(vals, allc), coef)
    roots = [int(c) for c in target.order if vals[c] == 0]
    if not roots:
        raise FieldError("minimal polynomial has no root in target")  # unreachable
    h = roots[0]
    image = np.zeros(source.q, dtype=np.int64)
    g = source.primitive_root_code
    cur_s, cur_t = 1, 1
    for _ in range(source.q - 1):
        image[cur_s] = cur_t
        cur_s = int(source.mul(cur_s, g))
        cur_t = int(target.mul(cur_t, h))
    return image


def embed_subfield(a: FieldElement, target: FieldSpec) -> FieldElement:
    return FieldElement(target, int(embedding_codes(a.spec, target)[a.code]))
