import itertools
import json

import numpy as np
import pytest

from tnnfq import make_field
from tnnfq._kernels import sign_variation_batch
from tnnfq.grassmannian import Filter, canonicalize, dual, enumerate_subspaces, is_tnn, lift
from tnnfq.matrix import MatrixFq
from tnnfq.structures import (Matroid, PositroidMode, conjecture_scan, cyclic_shift,
                              dual_matroid, fixed_points, is_positroid, linear_matroids,
                              matroid_of, max_variation, positroids, sequence_checks,
                              shift_order, sign_variation, span_vectors)

SQUARE = [(1, 2), (2, 3), (3, 4), (1, 4)]


def span(F, rows):
    return canonicalize(MatrixFq(F, rows))


def naive_variation(F, codes):
    signs = [int(F.sign_table[c]) for c in codes if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def test_sign_variation_examples(F3, F5):
    assert sign_variation([1, 0, 2, 3, 4], F5) == 2
    assert sign_variation([0, 0, 0], F5) == 0
    assert sign_variation([1, 2, 1, 2], F3) == 3
    assert sign_variation([F5(1), F5(4), F5(0)]) == 0
    with pytest.raises(ValueError):
        sign_variation([1, 2])


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_variation_matches_naive_count(p):
    F = make_field(p)
    rng = np.random.default_rng(p)
    vecs = rng.integers(0, p, (300, 7))
    got = sign_variation_batch(vecs, F.sign_table)
    assert [int(g) for g in got] == [naive_variation(F, v) for v in vecs]


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)])
def test_positive_scaling_preserves_variation(p, r):
    # every vector of length <= 6, every positive scalar
    F = make_field(p, r)
    for length in range(1, 7):
        vecs = np.array(list(itertools.product(range(F.q), repeat=length)), dtype=np.int64)
        base = sign_variation_batch(vecs, F.sign_table)
        for c in F.positives():
            scaled = F.mul(vecs, c)
            assert np.array_equal(sign_variation_batch(scaled, F.sign_table), base)


def test_max_variation_examples(F3):
    A = span(F3, [[1, 0, 2, 2], [0, 1, 1, 0]])
    best, witness = max_variation(A)
    assert is_tnn(A) and best >= 3
    assert sign_variation([1, 2, 1, 2], F3) == 3
    assert [1, 2, 1, 2] in span_vectors(A).tolist()
    assert sign_variation(witness, F3) == best
    B = span(F3, [[0, 1, 0, 1], [0, 0, 1, 1]])
    assert not is_tnn(B) and max_variation(B)[0] <= 1
    assert max_variation(span(F3, [[1, 1, 1]]))[0] == 0


def test_span_vectors_cap():
    F = make_field(13)
    V = canonicalize(MatrixFq(F, np.eye(6, 7, dtype=np.int64)))
    with pytest.raises(ValueError):
        span_vectors(V)


def test_shift_examples(F13, F3):
    ones = span(F13, [[1] * 6])
    assert cyclic_shift(ones) == ones
    V = span(F3, [[1, 0, 2, 2], [0, 1, 1, 0]])
    # rows become (0,2,2,-1) and (1,1,0,0)
    assert cyclic_shift(V).canonical.values() == [[1, 0, 2, 2], [0, 1, 1, 1]]


@pytest.mark.parametrize("p,k,n", [(3, 2, 4), (5, 2, 4), (13, 1, 6), (3, 2, 5), (3, 3, 6)])
def test_shift_preserves_tnn(p, k, n):
    F = make_field(p)
    pts = list(enumerate_subspaces(k, n, F, Filter.TNN))
    image = {cyclic_shift(V) for V in pts}
    assert all(is_tnn(W) for W in image)
    assert image == set(pts)


@pytest.mark.parametrize("p,k,n", [(3, 2, 4), (5, 2, 4), (3, 1, 5), (3, 3, 5)])
def test_shift_order_divides_n_times_sign_period(p, k, n):
    # sigma^n multiplies every vector by (-1)^(k-1), which is trivial projectively
    F = make_field(p)
    rng = np.random.default_rng(0)
    pts = list(enumerate_subspaces(k, n, F, Filter.ALL))
    for i in rng.choice(len(pts), size=20, replace=False):
        V = pts[i]
        W = V
        for _ in range(n):
            W = cyclic_shift(W)
        assert W == V
        assert n % shift_order(V) == 0


def test_shift_orders_on_gr24_f3(F3):
    orders = {shift_order(V) for V in enumerate_subspaces(2, 4, F3, Filter.ALL)}
    assert orders <= {1, 2, 4}


def test_fixed_points_f5(F5):
    fps = fixed_points(2, 4, F5)
    assert sorted(V.canonical.values() for V in fps) == [[[1, 0, 2, 0], [0, 1, 0, 2]],
                                                         [[1, 0, 3, 0], [0, 1, 0, 3]]]
    assert fixed_points(2, 4, F5, restrict_tnn=True) == []


def test_fixed_points_f13_moment_curve(F13):
    fps = fixed_points(1, 6, F13, restrict_tnn=True)
    expected = {span(F13, [[pow(z, i, 13) for i in range(6)]]) for z in (1, 3, 4, 9, 10, 12)}
    assert len(fps) == 6 and set(fps) == expected


def test_matroid_examples(F5, F3):
    V = span(F5, [[1, 0, 2, 0], [0, 1, 0, 1]])
    assert matroid_of(V) == Matroid.from_bases(4, 2, SQUARE)
    assert matroid_of(span(F3, [[1, 0, 0, 0], [0, 1, 0, 0]])).sorted_bases() == [(1, 2)]


def test_uniform_matroid_over_f13(F13):
    rng = np.random.default_rng(13)
    for _ in range(200):
        M = MatrixFq(F13, rng.integers(0, 13, (2, 4)))
        try:
            V = canonicalize(M)
        except Exception:
            continue
        if all(d.code != 0 for d in V.plucker().values()):
            break
    assert len(matroid_of(V).bases) == 6


def test_matroid_validation():
    with pytest.raises(ValueError):
        Matroid.from_bases(4, 2, [])
    with pytest.raises(ValueError):
        Matroid.from_bases(4, 2, [(1, 5)])
    assert Matroid.from_bases(4, 2, SQUARE).satisfies_exchange()
    assert not Matroid.from_bases(4, 2, [(1, 2), (3, 4)]).satisfies_exchange()


def test_dual_matroid_examples():
    M = Matroid.from_bases(4, 2, SQUARE)
    assert dual_matroid(M) == M
    assert dual_matroid(Matroid.from_bases(4, 2, [(1, 2)])).sorted_bases() == [(3, 4)]
    N = Matroid.from_bases(5, 2, [(1, 2), (1, 3), (2, 3), (1, 4)])
    assert dual_matroid(dual_matroid(N)) == N
    assert dual_matroid(N).k == 3


def test_matroid_of_dual_is_dual_matroid(F3):
    for V in enumerate_subspaces(2, 4, F3, Filter.TNN):
        assert matroid_of(dual(V)) == dual_matroid(matroid_of(V))


def test_every_realized_matroid_satisfies_exchange(F3):
    assert all(M.satisfies_exchange() for M in linear_matroids(2, 4, F3))


def test_square_matroid_positroid_status(F3, F5):
    M = Matroid.from_bases(4, 2, SQUARE)
    assert is_positroid(M, F3) == (False, None)
    ok, W = is_positroid(M, F5)
    assert ok and is_tnn(W) and matroid_of(W) == M
    assert W.canonical.values() == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_positroid_witness_mode(F3, F5):
    M = Matroid.from_bases(4, 2, SQUARE)
    good = span(F5, [[1, 0, 1, 0], [0, 1, 0, 1]])
    assert is_positroid(M, F5, PositroidMode.WITNESS, witness=good) == (True, good)
    not_tnn = span(F5, [[1, 0, 2, 0], [0, 1, 0, 1]])
    assert is_positroid(M, F5, "witness", witness=not_tnn) == (False, None)
    with pytest.raises(ValueError):
        is_positroid(M, F5, "witness")


def test_positroid_dual_closure(F3):
    found = positroids(2, 4, F3)
    assert found
    assert all(dual_matroid(M) in found for M in found)
    for M in found:
        assert is_positroid(dual_matroid(M), F3)[0]


def test_linear_matroids_lift_to_positroids(F3, F9):
    linear = linear_matroids(2, 4, F3)
    pos9 = positroids(2, 4, F9)
    assert linear <= pos9
    for V in enumerate_subspaces(2, 4, F3, Filter.ALL):
        assert matroid_of(lift(V, F9)) == matroid_of(V)


def test_sequence_checks_examples():
    assert sequence_checks([1, 63, 400, 703, 400, 63, 1]) == \
        {"palindromic": True, "unimodal": True, "log_concave": True}
    assert sequence_checks([1, 1]) == {"palindromic": True, "unimodal": True, "log_concave": True}
    r = sequence_checks([1, 2, 1, 2, 1])
    assert r["palindromic"] and not r["unimodal"]
    assert not sequence_checks([1, 1, 3])["log_concave"]
    with pytest.raises(ValueError):
        sequence_checks([])


def test_conjecture_scan_flags_without_failing():
    rep = conjecture_scan({"real": [1, 4, 6, 4, 1], "made-up": [1, 5, 2, 5, 1]})
    assert rep["status"] == "pass"
    assert rep["flagged"] == ["made-up"]


def test_matroid_json_roundtrip():
    M = Matroid.from_bases(4, 2, SQUARE)
    d = json.loads(M.to_json())
    assert d == {"n": 4, "k": 2, "bases": [[1, 2], [1, 4], [2, 3], [3, 4]]}
    assert Matroid.from_dict(d) == M
