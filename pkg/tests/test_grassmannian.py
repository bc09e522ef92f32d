import json

import numpy as np
import pytest

from tnnfq import make_field
from tnnfq.finite_field import FieldError
from tnnfq.grassmannian import (CountTable, Filter, WorkCapExceeded, canonicalize, count,
                                count_by_pivots, count_table, dual, dual_inverse,
                                enumerate_subspaces, gaussian_binomial, is_tnn, is_tp, lift)
from tnnfq.matrix import MatrixError, MatrixFq
from tnnfq.verify import plucker_complementary

from oracles import brute_count, brute_gaussian_binomial


def span(F, rows):
    return canonicalize(MatrixFq(F, rows))


def test_canonicalize(F3):
    with pytest.raises(MatrixError):
        span(F3, [[2, 2], [0, 0]])
    V = span(F3, [[2, 0, 1, 1], [0, 2, 2, 0]])
    assert V.canonical.values() == [[1, 0, 2, 2], [0, 1, 1, 0]]
    assert span(F3, V.canonical.values()) == V
    assert V.pivots == (1, 2)


def test_membership_examples(F3):
    assert is_tnn(span(F3, [[1, 0, 2, 2], [0, 1, 1, 0]]))
    assert not is_tnn(span(F3, [[0, 1, 0, 1], [0, 0, 1, 1]]))
    assert is_tp(span(F3, [[1, 1, 1]]))


def test_enumerate_examples(F3, F5, F13):
    assert len(list(enumerate_subspaces(2, 4, F3, Filter.ALL))) == 130
    assert brute_gaussian_binomial(4, 2, 3) == 130
    assert len(list(enumerate_subspaces(2, 4, F3, Filter.TNN))) == 32
    for F in (F3, F5, F13):
        only = list(enumerate_subspaces(1, 1, F, Filter.TNN))
        assert [V.canonical.values() for V in only] == [[[1]]]


def test_tp_planes_over_f3_vanish():
    F3 = make_field(3)
    seq = [count(2, n, F3, Filter.TP) for n in range(2, 8)]
    assert seq == [brute_count(F3, 2, n, "tp") for n in range(2, 8)]
    first_empty = 2 + seq.index(0)
    assert first_empty == 4
    assert all(s == 0 for s in seq[first_empty - 2:])


def test_enumeration_order_and_uniqueness(F9):
    pts = list(enumerate_subspaces(2, 4, F9, Filter.TNN))
    assert len(set(pts)) == len(pts)
    keys = []
    for V in pts:
        piv = V.pivots
        free = [int(F9.rank[c]) for j in range(4) for i, c in enumerate(V.canonical.codes[:, j])
                if j + 1 not in piv and j + 1 > piv[i]]
        keys.append((piv[::-1], free))
    assert keys == sorted(keys)


def test_every_emitted_point_is_tnn(F5):
    pts = list(enumerate_subspaces(2, 5, F5, Filter.TNN))
    assert len(pts) == 1010
    assert all(is_tnn(V) for V in pts)
    tp = list(enumerate_subspaces(1, 4, F5, Filter.TP))
    assert all(is_tp(V) for V in tp) and len(tp) == 8


@pytest.mark.parametrize("p,r,k,n", [(3, 1, 2, 5), (5, 1, 2, 4), (3, 2, 2, 4), (7, 1, 2, 4),
                                     (3, 1, 3, 6), (2, 2, 2, 4), (3, 1, 1, 6)])
@pytest.mark.parametrize("filt", ["all", "tnn", "tp"])
def test_pruned_matches_brute_force(p, r, k, n, filt):
    F = make_field(p, r)
    assert count(k, n, F, filt) == brute_count(F, k, n, filt)


@pytest.mark.parametrize("p,r,max_n", [(2, 1, 6), (2, 2, 4), (2, 3, 4)])
def test_even_characteristic_is_whole_grassmannian(p, r, max_n):
    F = make_field(p, r)
    table = count_table(F, max_n)
    assert all(table.cells[(k, n)] == gaussian_binomial(n, k, F.q) for (k, n) in table.cells)


def test_all_filter_gives_gaussian_triangle(F5):
    table = count_table(F5, 5, Filter.ALL)
    assert all(v == brute_gaussian_binomial(n, k, 5) for (k, n), v in table.cells.items())


def test_boundary_cells(F3):
    for n in range(6):
        assert count(0, n, F3) == 1 and count(n, n, F3) == 1
        assert count(0, n, F3, Filter.TP) == 1
    with pytest.raises(ValueError):
        count(3, 2, F3)


def test_modulus_independence():
    default = make_field(3, 2)
    other = make_field(3, 2, modulus=[2, 1, 1])
    assert default.modulus != other.modulus
    assert count_table(default, 4).cells == count_table(other, 4).cells


def test_workers_do_not_change_results(F5):
    one = count_by_pivots(2, 6, F5, workers=1)
    many = count_by_pivots(2, 6, F5, workers=4)
    assert list(one.items()) == list(many.items())


def test_work_cap(F5, monkeypatch):
    with pytest.raises(WorkCapExceeded) as exc:
        count(2, 6, F5, cap=1000)
    assert exc.value.estimate == 15 * 5 ** 8
    with pytest.raises(WorkCapExceeded):
        list(enumerate_subspaces(2, 6, F5, cap=1000))
    monkeypatch.setenv("TNN_WORK_CAP", "50")
    with pytest.raises(WorkCapExceeded):
        count(2, 5, F5)


def test_dual_examples(F3):
    assert dual(span(F3, [[1, 1]])).canonical.values() == [[1, 1]]
    V = span(F3, [[1, 0, 2, 2], [0, 1, 1, 0]])
    W = dual(V)
    assert (W.k, W.n) == (2, 4)
    assert plucker_complementary(V, W)
    assert dual_inverse(W) == V


def test_dual_bijection_on_tnn_planes(F3):
    src = list(enumerate_subspaces(2, 4, F3, Filter.TNN))
    image = [dual(V) for V in src]
    assert all(is_tnn(W) for W in image)
    assert set(image) == set(src) and len(set(image)) == 32


@pytest.mark.parametrize("p,r,n", [(3, 1, 5), (5, 1, 4), (3, 2, 3), (7, 1, 4)])
def test_dual_on_whole_grassmannian(p, r, n):
    F = make_field(p, r)
    for k in range(n + 1):
        for V in enumerate_subspaces(k, n, F, Filter.ALL):
            W = dual(V)
            assert plucker_complementary(V, W)
            assert dual_inverse(W) == V
            assert is_tnn(W) == is_tnn(V)


def test_lift_gr24_f3_into_f9(F3, F9):
    pts = list(enumerate_subspaces(2, 4, F3, Filter.ALL))
    lifted = {lift(V, F9) for V in pts}
    assert len(pts) == len(lifted) == 130
    assert all(is_tnn(W) for W in lifted)
    V = span(F3, [[1, 0, 0], [0, 1, 0]])
    assert lift(V, F9).canonical.codes.tolist() == V.canonical.codes.tolist()
    with pytest.raises(FieldError):
        lift(V, make_field(3, 3))
    with pytest.raises(FieldError):
        lift(V, F3)


@pytest.mark.parametrize("n", [5, 6])
def test_subfield_lower_bound(F3, F9, n):
    for k in (1, 2):
        assert count(k, n, F9) >= gaussian_binomial(n, k, 3)


def test_count_table_formats(F3):
    t = count_table(F3, 3)
    assert t.to_csv().splitlines()[:3] == ["n,k,count", "0,0,1", "1,0,1"]
    d = json.loads(json.dumps(t.to_dict()))
    assert d["q"] == 3 and d["filter"] == "tnn"
    assert {"n": 3, "k": 1, "count": 7} in d["cells"]
    assert CountTable.from_dict(d).cells == t.cells


def test_subspace_stream_json(F3):
    V = next(iter(enumerate_subspaces(2, 4, F3)))
    d = json.loads(json.dumps(V.to_dict()))
    assert span(F3, d["entries"]) == V
    assert np.array_equal(V.canonical.codes, [[1, 0, 0, 0], [0, 1, 0, 0]])
