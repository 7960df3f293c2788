import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigsurf import FrequencySet, InvalidArgumentError, minkowski_sum, rect, shift_set
from trigsurf.freqset import parse_extents


def brute_minkowski(a, b):
    return {tuple(int(u + v) for u, v in zip(ka, kb)) for ka in a for kb in b}


def brute_shifts(gamma, lam):
    g = set(gamma)
    radius = gamma.max_abs() + lam.max_abs()
    out = set()
    for t in itertools.product(range(-radius, radius + 1), repeat=gamma.dim):
        if all(tuple(k + s for k, s in zip(kl, t)) in g for kl in lam):
            out.add(t)
    return out


def test_rect_counts():
    assert len(rect(2, [3, 3])) == 9
    assert len(rect(3, [3, 3, 3])) == 27
    assert list(rect(1, [1])) == [(0,)]


def test_rect_is_centered_and_symmetric():
    s = rect(2, [5, 3])
    assert s.symmetric
    assert set(s) == {(i, j) for i in range(-2, 3) for j in range(-1, 2)}


@pytest.mark.parametrize("extents", [[2, 3], [0, 3], [-1, 3], [3]])
def test_rect_rejects_bad_extents(extents):
    with pytest.raises(InvalidArgumentError):
        rect(2, extents)


def test_canonical_order_is_lexicographic_and_deduplicated():
    s = FrequencySet([[1, 0], [-1, 2], [1, 0], [0, 0], [-1, -3]])
    assert [list(k) for k in s] == [[-1, -3], [-1, 2], [0, 0], [1, 0]]
    assert len(s) == 4


def test_minkowski_of_two_3x3_is_5x5():
    s = minkowski_sum(rect(2, [3, 3]), rect(2, [3, 3]))
    assert s == rect(2, [5, 5])
    assert len(s) == 25


def test_minkowski_identity_and_cross():
    lam = rect(2, [3, 5])
    assert minkowski_sum(rect(2, [1, 1]), lam) == lam
    assert minkowski_sum(rect(2, [3, 1]), rect(2, [1, 3])) == rect(2, [3, 3])
    assert set(minkowski_sum(rect(2, [3, 1]), rect(2, [1, 3]))) == brute_minkowski(rect(2, [3, 1]), rect(2, [1, 3]))


def test_minkowski_dim_mismatch():
    with pytest.raises(InvalidArgumentError):
        minkowski_sum(rect(2, [3, 3]), rect(3, [3, 3, 3]))


def test_shift_set_known_counts():
    gamma, lam = rect(2, [13, 13]), rect(2, [3, 3])
    assert len(shift_set(gamma, lam)) == 121
    assert len(gamma) - len(shift_set(gamma, lam)) == 48
    assert len(shift_set(lam, lam)) == 1
    shifts = shift_set(rect(2, [5, 5]), lam)
    assert len(shifts) == 9
    assert set(shifts) == brute_shifts(rect(2, [5, 5]), lam)


def test_shift_set_requires_containment():
    with pytest.raises(InvalidArgumentError):
        shift_set(rect(2, [3, 3]), rect(2, [5, 5]))


def test_shift_set_of_origin_is_gamma():
    gamma = FrequencySet([[0, 1], [2, -1], [3, 3], [0, 0]])
    assert shift_set(gamma, rect(2, [1, 1])) == gamma


odd = st.integers(0, 3).map(lambda h: 2 * h + 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_rect_pair_properties(data):
    dim = data.draw(st.integers(1, 3))
    g = [data.draw(odd) for _ in range(dim)]
    l_ = [data.draw(st.sampled_from([e for e in (1, 3, 5, 7) if e <= gi])) for gi in g]
    gamma, lam = rect(dim, g), rect(dim, l_)
    shifts = shift_set(gamma, lam)
    assert len(shifts) == int(np.prod([gi - li + 1 for gi, li in zip(g, l_)]))
    assert set(shifts) == brute_shifts(gamma, lam)
    total = minkowski_sum(gamma, lam)
    assert total == rect(dim, [gi + li - 1 for gi, li in zip(g, l_)])
    assert set(total) == brute_minkowski(gamma, lam)


small_sets = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=6).map(
    lambda ks: FrequencySet(ks, dim=2))


@settings(max_examples=60, deadline=None)
@given(small_sets, small_sets, small_sets)
def test_minkowski_commutative_associative(a, b, c):
    assert minkowski_sum(a, b) == minkowski_sum(b, a)
    assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))
    assert len(minkowski_sum(a, b)) <= len(a) * len(b)
    assert set(minkowski_sum(a, b)) == brute_minkowski(a, b)


@settings(max_examples=40, deadline=None)
@given(small_sets, small_sets)
def test_shift_set_matches_brute_force_on_general_sets(a, b):
    gamma = FrequencySet(list(a) + list(minkowski_sum(a, b)), dim=2)
    assert set(shift_set(gamma, a)) == brute_shifts(gamma, a)


def test_symmetry_flag():
    assert not FrequencySet([[0, 1], [0, 0]]).symmetric
    assert FrequencySet([[0, 1], [0, -1]]).symmetric


def test_json_roundtrip():
    s = rect(3, [3, 1, 5])
    obj = s.to_json()
    assert obj["dim"] == 3
    assert FrequencySet.from_json(obj) == s


def test_parse_extents():
    assert parse_extents("13x13") == [13, 13]
    assert parse_extents("3,3,3") == [3, 3, 3]
