import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumfree_words import check_sumfree, gap_counters, theta_forward, theta_inverse
from sumfree_words.folding import pkf_stream
from sumfree_words.sumfree import STAR, ThetaBuilder, theta_elements


def naive_theta(w, frontier):
    """Quadratic reference: admit n when w says 1 and n is not a sum of two members."""
    S: list[int] = []
    members: set[int] = set()
    letters = iter(w)
    v = []
    for n in range(1, frontier + 1):
        if any(n - x in members for x in S):
            v.append(STAR)
            continue
        bit = next(letters)
        if bit:
            S.append(n)
            members.add(n)
        v.append(bit)
    return S, v


def periodic(seed):
    return itertools.cycle(seed)


def test_theta_examples():
    assert theta_forward(periodic([1]), 16).S[:8] == (1, 3, 5, 7, 9, 11, 13, 15)
    assert theta_forward(periodic([0, 1]), 12).S[:4] == (2, 5, 8, 11)
    assert theta_elements(pkf_stream(1), 6).S[:6] == (2, 7, 10, 13, 21, 27)


def test_inverse_examples():
    assert theta_inverse(range(1, 40, 2), 39)[:10] == (1,) * 10
    assert theta_inverse([2, 5, 8, 11], 12)[:6] == (0, 1, 0, 1, 0, 1)
    S = theta_elements(pkf_stream(1), 40).S
    w = theta_inverse(S, S[-1])
    assert w == pkf_stream(1).letters(len(w))


def test_check_sumfree_examples():
    assert check_sumfree([1, 3, 5]) is None
    # least z wins, and x = y is a genuine violation
    assert check_sumfree([1, 2, 3]) == (1, 1, 2)
    assert check_sumfree([1, 3, 4]) == (1, 3, 4)
    assert check_sumfree([2, 7, 10, 13, 21, 27]) is None
    with pytest.raises(ValueError):
        check_sumfree([3, 1])


def test_star_trace_rendering():
    assert theta_forward(pkf_stream(1), 13).v_string() == "010*0010*10*1"


def test_inverse_rejects_sets_with_sums():
    with pytest.raises(ValueError):
        theta_inverse([1, 2, 3], 5)


def test_builder_capacity_growth():
    small = ThetaBuilder(pkf_stream(2), capacity=4).run_to(3000).snapshot()
    big = theta_forward(pkf_stream(2), 3000)
    assert small.S == big.S and small.v == big.v


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=12).filter(any), st.integers(50, 600))
def test_bitset_matches_quadratic_oracle(seed, frontier):
    S, v = naive_theta(periodic(seed), frontier)
    trace = theta_forward(periodic(seed), frontier)
    assert list(trace.S) == S
    assert list(trace.v) == v


def test_bitset_matches_oracle_at_ten_thousand():
    S, v = naive_theta(pkf_stream(1), 10_000)
    trace = theta_forward(pkf_stream(1), 10_000)
    assert list(trace.S) == S and list(trace.v) == v


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=20).filter(any), st.integers(30, 800))
def test_round_trip(seed, frontier):
    trace = theta_forward(periodic(seed), frontier)
    assert check_sumfree(trace.S) is None
    w = theta_inverse(trace.S, frontier)
    expect = tuple(itertools.islice(periodic(seed), len(w)))
    assert w == expect


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=2, max_size=10).filter(lambda s: sum(s) >= 1), st.integers(10, 200))
def test_gap_counter_identities(seed, count):
    """d = mu + alpha + 1 and the zeros of v between members are the skipped input zeros."""
    trace = theta_elements(periodic(seed), count)
    g = gap_counters(trace)
    S, v = trace.S, trace.v
    for i in range(len(g.d)):
        lo, hi = S[i], S[i + 1]
        between = v[lo : hi - 1]
        assert g.mu[i] == between.count(0)
        assert g.alpha[i] == between.count(STAR)
        assert g.d[i] == hi - lo == g.mu[i] + g.alpha[i] + 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=10).filter(any), st.integers(20, 300))
def test_v_marks_members_and_sums(seed, frontier):
    trace = theta_forward(periodic(seed), frontier)
    members = set(trace.S)
    sums = {x + y for x in members for y in members}
    for n in range(1, frontier + 1):
        a = trace.v_at(n)
        assert (a == 1) == (n in members)
        assert (a == STAR) == (n in sums)
