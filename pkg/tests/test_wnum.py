import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumfree_words import wnum
from sumfree_words.folding import tau_stream
from sumfree_words.wnum import DigitError, KernelSpec


def brute_valid_expansions(k, n, max_len=8):
    """Every valid word of length <= max_len whose value is n."""
    found = []
    for r in range(1, max_len + 1):
        for digits in itertools.product(range(k + 1), repeat=r):
            if digits[0] and wnum.is_valid(k, digits) and wnum.decode(k, digits) == n:
                found.append(list(digits))
    return found


def test_w_prefixes():
    assert wnum.w_table(1, 7) == [0, 1, 1, 3, 5, 11, 21, 43]
    assert wnum.w_table(2, 5) == [0, 1, 2, 7, 20, 61]


def test_encode_examples():
    assert wnum.encode(1, 1) == [1, 0]
    assert wnum.encode(1, 2) == [1, 1]
    assert wnum.encode(2, 2) == [1, 0]
    assert wnum.encode(2, 3) == [1, 1]
    with pytest.raises(ValueError):
        wnum.encode(1, 0)


def test_decode_examples():
    assert wnum.decode(3, [2]) == 2
    assert wnum.decode(1, [1, 0, 0, 0]) == wnum.w_value(1, 4)
    # W_1(4) + W_1(2) = 5 + 1
    assert wnum.decode(1, [1, 0, 1, 0]) == 6
    with pytest.raises(DigitError):
        wnum.decode(2, [3])


def test_validity_examples():
    assert not wnum.is_valid(1, [1])
    assert wnum.is_valid(1, [1, 1])
    assert wnum.is_valid(2, [1, 2, 2])
    assert not wnum.is_valid(2, [1, 2])


def test_count_valid_examples():
    assert wnum.count_valid(1, 2) == 2
    assert wnum.count_valid(2, 1) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_encode_matches_exhaustive_search(k):
    for n in range(1, min(60, wnum.w_value(k, 7))):
        found = brute_valid_expansions(k, n, max_len=6)
        assert found == [wnum.encode(k, n)]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(1, 10**40))
def test_round_trip_big_integers(k, n):
    digits = wnum.encode(k, n)
    assert wnum.is_valid(k, digits)
    assert wnum.decode(k, digits) == n


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_enumeration_tiles_the_interval(k):
    """Valid words of length r hit every integer in [W(r), W(r+1)) exactly once."""
    for r in range(1, 9):
        vals = sorted(int(x) for x in wnum.enumerate_valid_values(k, r))
        assert vals == list(range(wnum.w_value(k, r), wnum.w_value(k, r + 1)))
        assert len(vals) == wnum.count_valid(k, r)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_identities(k):
    assert wnum.check_w_identities(k, 30)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_value12_small(k):
    t = tau_stream(k).letters(3000)
    assert tuple(wnum.t_via_numeration(k, n) for n in range(3000)) == t


@pytest.mark.parametrize("k,ell,r,n", [(1, 1, 1, 3), (2, 1, 2, 5), (3, 2, 1, 4)])
def test_construction_examples(k, ell, r, n):
    assert wnum.check_construction(k, ell, r, n)


def test_construction_parameters():
    with pytest.raises(ValueError):
        wnum.c_value(1, 1, 2, 3)
    with pytest.raises(ValueError):
        wnum.b_value(1, 0, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 12))
def test_b_closed_form(k, ell, n):
    assert wnum.b_value(k, ell, n) == wnum.b_closed_form(k, ell, n)


def test_kernel_subsequence_examples():
    assert wnum.kernel_subsequence(1, KernelSpec(2, 0, 0), 8) == tau_stream(1).letters(8)
    assert wnum.kernel_subsequence(1, KernelSpec(2, 1, 0), 4) == (2, 1, 2, 1)


def test_kernel_evidence_examples():
    assert wnum.kernel_evidence(1, 0, 100) == 1
    assert wnum.kernel_evidence(1, 4, 10_000) > wnum.kernel_evidence(1, 2, 10_000)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(10, 200))
def test_kernel_evidence_monotone(k, a, N):
    assert wnum.kernel_evidence(k, a + 1, N) >= wnum.kernel_evidence(k, a, N)
    assert wnum.kernel_evidence(k, a, N + 50) >= wnum.kernel_evidence(k, a, N)


@pytest.mark.parametrize("k,c1,c2", [(1, 0, 1), (1, 1, 2), (2, 0, 2), (3, 0, 1), (4, 0, 1)])
def test_constructed_witness_separates(k, c1, c2):
    j = wnum.constructive_witness(k, c1, c2)
    K = (k + 1) ** 2
    assert wnum.t_via_numeration(k, K**c1 * j - 1) == 2
    assert wnum.t_via_numeration(k, K**c2 * j - 1) == 1


def test_kernel_k4_is_inconclusive_not_failed():
    res = wnum.check_kernel(4, 10_000, max_a=3, witness_N=20_000)
    assert res.status == "unstable"
    assert res.fail_index is None


def test_w_table_length_and_isolation():
    wnum.w_value(2, 40)  # grow the cache past the request
    table = wnum.w_table(2, 5)
    assert table == [0, 1, 2, 7, 20, 61]
    table.append(-1)
    table[1] = 99
    assert wnum.w_table(2, 6) == [0, 1, 2, 7, 20, 61, 182]
