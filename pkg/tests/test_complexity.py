import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumfree_words.complexity import (
    ComplexityProfile,
    PatternViolation,
    check_conjecture,
    check_recurrences,
    conjectured_runs,
    factor_counts,
    factor_counts_bruteforce,
    run_lengths,
    subword_complexity,
)
from sumfree_words.folding import tau_stream


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=200), st.integers(1, 12))
def test_automaton_matches_bruteforce(word, n_max):
    counts = factor_counts(word, n_max)
    assert counts[0] == 1
    for n in range(1, n_max + 1):
        assert counts[n] == factor_counts_bruteforce(word, n)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=300), st.integers(1, 15))
def test_complexity_bounds(word, n_max):
    """Counts never drop while factors still fit, and each factor extends at most two ways."""
    counts = factor_counts(word, n_max)
    for n in range(1, n_max):
        if n + 1 <= len(word):
            assert counts[n + 1] <= 2 * counts[n]
            assert counts[n + 1] >= counts[n] - 1


def test_constant_word():
    profile = subword_complexity([1] * 5000, 20)
    assert profile.f == (1,) * 20


def test_tau3_profile():
    profile = subword_complexity(tau_stream(3), 15)
    assert profile.f == (2, 3, 4, 6, 8, 10, 11, 12, 13, 14, 15, 16, 18, 20, 22)
    assert profile.all_stabilized


def test_run_lengths():
    assert run_lengths([1, 1, 2, 2, 2, 1]) == [2, 3]
    assert run_lengths([2, 2, 1, 2]) == [0, 2, 1]
    with pytest.raises(PatternViolation):
        run_lengths([1, 3])


def test_conjectured_runs():
    assert conjectured_runs(3, 8) == [2, 3, 6, 9, 30, 39, 114, 153]
    assert check_recurrences(3, [2, 3, 6, 9, 30]) is None
    assert check_recurrences(3, [2, 3, 6, 10]) == 4


def test_k1_opens_with_a_two_run():
    res = check_conjecture(1, 4)
    assert res.data["d"][0] == 2
    assert res.data["a"][0] == 0


def test_unstable_when_prefix_is_capped():
    res = check_conjecture(3, 8, max_prefix=2048)
    assert res.status == "unstable"
    assert res.fail_index is None


def test_pattern_violation_is_recorded_not_raised():
    profile = ComplexityProfile((2, 3, 6, 7), 4096, (True,) * 4)
    assert profile.runs is None
    assert profile.pattern_index == 2


def test_k1_breaks_the_recurrence_early():
    res = check_conjecture(1, 6)
    assert res.status == "fail"
    assert res.fail_index == 2
