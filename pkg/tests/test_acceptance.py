"""Acceptance criteria, one test each, at the stated sizes and time budgets.

Every test prints (and records for the terminal summary) a single line
``CRITERION n: PASS|FAIL (elapsed / budget)``.
"""

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from sumfree_words import check_sumfree, folding, gap_counters, sturmian, theta_forward, theta_inverse, wnum
from sumfree_words.complexity import check_conjecture, factor_counts, subword_complexity
from sumfree_words.folding import family, image_prefix, pkf_stream, pkf_trace, pkf_trace_elements, tau_stream
from sumfree_words.sumfree import STAR, theta_elements


@pytest.fixture
def criterion(record_criterion):
    @contextmanager
    def run(number: int, budget: float, title: str):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            in_time = elapsed < budget
            status = "PASS" if ok and in_time else "FAIL"
            line = f"CRITERION {number}: {status} {title} ({elapsed:.2f}s / {budget:g}s)"
            print(line)
            record_criterion(line)
        assert in_time, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"

    return run


def test_c01_theta_examples(criterion):
    with criterion(1, 1, "theta examples"):
        assert theta_forward(itertools.cycle([1]), 16).S[:8] == (1, 3, 5, 7, 9, 11, 13, 15)
        assert theta_forward(itertools.cycle([0, 1]), 12).S[:4] == (2, 5, 8, 11)


def test_c02_theta_of_period_doubling(criterion):
    with criterion(2, 1, "theta(p1) begins 2,7,10,13,21,27"):
        assert theta_elements(pkf_stream(1), 6).S[:6] == (2, 7, 10, 13, 21, 27)


def test_c03_round_trip(criterion):
    rng = random.Random(20240521)
    with criterion(3, 10, "theta round trip, 200 seeds"):
        for _ in range(200):
            seed = [rng.randint(0, 1) for _ in range(20)]
            trace = theta_forward(itertools.cycle(seed), 1000)
            assert check_sumfree(trace.S) is None
            w = theta_inverse(trace.S, 1000)
            assert len(w) >= 20
            assert list(w[:20]) == seed
            assert w == tuple(itertools.islice(itertools.cycle(seed), len(w)))


def test_c04_differences_k1(criterion):
    with criterion(4, 10, "differences for k=1, 10^4 terms"):
        assert folding.check_theorem_A(10_000)
        assert image_prefix(family(1).rho8, pkf_stream(1), 5) == (8, 3, 3, 8, 6)
        d = gap_counters(pkf_trace_elements(1, 10)).d
        assert (8,) + d[1:5] == (8, 3, 3, 8, 6)


def test_c05_differences_k2_to_5(criterion):
    with criterion(5, 60, "differences for k=2..5"):
        for k in range(2, 6):
            assert folding.check_theorem_B(k, 10_000)
            S = pkf_trace_elements(k, 2).S
            assert S[:2] == (k + 1, 2 * k + 3)


def test_c06_gap_counters(criterion):
    with criterion(6, 30, "gamma map, mu and alpha"):
        for k in range(1, 5):
            assert folding.check_lemma_gamma(k, n_max=8, j_max=3)
            assert folding.check_lemma_mu(k, 1000)
            assert folding.check_lemma_alpha(k, 1000)


def test_c07_star_positions(criterion):
    with criterion(7, 30, "star positions"):
        for k in range(2, 6):
            assert folding.check_star_positions(k, 10_000)
            v = pkf_trace(k, 10_000).v
            assert len(v) >= 10_000
            off = [n for n in range(1, 10_001) if (v[n - 1] == STAR) != (n % (k + 2) == k)]
            # n = k is not a sum of two members yet: the only exception
            assert off == [k]
        assert folding.check_star_positions(1, 10_000)


def test_c08_numeration(criterion):
    with criterion(8, 60, "W numeration"):
        assert wnum.w_table(1, 7) == [0, 1, 1, 3, 5, 11, 21, 43]
        assert wnum.w_table(2, 5) == [0, 1, 2, 7, 20, 61]
        for k in range(1, 5):
            assert wnum.check_w_identities(k, 30)
        for k in range(1, 6):
            assert wnum.check_roundtrip(k, 100_000)
        for k in range(1, 5):
            for r in range(1, 13):
                values = wnum.enumerate_valid_values(k, r)
                expect = wnum.w_value(k, r + 1) - wnum.w_value(k, r)
                assert len(values) == wnum.count_valid(k, r) == expect


def test_c09_value12(criterion):
    with criterion(9, 60, "numeration vs morphism, n < 10^5"):
        for k in range(1, 6):
            assert wnum.check_value12(k, 100_000)


def test_c10_b_and_c_families(criterion):
    with criterion(10, 30, "b and c families"):
        for k in range(1, 5):
            assert wnum.check_construction_grid(k, ell_max=4, n_max=8)


def test_c11_kernel(criterion):
    with criterion(11, 120, "kernel distinctness and growth, k<=3"):
        for k in range(1, 4):
            res = wnum.check_kernel(k, 100_000, max_a=4, evidence_N=10_000)
            assert res, res.detail
            for w in res.data["witnesses"].values():
                assert w["via"] == "search" and w["n"] <= 100_000
            counts = res.data["evidence"]
            assert all(counts[a] < counts[a + 1] for a in range(1, 4))


def test_c12_complement(criterion):
    with criterion(12, 10, "complement fixed point"):
        for k in range(1, 5):
            assert folding.check_complement(k, 10_000)
        assert folding.sigma_hat_stream(1).letters(6) == (1, 2, 1, 1, 2, 2)


def test_c13_membership(criterion):
    with criterion(13, 10, "n in c iff (k+1)n not in c"):
        for k in range(1, 4):
            assert folding.check_membership_property(k, 10_000)


def test_c14_sturmian_pipeline(criterion):
    with criterion(14, 120, "Sturmian pipeline on quadratic slopes"):
        passed = set()
        for name, alpha in sturmian.STANDARD_SLOPES.items():
            spec = sturmian.find_intercept(alpha)
            assert sturmian.require_11_no_00(sturmian.mechanical_stream(spec), 10_000)
            assert sturmian.check_star_parity(spec, 10_000)
            res = sturmian.check_theorem_D(spec, 10_000, n_max=50)
            assert res, res.detail
            passed.add(alpha)
        assert len(passed) >= 3


def test_c15_conjecture(criterion):
    with criterion(15, 600, "complexity data and run-length recurrences"):
        profile = subword_complexity(tau_stream(3), 15)
        assert profile.f == (2, 3, 4, 6, 8, 10, 11, 12, 13, 14, 15, 16, 18, 20, 22)
        assert profile.all_stabilized
        assert profile.d[:12] == (1, 1, 2, 2, 2, 1, 1, 1, 1, 1, 1, 2)
        res = check_conjecture(3, 8)
        assert res and res.data["stabilized"]
        assert res.data["a"] == [2, 3, 6, 9, 30, 39, 114, 153]
        # the settled counts must survive a much longer prefix
        n = len(res.data["f"])
        assert factor_counts(tau_stream(3).letters(1 << 20), n)[1:] == res.data["f"]
        for k in (2, 3, 4):
            res = check_conjecture(k, 6)
            assert res, res.detail
            assert res.data["stabilized"] and len(res.data["a"]) >= 6
