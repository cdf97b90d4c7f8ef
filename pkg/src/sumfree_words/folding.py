"""Period-k-folding sequences and the morphisms describing their sum-free sets.

Every ``check_*`` function compares two independently produced prefixes
letter for letter and returns a :class:`~sumfree_words.checks.CheckResult`.
Indices in failure reports follow the sequence's own convention: ``p`` and
``tau`` are 0-based, ``v``, ``mu``, ``alpha`` and ``d`` are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .checks import CheckResult, compare, fail
from .sumfree import STAR, SumFreeTrace, gap_counters, theta_elements, theta_forward
from .words import Morphism, MorphicStream, fixed_point, gamma

STAR_RESIDUES_K1 = frozenset({0, 1, 3, 6, 9, 12})


def _block(*parts) -> list[int]:
    out: list[int] = []
    for p in parts:
        out.extend(p)
    return out


@dataclass(frozen=True)
class FoldingFamily:
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @cached_property
    def sigma(self) -> Morphism:
        k = self.k
        return Morphism({0: [0] * k + [1], 1: [0] * (k + 1)})

    @cached_property
    def tau(self) -> Morphism:
        k = self.k
        return Morphism({1: [1] * (k - 1) + [2], 2: [1] * (k - 1) + [2] + [1] * (k + 1)})

    @cached_property
    def rho0(self) -> Morphism:
        k = self.k
        return Morphism({0: [1] * (k - 1) + [2], 1: [1] * (k + 1)})

    @cached_property
    def rho1(self) -> Morphism:
        k = self.k
        return Morphism({1: [k + 2], 2: [2 * k + 4]})

    @cached_property
    def rho2(self) -> Morphism:
        k = self.k
        return Morphism({1: [k], 2: [2 * k + 1]})

    def _k1_only(self, name: str) -> None:
        if self.k != 1:
            raise ValueError(f"{name} is only defined for k = 1")

    @cached_property
    def rho3(self) -> Morphism:
        self._k1_only("rho3")
        return self.rho2.compose(self.tau.compose(self.rho0))

    @cached_property
    def rho4(self) -> Morphism:
        self._k1_only("rho4")
        return Morphism({0: [4, 1, 1], 1: [4, 2]})

    @cached_property
    def rho8(self) -> Morphism:
        self._k1_only("rho8")
        return Morphism({0: [8, 3, 3], 1: [8, 6]})

    @cached_property
    def sigma_hat(self) -> Morphism:
        """The morphism whose fixed point at 1 is ``1`` followed by the ``tau`` fixed point."""
        k = self.k
        unit = [1] * (k - 1) + [2]
        return Morphism({
            1: _block([1], unit * k, [1] * k),
            2: _block([1], unit * (2 * k + 1), [1] * k),
        })


@lru_cache(maxsize=None)
def family(k: int) -> FoldingFamily:
    return FoldingFamily(k)


@lru_cache(maxsize=None)
def pkf_stream(k: int) -> MorphicStream:
    """The period-k-folding sequence, 0-based."""
    return fixed_point(family(k).sigma, 0, index_base=0, name=f"p^({k})")


@lru_cache(maxsize=None)
def tau_stream(k: int) -> MorphicStream:
    return fixed_point(family(k).tau, 1, index_base=0, name=f"tau_{k}^inf(1)")


@lru_cache(maxsize=None)
def sigma_hat_stream(k: int) -> MorphicStream:
    return fixed_point(family(k).sigma_hat, 1, index_base=0, name=f"sigma_hat_{k}^inf(1)")


def image_prefix(m: Morphism, s: MorphicStream, n: int) -> tuple[int, ...]:
    """First ``n`` letters of ``m`` applied to the infinite word ``s`` (m non-erasing)."""
    return tuple(m.apply(s.letters(n))[:n])


def pkf_trace(k: int, frontier: int) -> SumFreeTrace:
    return theta_forward(pkf_stream(k), frontier)


@lru_cache(maxsize=32)
def pkf_trace_elements(k: int, count: int) -> SumFreeTrace:
    """Trace of ``theta(p^(k))`` with at least ``count`` members."""
    return theta_elements(pkf_stream(k), count)


def _gaps(k: int, n_terms: int):
    trace = pkf_trace_elements(k, n_terms + 1)
    g = gap_counters(trace)
    return trace, g.mu[:n_terms], g.alpha[:n_terms], g.d[:n_terms]


def check_gpd(k: int, N: int) -> CheckResult:
    params = {"k": k, "N": N}
    p = pkf_stream(k).letters(N)
    if p[0] != 0:
        return fail("gpd", params, 0, "p_0 != 0")
    for i in range(N):
        n, j = divmod(i, k + 1)
        expected = 0 if j < k else 1 - p[n]
        if p[i] != expected:
            return fail("gpd", params, i, f"p_{i} = {p[i]}, recurrence gives {expected}")
    return CheckResult("gpd", params)


def check_projection(k: int, N: int) -> CheckResult:
    params = {"k": k, "N": N}
    fam = family(k)
    tau = tau_stream(k).letters(N)
    res = compare("projection", params, tau, image_prefix(fam.rho0, pkf_stream(k), N))
    if res and k == 1:
        variant = fam.tau.compose(fam.rho0)
        res = compare("projection", params, tau, image_prefix(variant, pkf_stream(k), N))
        if not res:
            res.detail = "tau_1∘rho_0 variant: " + res.detail
    return res


def check_lemma_gamma(k: int, n_max: int = 8, j_max: int = 3) -> CheckResult:
    """Gap map of ``[sigma^n(0)]^j sigma(0)`` against ``[rho_2(tau^(n-1)(1))]^j``."""
    params = {"k": k, "n_max": n_max, "j_max": j_max}
    fam = family(k)
    sigma_0 = fam.sigma.image(0)
    block = list(sigma_0)  # sigma^1(0)
    tau_block = [1]  # tau^0(1)
    for n in range(1, n_max + 1):
        rhs_unit = fam.rho2.apply(tau_block)
        for j in range(1, j_max + 1):
            lhs = gamma(block * j + list(sigma_0))
            if lhs != tuple(rhs_unit * j):
                return fail("lemma-gamma", params, n, f"mismatch at n={n}, j={j}")
        block = fam.sigma.apply(block)
        tau_block = fam.tau.apply(tau_block)
    return CheckResult("lemma-gamma", params)


def check_lemma_mu(k: int, N: int) -> CheckResult:
    params = {"k": k, "N": N}
    _, mu, _, _ = _gaps(k, N)
    return compare("mu", params, mu, image_prefix(family(k).rho2, tau_stream(k), N), base=1)


def check_lemma_alpha(k: int, N: int) -> CheckResult:
    params = {"k": k, "N": N}
    _, _, alpha, _ = _gaps(k, N)
    if k >= 2:
        return compare("alpha", params, alpha, tau_stream(k).letters(N), base=1)
    patched = (4,) + alpha[1:]
    return compare("alpha", params, patched, image_prefix(family(1).rho4, pkf_stream(1), N), base=1)


def first_star_exception(k: int) -> int:
    """The one position ``n = k`` where ``n ≡ k (mod k+2)`` but no sum exists yet."""
    return k


def check_star_positions(k: int, N: int) -> CheckResult:
    """Star pattern of the trace of ``p^(k)`` for positions up to ``N``.

    For ``k >= 2`` stars sit exactly at ``n ≡ k (mod k+2)``, with the single
    exception of ``n = k`` itself, which precedes the first member ``s_1 =
    k+1`` and so cannot be a sum.  For ``k = 1`` the pattern is 14-periodic
    from ``n = 14`` on.
    """
    params = {"k": k, "N": N}
    trace = pkf_trace(k, N)
    v = trace.v
    if k >= 2:
        for n in range(1, N + 1):
            if n == first_star_exception(k):
                if v[n - 1] == STAR:
                    return fail("stars", params, n, "unexpected star before s_1")
                continue
            if (v[n - 1] == STAR) != (n % (k + 2) == k):
                return fail("stars", params, n, f"v_{n} = {v[n - 1]}")
        return CheckResult("stars", params)
    for n in range(14, N + 1):
        j = n % 14
        if (v[n - 1] == STAR) != (j in STAR_RESIDUES_K1):
            return fail("stars", params, n, f"v_{n} = {v[n - 1]}, residue {j}")
        if j == 4 and v[n - 1] != 0:
            return fail("stars", params, n, f"v_{n} should be 0")
        if j in (7, 13) and v[n - 1] != 1:
            return fail("stars", params, n, f"{n} should belong to S")
    return CheckResult("stars", params)


def check_sum_residues(k: int, count: int) -> CheckResult:
    """For ``k >= 2`` every pairwise sum of the first ``count`` members is ``≡ k (mod k+2)``."""
    params = {"k": k, "count": count}
    if k < 2:
        raise ValueError("the residue property is stated for k >= 2")
    S = pkf_trace_elements(k, count).S[:count]
    residues = {s % (k + 2) for s in S}
    for a in residues:
        for b in residues:
            if (a + b) % (k + 2) != k:
                bad = next(i for i, s in enumerate(S, 1) if s % (k + 2) in (a, b))
                return fail("sum-residues", params, bad, f"residues {a}+{b}")
    return CheckResult("sum-residues", params)


def check_theorem_A(N: int) -> CheckResult:
    params = {"k": 1, "N": N}
    if N < 2:
        raise ValueError("N must be at least 2")
    _, _, _, d = _gaps(1, N)
    d = (8,) + d[1:]
    return compare("thm-a", params, d, image_prefix(family(1).rho8, pkf_stream(1), N), base=1)


def check_theorem_B(k: int, N: int) -> CheckResult:
    if k < 2:
        raise ValueError("need k >= 2; use check_theorem_A for k = 1")
    params = {"k": k, "N": N}
    trace, _, _, d = _gaps(k, N)
    if trace.S[:2] != (k + 1, 2 * k + 3):
        return fail("thm-b", params, 1, f"s_1, s_2 = {trace.S[:2]}")
    return compare("thm-b", params, d, image_prefix(family(k).rho1, tau_stream(k), N), base=1)


def check_complement(k: int, N: int) -> CheckResult:
    params = {"k": k, "N": N}
    lhs = sigma_hat_stream(k).letters(N)
    rhs = (1,) + tau_stream(k).letters(N - 1)
    return compare("complement", params, lhs, rhs)


def partial_sums(k: int, count: int) -> list[int]:
    """``c(0), ..., c(count-1)``: running sums of the ``sigma_hat`` fixed point."""
    out, total = [], 0
    for a in sigma_hat_stream(k).letters(count):
        total += a
        out.append(total)
    return out


def check_membership_property(k: int, N: int) -> CheckResult:
    """``n`` is a partial sum iff ``(k+1) n`` is not, for ``1 <= n <= N``."""
    params = {"k": k, "N": N}
    # every letter is >= 1, so this many terms reach past (k+1) N
    c = set(partial_sums(k, (k + 1) * N + 1))
    for n in range(1, N + 1):
        if (n in c) == ((k + 1) * n in c):
            return fail("membership", params, n, f"n={n} in c: {n in c}, {(k + 1) * n} in c: {(k + 1) * n in c}")
    return CheckResult("membership", params)
