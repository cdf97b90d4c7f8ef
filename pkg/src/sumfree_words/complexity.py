"""Subword complexity of long prefixes, and the run-length conjecture for ``tau_k``.

Factor counts come from a suffix automaton of the prefix: every state stands
for one distinct factor of each length in ``(len(link), len]``, so a single
pass yields the exact count for every length at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .checks import FAIL, PASS, UNSTABLE, CheckResult


class PatternViolation(ValueError):
    def __init__(self, index: int, value: int):
        super().__init__(f"d_{index} = {value} is not 1 or 2")
        self.index = index
        self.value = value


def factor_counts(word: Sequence[int], n_max: int) -> list[int]:
    """``counts[n]`` = number of distinct factors of length ``n`` in ``word``, for ``0 <= n <= n_max``."""
    length = [0]
    link = [-1]
    trans: list[dict[int, int]] = [{}]
    last = 0
    for a in word:
        cur = len(length)
        length.append(length[last] + 1)
        link.append(-1)
        trans.append({})
        p = last
        while p != -1 and a not in trans[p]:
            trans[p][a] = cur
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p][a]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(length)
                length.append(length[p] + 1)
                link.append(link[q])
                trans.append(dict(trans[q]))
                while p != -1 and trans[p].get(a) == q:
                    trans[p][a] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    diff = [0] * (n_max + 2)
    for state in range(1, len(length)):
        lo = length[link[state]] + 1
        if lo > n_max:
            continue
        diff[lo] += 1
        diff[min(length[state], n_max) + 1] -= 1
    counts, running = [1], 0
    for n in range(1, n_max + 1):
        running += diff[n]
        counts.append(running)
    return counts


def factor_counts_bruteforce(word: Sequence[int], n: int) -> int:
    word = tuple(word)
    return len({word[i : i + n] for i in range(len(word) - n + 1)})


@dataclass
class ComplexityProfile:
    """``f[i]`` is the count for length ``i+1``; ``d[i] = f[i+1] - f[i]`` is ``d_{i+1}``."""

    f: tuple[int, ...]
    prefix_len: int
    stabilized: tuple[bool, ...]
    d: tuple[int, ...] = field(init=False)
    runs: list[int] | None = field(init=False, default=None)
    pattern_error: str | None = field(init=False, default=None)
    pattern_index: int | None = field(init=False, default=None)

    def __post_init__(self) -> None:
        self.d = tuple(b - a for a, b in zip(self.f, self.f[1:]))
        try:
            self.runs = run_lengths(self)
        except PatternViolation as exc:
            self.pattern_error = str(exc)
            self.pattern_index = exc.index

    @property
    def n_max(self) -> int:
        return len(self.f)

    @property
    def all_stabilized(self) -> bool:
        return all(self.stabilized)

    def stable_d(self) -> tuple[int, ...]:
        """Differences whose both endpoints are stabilized."""
        out = []
        for i, x in enumerate(self.d):
            if not (self.stabilized[i] and self.stabilized[i + 1]):
                break
            out.append(x)
        return tuple(out)


def subword_complexity(source, n_max: int, initial_prefix: int = 1024, max_prefix: int = 1 << 22) -> ComplexityProfile:
    """Factor counts for lengths ``1..n_max``, doubling the prefix until they settle.

    A count is flagged stabilized when two consecutive doublings left it
    unchanged.  This is a heuristic: a factor first occurring further out
    would be missed.  ``source`` is a stream (anything with ``letters``) or a
    finite sequence; a finite sequence caps the prefix at its length.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")

    def take(n: int) -> Sequence[int]:
        if hasattr(source, "letters"):
            return source.letters(n)
        return source[:n]

    cap = max_prefix if hasattr(source, "letters") else min(max_prefix, len(source))
    L = min(max(initial_prefix, 2 * n_max), cap)
    history = [factor_counts(take(L), n_max)[1:]]
    while L < cap:
        L = min(2 * L, cap)
        history.append(factor_counts(take(L), n_max)[1:])
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            break
    if len(history) >= 3:
        a, b, c = history[-3:]
        stable = tuple(x == y == z for x, y, z in zip(a, b, c))
    else:
        stable = (False,) * n_max
    return ComplexityProfile(tuple(history[-1]), L, stable)


def run_lengths(profile: ComplexityProfile | Sequence[int]) -> list[int]:
    """Completed runs ``a_1, a_2, ...`` of ``d = 1^a1 2^a2 1^a3 ...`` over the stabilized range.

    ``a_1`` may be 0 when ``d`` opens with a 2.  The final run is dropped
    because it may continue past the inspected range.
    """
    d = profile.stable_d() if isinstance(profile, ComplexityProfile) else tuple(profile)
    runs: list[int] = []
    want, count = 1, 0
    for i, x in enumerate(d, 1):
        if x not in (1, 2):
            raise PatternViolation(i, x)
        if x == want:
            count += 1
        else:
            runs.append(count)
            want, count = x, 1
    return runs


def conjectured_runs(k: int, m: int) -> list[int]:
    a = [k - 1, k]
    while len(a) < m:
        j = len(a) + 1  # index being produced, 1-based
        if j % 2 == 0:
            a.append(a[j - 2] + a[j - 3])
        else:
            n = (j - 1) // 2
            a.append(k * a[j - 2] + k * (-1) ** n)
    return a[:m]


def check_recurrences(k: int, a: Sequence[int]) -> int | None:
    """1-based index of the first run length breaking the conjectured recurrences."""
    for j, x in enumerate(a, 1):
        if j == 1:
            ok = x == k - 1
        elif j == 2:
            ok = x == k
        elif j % 2 == 0:
            ok = x == a[j - 2] + a[j - 3]
        else:
            n = (j - 1) // 2
            ok = x == k * a[j - 2] + k * (-1) ** n
        if not ok:
            return j
    return None


def check_conjecture(k: int, m: int, max_prefix: int = 1 << 22) -> CheckResult:
    from .folding import tau_stream

    if m < 2:
        raise ValueError("m must be >= 2")
    params = {"k": k, "m": m}
    n_max = sum(conjectured_runs(k, m)) + 2
    profile = subword_complexity(tau_stream(k), n_max, max_prefix=max_prefix)
    a = profile.runs or []
    data = {
        "f": list(profile.f),
        "d": list(profile.d),
        "a": a[:m],
        "stabilized": profile.all_stabilized,
        "prefix_len": profile.prefix_len,
    }
    if not profile.all_stabilized:
        return CheckResult("conjecture", params, UNSTABLE, None, "factor counts did not settle", data)
    if profile.pattern_error:
        return CheckResult("conjecture", params, FAIL, profile.pattern_index, profile.pattern_error, data)
    bad = check_recurrences(k, a[:m])
    if bad is not None:
        return CheckResult("conjecture", params, FAIL, bad, f"a_{bad} = {a[bad - 1]}", data)
    if len(a) < m:
        return CheckResult("conjecture", params, FAIL, len(a) + 1, f"run a_{len(a) + 1} longer than predicted", data)
    return CheckResult("conjecture", params, PASS, None, "", data)
