"""The bijection between binary sequences and sum-free sets.

Positions ``n = 1, 2, ...`` are scanned in order.  A position already in
``S + S`` is marked ``*`` and consumes nothing; any other position consumes
the next input letter and becomes a member of ``S`` (letter 1) or is skipped
(letter 0).  The resulting ternary word ``v`` is the star-annotated trace.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator

import numpy as np

from .words import STAR, STAR_ALIASES, format_word


class SumFreeViolation(ValueError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"not sum-free: {x} + {y} = {z}")
        self.witness = (x, y, z)


@dataclass(frozen=True)
class SumFreeTrace:
    """Immutable snapshot of a partially built ``theta`` construction.

    ``v[i]`` holds ``v_{i+1}`` (the trace is 1-based in the literature) with
    ``STAR`` standing for ``*``.  ``S`` lists every member ``<= len(v)``.
    """

    input: tuple[int, ...]
    v: tuple[int, ...]
    S: tuple[int, ...]

    @property
    def frontier(self) -> int:
        return len(self.v)

    def v_at(self, n: int) -> int:
        return self.v[n - 1]

    def v_string(self) -> str:
        return format_word(self.v, STAR_ALIASES, sep="")

    def differences(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.S, self.S[1:]))


@dataclass(frozen=True)
class GapCounters:
    """``mu``/``alpha``/``d``; entry ``i`` describes the gap after ``s_{i+1}``."""

    mu: tuple[int, ...]
    alpha: tuple[int, ...]
    d: tuple[int, ...]


class ThetaBuilder:
    """Single-writer incremental ``theta`` construction.

    ``sums`` is a boolean array indexed by value; every pairwise sum of the
    current members up to ``capacity`` is set.  When the scan passes the
    capacity the array is doubled and the sums landing in the new range are
    filled in from sorted pairs.
    """

    def __init__(self, w: Iterable[int], capacity: int = 1024):
        self._input: Iterator[int] = iter(w)
        self._consumed: list[int] = []
        self._v: list[int] = []
        self._members = np.zeros(64, dtype=np.int64)
        self._count = 0
        self._capacity = capacity
        self._sums = np.zeros(capacity + 1, dtype=bool)
        self.exhausted = False
        self._lock = threading.Lock()

    @property
    def frontier(self) -> int:
        return len(self._v)

    @property
    def size(self) -> int:
        return self._count

    def _grow(self, need: int) -> None:
        old = self._capacity
        new = max(need, 2 * old)
        sums = np.zeros(new + 1, dtype=bool)
        sums[: old + 1] = self._sums
        members = self._members[: self._count]
        for s in members.tolist():
            lo = np.searchsorted(members, old - s + 1)
            hi = np.searchsorted(members, new - s, side="right")
            if lo < hi:
                sums[s + members[lo:hi]] = True
        self._sums = sums
        self._capacity = new

    def _insert(self, n: int) -> None:
        if self._count == len(self._members):
            self._members = np.concatenate([self._members, np.zeros_like(self._members)])
        self._members[self._count] = n
        self._count += 1
        hi = np.searchsorted(self._members[: self._count], self._capacity - n, side="right")
        self._sums[n + self._members[:hi]] = True

    def step(self) -> bool:
        """Scan one more position; ``False`` once a finite input runs out."""
        if self.exhausted:
            return False
        n = len(self._v) + 1
        if n > self._capacity:
            self._grow(n)
        if self._sums[n]:
            self._v.append(STAR)
            return True
        try:
            a = next(self._input)
        except StopIteration:
            self.exhausted = True
            return False
        if a not in (0, 1):
            raise ValueError(f"input letter {a!r} is not binary")
        self._consumed.append(a)
        self._v.append(a)
        if a == 1:
            self._insert(n)
        return True

    def run_to(self, frontier: int) -> ThetaBuilder:
        with self._lock:
            if frontier > self._capacity:
                self._grow(frontier)
            while len(self._v) < frontier and self.step():
                pass
        return self

    def run_until_elements(self, count: int, limit: int | None = None) -> ThetaBuilder:
        """Scan until ``count`` members are known (or ``limit`` positions)."""
        with self._lock:
            while self._count < count and (limit is None or len(self._v) < limit):
                if not self.step():
                    break
        return self

    def snapshot(self) -> SumFreeTrace:
        with self._lock:
            return SumFreeTrace(
                tuple(self._consumed),
                tuple(self._v),
                tuple(self._members[: self._count].tolist()),
            )


def theta_forward(w: Iterable[int], frontier: int) -> SumFreeTrace:
    if frontier < 1:
        raise ValueError("frontier must be at least 1")
    return ThetaBuilder(w, capacity=frontier).run_to(frontier).snapshot()


def theta_elements(w: Iterable[int], count: int) -> SumFreeTrace:
    """Trace extended just far enough to contain ``count`` members of ``S``."""
    return ThetaBuilder(w).run_until_elements(count).snapshot()


def _take_upto(S: Iterable[int], frontier: int) -> list[int]:
    out: list[int] = []
    for s in S:
        if s > frontier:
            break
        out.append(s)
    return out


def check_sumfree(S: Iterable[int]) -> tuple[int, int, int] | None:
    """``None`` if sum-free, else a witness ``(x, y, z)`` with ``x <= y`` and the least ``z``."""
    members = np.asarray(list(S), dtype=np.int64)
    if members.size == 0:
        return None
    if members[0] <= 0 or np.any(np.diff(members) <= 0):
        raise ValueError("expected a strictly ascending sequence of positive integers")
    top = int(members[-1])
    present = np.zeros(top + 1, dtype=bool)
    present[members] = True
    best = None
    for i, x in enumerate(members.tolist()):
        if 2 * x > top or (best is not None and 2 * x > best[2]):
            break
        ys = members[i:]
        zs = x + ys
        zs = zs[zs <= top]
        hit = np.flatnonzero(present[zs])
        if hit.size:
            z = int(zs[hit[0]])
            if best is None or z < best[2]:
                best = (x, z - x, z)
    return best


def theta_inverse(S: Iterable[int], frontier: int) -> tuple[int, ...]:
    """Binary word ``w'`` with ``theta(w')`` agreeing with ``S`` up to ``frontier``."""
    members = _take_upto(S, frontier)
    witness = check_sumfree(members)
    if witness is not None:
        raise SumFreeViolation(*witness)
    sums = np.zeros(frontier + 1, dtype=bool)
    arr = np.asarray(members, dtype=np.int64)
    for s in members:
        t = s + arr
        sums[t[t <= frontier]] = True
    is_member = np.zeros(frontier + 1, dtype=bool)
    is_member[arr] = True
    keep = ~sums[1:]
    return tuple(is_member[1:][keep].astype(int).tolist())


def gap_counters(trace: SumFreeTrace) -> GapCounters:
    if len(trace.S) < 2:
        raise ValueError("need at least two members of S")
    zeros = [0, *accumulate(1 if a == 0 else 0 for a in trace.v)]
    stars = [0, *accumulate(1 if a == STAR else 0 for a in trace.v)]
    mu, alpha, d = [], [], []
    for a, b in zip(trace.S, trace.S[1:]):
        # v positions a+1 .. b-1 are list slots a .. b-2
        mu.append(zeros[b - 1] - zeros[a])
        alpha.append(stars[b - 1] - stars[a])
        d.append(b - a)
    return GapCounters(tuple(mu), tuple(alpha), tuple(d))
