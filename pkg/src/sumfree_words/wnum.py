"""The numeration system with place values ``W_k(j) = ((k+1)^j - (-1)^j) / (k+2)``.

Digit words are most-significant first: ``[x_r, ..., x_1]`` has value
``sum x_j W_k(j)``.  A word is *valid* when its digits lie in ``[0, k]``,
its leading digit is nonzero and its trailing run of the digit ``k`` has even
length.  Every positive integer has exactly one valid expansion, and the
parity of its trailing zero run decides the letters of the ``tau_k`` fixed
point, which is what makes large indices of that sequence cheap to evaluate.

All arithmetic is on Python integers, so values are exact at any size.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .checks import FAIL, UNSTABLE, CheckResult, fail

_tables: dict[int, list[int]] = {}
_tables_lock = threading.Lock()


class DigitError(ValueError):
    pass


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def _cached_table(k: int, upto: int) -> list[int]:
    """The shared table, covering at least ``0..upto``.  Callers must not mutate it."""
    _check_k(k)
    table = _tables.get(k)
    if table is None or len(table) <= upto:
        with _tables_lock:
            table = list(_tables.get(k, [0]))
            while len(table) <= upto:
                n = len(table) - 1
                table.append((k + 1) * table[n] + (1 if n % 2 == 0 else -1))
            _tables[k] = table
    return table


def w_table(k: int, upto: int) -> list[int]:
    """``[W_k(0), ..., W_k(upto)]``, from the recurrence ``W(n+1) = (k+1) W(n) + (-1)^n``."""
    return _cached_table(k, upto)[: upto + 1]


def w_value(k: int, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _cached_table(k, n)[n]


def _table_covering(k: int, n: int) -> list[int]:
    """A table whose last entry exceeds ``n``."""
    table = _cached_table(k, 4)
    while table[-1] <= n:
        table = _cached_table(k, 2 * len(table))
    return table


def decode(k: int, digits: Sequence[int]) -> int:
    _check_k(k)
    r = len(digits)
    table = _cached_table(k, r)
    total = 0
    for pos, x in zip(range(r, 0, -1), digits):
        if not 0 <= x <= k:
            raise DigitError(f"digit {x} outside [0, {k}]")
        total += x * table[pos]
    return total


def is_valid(k: int, digits: Sequence[int]) -> bool:
    if not digits or digits[0] == 0:
        return False
    if any(not 0 <= x <= k for x in digits):
        return False
    run = 0
    for x in reversed(digits):
        if x != k:
            break
        run += 1
    return run % 2 == 0


def encode(k: int, n: int) -> list[int]:
    """The valid expansion of ``n >= 1``.

    Pick the largest ``t`` with ``W(t) <= n``.  Either ``n = W(t)``, or
    ``a W(t) < n <= (a+1) W(t)`` for some ``1 <= a <= k`` and the remainder
    ``m = n - a W(t)`` lies in ``(0, W(t)]``.  A remainder strictly below
    ``W(t)`` is expanded recursively (it is shorter than ``t`` digits).  A
    remainder equal to ``W(t)`` means ``n = (a+1) W(t)``: that is the digit
    ``a+1`` followed by zeros when ``a < k``, and otherwise ``n = W(t+1) - 1``
    with ``t`` even, whose expansion is ``k`` repeated ``t`` times.
    """
    _check_k(k)
    if n <= 0:
        raise ValueError(f"only positive integers have expansions, got {n}")
    table = _table_covering(k, n)
    digits: list[int] = []
    width = None  # number of digit slots still to fill, once the top is fixed
    while True:
        t = bisect_right(table, n) - 1
        if width is not None:
            digits.extend([0] * (width - t))
        wt = table[t]
        if n == wt:
            digits.append(1)
            digits.extend([0] * (t - 1))
            return digits
        a = (n - 1) // wt
        m = n - a * wt
        if m == wt:
            if a < k:
                digits.append(a + 1)
                digits.extend([0] * (t - 1))
            else:
                assert t % 2 == 0, "n = (k+1) W(t) with t odd exceeds W(t+1)"
                digits.extend([k] * t)
            return digits
        digits.append(a)
        n, width = m, t - 1


def trailing_zeros(digits: Sequence[int]) -> int:
    run = 0
    for x in reversed(digits):
        if x != 0:
            break
        run += 1
    return run


def t_via_numeration(k: int, n: int) -> int:
    """Letter ``n`` (0-based) of the ``tau_k`` fixed point, computed from the expansion of ``n+1``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return 2 if trailing_zeros(encode(k, n + 1)) % 2 == 1 else 1


def count_valid(k: int, r: int) -> int:
    """Number of valid digit words of length exactly ``r``, counted by trailing ``k``-run."""
    _check_k(k)
    if r < 1:
        raise ValueError("r must be >= 1")
    total = 0
    for run in range(0, r + 1, 2):
        head = r - run  # digits before the run; the last of them is not k
        if head == 0:
            total += 1  # all digits equal to k
        elif head == 1:
            total += k - 1  # lead digit in [1, k-1]
        else:
            total += k * (k + 1) ** (head - 2) * k
    return total


def enumerate_valid_values(k: int, r: int, low_width: int = 8) -> np.ndarray:
    """Values of every valid word of length ``r``, by brute-force enumeration.

    The ``low_width`` least significant digits are enumerated as one numpy
    block; the remaining high digits are looped over in Python.
    """
    _check_k(k)
    base = k + 1
    low = min(low_width, r - 1)
    table = w_table(k, r)
    # low block: all base**low digit combinations, position 1 varies fastest
    low_vals = np.zeros(1, dtype=object if table[r] >= 2**62 else np.int64)
    low_run = np.zeros(1, dtype=np.int64)  # trailing k-run length within the block
    for pos in range(1, low + 1):
        digits = np.arange(base)
        vals = low_vals[None, :] + digits[:, None] * table[pos]
        # digit at pos extends the run only if every lower digit is k
        ext = (digits[:, None] == k) & (low_run[None, :] == pos - 1)
        run = np.where(ext, pos, low_run[None, :])
        low_vals, low_run = vals.ravel(), run.ravel()
    out = []
    high = r - low
    for idx in range(k * base ** (high - 1)):
        hd = []
        rem = idx
        for _ in range(high - 1):
            rem, d = divmod(rem, base)
            hd.append(d)
        hd.append(rem + 1)  # lead digit in [1, k]; hd is least significant first
        hval = sum(d * table[low + 1 + i] for i, d in enumerate(hd))
        hrun = 0
        for d in hd:
            if d != k:
                break
            hrun += 1
        run = np.where(low_run == low, low + hrun, low_run)
        out.append(hval + low_vals[run % 2 == 0])
    return np.concatenate(out)


@dataclass(frozen=True)
class KernelSpec:
    kappa: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.kappa < 2 or self.a < 0:
            raise ValueError("need kappa >= 2 and a >= 0")
        if not 0 <= self.b < self.kappa**self.a:
            raise ValueError(f"residue {self.b} outside [0, {self.kappa}^{self.a})")


def kernel_subsequence(k: int, spec: KernelSpec, N: int, letters: Sequence[int] | None = None) -> tuple[int, ...]:
    """``(t_k(kappa^a n + b))_{0 <= n < N}``.

    Letters come from the numeration rule unless a materialized prefix of the
    ``tau_k`` fixed point is passed in ``letters``.
    """
    step = spec.kappa**spec.a
    idx = range(spec.b, spec.b + step * N, step)
    if letters is not None:
        return tuple(letters[i] for i in idx)
    return tuple(t_via_numeration(k, i) for i in idx)


def distinctness_witness(k: int, c1: int, c2: int, N: int) -> int | None:
    """First ``n < N`` where ``t_k(K^c1 n - 1)`` and ``t_k(K^c2 n - 1)`` differ, ``K = (k+1)^2``.

    Indexing starts at ``n = 1`` since ``n = 0`` would ask for ``t_k(-1)``.
    """
    q1, q2 = (k + 1) ** (2 * c1), (k + 1) ** (2 * c2)
    for n in range(1, N + 1):
        if t_via_numeration(k, q1 * n - 1) != t_via_numeration(k, q2 * n - 1):
            return n
    return None


def kernel_evidence(k: int, max_a: int, N: int, letters: Sequence[int] | None = None) -> int:
    """Number of distinct length-``N`` prefixes among kernel elements with ``a <= max_a``, base ``k+1``."""
    kappa = k + 1
    need = kappa**max_a * N
    if letters is None:
        from .folding import tau_stream

        letters = tau_stream(k).letters(need)
    seen = set()
    for a in range(max_a + 1):
        step = kappa**a
        for b in range(step):
            seen.add(tuple(letters[b : b + step * N : step]))
    return len(seen)


def b_value(k: int, ell: int, n: int) -> int:
    """Value of the word ``(1 0^(2 ell - 1))^n``, cross-checked against the closed form."""
    if ell < 1 or n < 0:
        raise ValueError("need ell >= 1 and n >= 0")
    pattern = decode(k, ([1] + [0] * (2 * ell - 1)) * n) if n else 0
    closed = b_closed_form(k, ell, n)
    if pattern != closed:
        raise ArithmeticError(f"b({k},{ell},{n}): digit pattern {pattern} != closed form {closed}")
    return pattern


def b_closed_form(k: int, ell: int, n: int) -> int:
    q = (k + 1) ** (2 * ell)
    value = Fraction(q ** (n + 1) - q, (k + 2) * (q - 1)) - Fraction(n, k + 2)
    if value.denominator != 1:
        raise ArithmeticError("closed form is not an integer")
    return int(value)


def c_value(k: int, ell: int, r: int, n: int) -> int:
    if ell < 1 or r < 1 or n < r + 2:
        raise ValueError("need ell >= 1, r >= 1 and n >= r + 2")
    return b_value(k, ell, n) - b_value(k, ell, r) - (k + 1) * w_value(k, 2 * ell)


def c_expansion(k: int, ell: int, r: int, n: int) -> list[int]:
    """The valid expansion of ``c`` predicted by hand: ``(1 0^(2l-1))^(n-r-1) 0 k^(2lr-1) 0^(2l)``."""
    return ([1] + [0] * (2 * ell - 1)) * (n - r - 1) + [0] + [k] * (2 * ell * r - 1) + [0] * (2 * ell)


def check_construction(k: int, ell: int, r: int, n: int) -> CheckResult:
    """Recurrence, divisibility and the two letter clauses for ``b`` and ``c``.

    Clauses on ``b`` run for ``1 <= n' <= n``, those on ``c`` for
    ``r + 2 <= n' <= n``.
    """
    params = {"k": k, "l": ell, "r": r, "n": n}
    q = (k + 1) ** (2 * ell)
    unit = (q - 1) // (k + 2)
    prev = 0
    for m in range(1, n + 1):
        b = b_value(k, ell, m)
        if b != q * prev + m * unit:
            return fail("construction", params, m, "(i) recurrence")
        if b % unit:
            return fail("construction", params, m, "(ii) divisibility")
        if t_via_numeration(k, b - 1) != 2:
            return fail("construction", params, m, "(iii) t(b - 1) != 2")
        prev = b
    for m in range(r + 2, n + 1):
        c = c_value(k, ell, r, m)
        if t_via_numeration(k, c - 1) != 1:
            return fail("construction", params, m, "(iv) t(c - 1) != 1")
        enc = encode(k, c)
        expected = c_expansion(k, ell, r, m)
        # the predicted word may carry leading zeros only if n - r - 1 == 0
        while expected and expected[0] == 0:
            expected.pop(0)
        tz = trailing_zeros(enc)
        if enc != expected or tz == 0 or tz % 2:
            return fail("construction", params, m, f"expansion of c: {enc}")
    return CheckResult("construction", params)


def check_w_identities(k: int, n_max: int, word_limit: int = 12) -> CheckResult:
    """Seven identities for ``W_k`` up to ``n_max``, each side computed separately."""
    params = {"k": k, "n_max": n_max}
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    K = k + 1
    W = w_table(k, n_max + 2)

    def closed(n: int) -> int:
        num = K**n - (-1) ** n
        if num % (k + 2):
            raise ArithmeticError("W_k(n) not integral")
        return num // (k + 2)

    for n in range(n_max + 1):
        if W[n] != closed(n):
            return fail("w-identities", params, n, "definition")
        if W[n + 1] != K * W[n] + (-1) ** n:
            return fail("w-identities", params, n, "(i)")
        if W[n + 2] != k * W[n + 1] + K * W[n]:
            return fail("w-identities", params, n, "(ii)")
        if W[n + 1] + W[n] != K**n:
            return fail("w-identities", params, n, "(iii)")
        if n >= 1:
            lhs = k * sum(W[1 : n + 1])
            if lhs != (W[n + 1] if n % 2 else W[n + 1] - 1):
                return fail("w-identities", params, n, "(iv)")
            if W[n] != sum((-1) ** (j + 1) * K ** (n - j) for j in range(1, n + 1)):
                return fail("w-identities", params, n, "(v)")
            vi = K ** (n - 1) - k * sum(K ** (n - 2 * j - 1) for j in range(1, (n - 1) // 2 + 1))
            if n % 2 == 0:
                vi -= 1
            if W[n] != vi:
                return fail("w-identities", params, n, "(vi)")
    # (vii): length of tau^n(1) is W(n+1)
    from .folding import family

    tau = family(k).tau
    word = [1]
    ones, twos = 1, 0  # letter counts of tau^n(1)
    for n in range(n_max + 1):
        length = len(word) if n <= word_limit else ones + twos
        if length != W[n + 1]:
            return fail("w-identities", params, n, "(vii)")
        if n < word_limit:
            word = tau.apply(word)
        ones, twos = (k - 1) * ones + (k - 1 + k + 1) * twos, ones + twos
    return CheckResult("w-identities", params)


def check_roundtrip(k: int, N: int) -> CheckResult:
    """``decode(encode(n)) == n`` with a valid expansion, for ``1 <= n <= N``."""
    params = {"k": k, "N": N}
    for n in range(1, N + 1):
        digits = encode(k, n)
        if decode(k, digits) != n or not is_valid(k, digits):
            return fail("wnum", params, n, f"encode gave {digits}")
    return CheckResult("wnum", params)


def check_value12(k: int, N: int) -> CheckResult:
    """The numeration rule against the morphism-generated ``tau_k`` letters, ``0 <= n < N``."""
    from .folding import tau_stream

    params = {"k": k, "N": N}
    for n, a in enumerate(tau_stream(k).letters(N)):
        b = t_via_numeration(k, n)
        if a != b:
            return fail("value12", params, n, f"morphism {a}, numeration {b}")
    return CheckResult("value12", params)


def check_construction_grid(k: int, ell_max: int = 4, n_max: int = 8) -> CheckResult:
    """:func:`check_construction` for every ``ell <= ell_max`` and ``r`` with ``r + 2 <= n_max``."""
    params = {"k": k, "l_max": ell_max, "n_max": n_max}
    for ell in range(1, ell_max + 1):
        for r in range(1, max(n_max - 1, 2)):
            res = check_construction(k, ell, r, n_max)
            if not res:
                res.params = params
                res.detail = f"l={ell}, r={r}: {res.detail}"
                return res
    return CheckResult("construction", params)


def constructive_witness(k: int, c1: int, c2: int, m_max: int = 2000) -> int | None:
    """An index ``j`` where the ``c1`` and ``c2`` kernel subsequences must differ, built from ``b``.

    Take the least ``r`` with ``b(l, r)`` congruent to ``(k - K^(2l+1)) / (k+2)``
    modulo ``K^(2 c1)`` (``l = c2 - c1``, ``K = k+1``), set
    ``m = k + 1 + b(l, r)(k+2) / (K^(2l) - 1)`` and ``j = b(l, m-1) / K^(2 c1)``.
    ``None`` when ``m`` exceeds ``m_max``: ``b(l, m-1)`` has about ``2 l m`` digits.
    """
    if not 0 <= c1 < c2:
        raise ValueError("need 0 <= c1 < c2")
    ell, K = c2 - c1, k + 1
    mod = K ** (2 * c1)
    target = (k - K ** (2 * ell + 1)) * pow(k + 2, -1, mod) % mod if mod > 1 else 0
    den = K ** (2 * ell) - 1
    r = 1
    while True:
        b = b_value(k, ell, r)
        m = k + 1 + b * (k + 2) // den
        if m > m_max:
            return None
        if b % mod == target and ell * m >= c1:
            return b_value(k, ell, m - 1) // mod
        r += 1


def check_kernel(k: int, N: int, max_a: int = 4, evidence_N: int = 10_000, witness_N: int = 100_000) -> CheckResult:
    """Finite evidence of an infinite kernel.

    The subsequences ``t_k((k+1)^(2c) n - 1)`` for ``c = 0, 1, 2`` must be
    pairwise distinct, and the number of distinct kernel prefixes must grow
    strictly with the depth ``a = 1..max_a``.  Witnesses are searched among
    the first ``max(N, witness_N)`` terms, then taken from the explicit
    construction when that is small enough.  A pair with neither is reported
    unstable: agreement on a prefix proves nothing either way.
    """
    params = {"k": k, "N": N, "max_a": max_a}
    horizon = max(N, witness_N)
    witnesses: dict[str, dict[str, int | str]] = {}
    missing = []
    for c1, c2 in ((0, 1), (0, 2), (1, 2)):
        w = distinctness_witness(k, c1, c2, horizon)
        how = "search"
        if w is None:
            w, how = constructive_witness(k, c1, c2), "construction"
            K = (k + 1) ** 2
            if w is not None and t_via_numeration(k, K**c1 * w - 1) == t_via_numeration(k, K**c2 * w - 1):
                return fail("kernel", params, c2, f"constructed index {w} does not separate c={c1} and c={c2}")
        if w is None:
            missing.append(f"{c1},{c2}")
        else:
            witnesses[f"{c1},{c2}"] = {"n": w, "via": how}
    from .folding import tau_stream

    letters = tau_stream(k).letters((k + 1) ** max_a * evidence_N)
    counts = [kernel_evidence(k, a, evidence_N, letters) for a in range(max_a + 1)]
    data = {"witnesses": witnesses, "evidence": counts, "witness_horizon": horizon}
    for a in range(2, max_a + 1):
        if counts[a] <= counts[a - 1]:
            return CheckResult("kernel", params, FAIL, a, f"evidence stalled: {counts}", data)
    if missing:
        detail = f"no witness within {horizon} terms and construction too large for pairs {missing}"
        return CheckResult("kernel", params, UNSTABLE, None, detail, data)
    return CheckResult("kernel", params, data=data)
