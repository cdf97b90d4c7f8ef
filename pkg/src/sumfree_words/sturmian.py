"""Mechanical words with exact quadratic-surd slopes, and the sum-free sets they generate.

Everything is computed with integers: ``floor((p + q sqrt(D)) / r)`` comes
from ``isqrt(q^2 D)``, never from floating point, because one wrong floor
shifts every later letter of the trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .checks import CheckResult, fail
from .complexity import factor_counts
from .sumfree import STAR, gap_counters, theta_elements, theta_forward
from .words import MorphicStream


class PreconditionError(ValueError):
    pass


def _is_square(D: int) -> bool:
    return D >= 0 and isqrt(D) ** 2 == D


@dataclass(frozen=True)
class Surd:
    """The real number ``(p + q sqrt(D)) / r`` with ``r > 0``; ``q = 0`` gives a rational."""

    p: int
    q: int
    r: int
    D: int

    def __post_init__(self) -> None:
        if self.r == 0:
            raise ValueError("zero denominator")
        if self.D < 0:
            raise ValueError("D must be non-negative")
        if self.r < 0:
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)
            object.__setattr__(self, "r", -self.r)

    @classmethod
    def parse(cls, text: str) -> Surd:
        """``"p,q,r,D"``; a bare ``"a/b"`` or integer is read as a rational."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) == 4:
            return cls(*(int(x) for x in parts))
        if len(parts) == 1:
            f = Fraction(parts[0])
            return cls(f.numerator, 0, f.denominator, 0)
        raise ValueError(f"cannot parse surd {text!r}; expected p,q,r,D")

    @classmethod
    def rational(cls, value: Fraction | int) -> Surd:
        value = Fraction(value)
        return cls(value.numerator, 0, value.denominator, 0)

    def serialize(self) -> str:
        return f"{self.p},{self.q},{self.r},{self.D}"

    @property
    def is_rational(self) -> bool:
        return self.q == 0 or _is_square(self.D)

    def floor(self) -> int:
        p, q, r, D = self.p, self.q, self.r, self.D
        if q == 0:
            return p // r
        root = isqrt(q * q * D)
        exact = root * root == q * q * D
        if q > 0:
            top = p + root  # floor of p + q sqrt(D)
        else:
            top = p - root if exact else p - root - 1
        return top // r

    def __float__(self) -> float:
        return (self.p + self.q * self.D**0.5) / self.r

    def affine(self, n: int, other: Surd) -> Surd:
        """``n * self + other``; both must live in the same field unless ``other`` is rational."""
        if other.q != 0 and self.q != 0 and other.D != self.D:
            raise ValueError("intercept and slope must share the same square root")
        D = self.D if self.q != 0 else other.D
        return Surd(
            n * self.p * other.r + other.p * self.r,
            n * self.q * other.r + other.q * self.r,
            self.r * other.r,
            D,
        )


@dataclass(frozen=True)
class SlopeSpec:
    alpha: Surd
    rho: Surd

    def __post_init__(self) -> None:
        a = self.alpha
        if a.is_rational:
            raise ValueError("slope must be irrational (q != 0 and D not a square)")
        if not (0 < float(a) < 1) or a.floor() != 0:
            raise ValueError("slope must lie in (0, 1)")
        if self.rho.q != 0 and self.rho.D != a.D:
            raise ValueError("intercept must be rational or share the slope's square root")

    def position(self, n: int) -> int:
        """``floor(n alpha + rho)``."""
        return self.alpha.affine(n, self.rho).floor()


def mechanical_stream(spec: SlopeSpec) -> MorphicStream:
    """Lower mechanical word ``t_n = floor((n+1) alpha + rho) - floor(n alpha + rho)``, 0-based."""

    def letter(n: int) -> int:
        return spec.position(n + 1) - spec.position(n)

    return MorphicStream(generator=letter, index_base=0, alphabet_size=2, name="mechanical")


def require_11_no_00(stream, N: int) -> CheckResult:
    params = {"N": N}
    t = stream.letters(N) if hasattr(stream, "letters") else tuple(stream[:N])
    for i in range(min(2, N)):
        if t[i] != 1:
            return fail("require-11", params, i, f"t_{i} = {t[i]}")
    for i in range(1, N):
        if t[i] == 0 and t[i - 1] == 0:
            return fail("require-11", params, i, "factor 00")
    return CheckResult("require-11", params)


def find_intercept(alpha: Surd, N: int = 1000, denominator: int = 64) -> SlopeSpec:
    """First intercept ``j/den`` (then ``(j + alpha)/den``) whose mechanical word passes the hypotheses."""
    candidates = [Surd(j, 0, denominator, 0) for j in range(denominator)]
    candidates += [Surd(j * alpha.r + alpha.p, alpha.q, denominator * alpha.r, alpha.D) for j in range(denominator)]
    for rho in candidates:
        try:
            spec = SlopeSpec(alpha, rho)
        except ValueError:
            continue
        if require_11_no_00(mechanical_stream(spec), N):
            return spec
    raise ValueError(f"no intercept found for slope {alpha.serialize()}")


def _require_hypothesis(spec: SlopeSpec, N: int) -> MorphicStream:
    stream = mechanical_stream(spec)
    if not require_11_no_00(stream, N):
        raise PreconditionError("stream must start with 11 and avoid 00")
    return stream


def check_star_parity(spec: SlopeSpec, N: int) -> CheckResult:
    """Stars sit exactly at the even positions; every member is odd."""
    params = {"alpha": spec.alpha.serialize(), "rho": spec.rho.serialize(), "N": N}
    stream = _require_hypothesis(spec, N)
    trace = theta_forward(stream, N)
    for n, a in enumerate(trace.v, 1):
        if (a == STAR) != (n % 2 == 0):
            return fail("star-parity", params, n, f"v_{n} = {a}")
    for i, s in enumerate(trace.S, 1):
        if s % 2 == 0:
            return fail("star-parity", params, i, f"s_{i} = {s} is even")
    return CheckResult("star-parity", params)


def phi(mu) -> list[int]:
    """``0 -> 1``, ``1 -> 10``."""
    out: list[int] = []
    for m in mu:
        out.append(1)
        if m:
            out.append(0)
    return out


def check_theorem_D(spec: SlopeSpec, N: int, n_max: int = 50) -> CheckResult:
    """The difference sequence of the sum-free set is ``2 (mu + 1)`` and Sturmian at desk scale."""
    params = {"alpha": spec.alpha.serialize(), "rho": spec.rho.serialize(), "N": N, "n_max": n_max}
    stream = _require_hypothesis(spec, 2)
    trace = theta_elements(stream, N + 1)
    if not require_11_no_00(stream, len(trace.input)):
        raise PreconditionError("stream must start with 11 and avoid 00")
    g = gap_counters(trace)
    mu, alpha, d = g.mu[:N], g.alpha[:N], g.d[:N]
    if len(d) < N:
        return fail("thm-d", params, len(d) + 1, "trace too short")
    for i, m in enumerate(mu, 1):
        if m not in (0, 1):
            return fail("thm-d", params, i, f"(a) mu_{i} = {m}")
    rebuilt = phi(mu)
    t = stream.letters(len(rebuilt))
    for i, (x, y) in enumerate(zip(rebuilt, t)):
        if x != y:
            return fail("thm-d", params, i, f"(b) phi(mu) differs from t at {i}")
    for i, (m, a) in enumerate(zip(mu, alpha), 1):
        if a != m + 1:
            return fail("thm-d", params, i, f"(c) alpha_{i} = {a}, mu_{i} = {m}")
    for i, (m, x) in enumerate(zip(mu, d), 1):
        if x != 2 * (m + 1):
            return fail("thm-d", params, i, f"(d) d_{i} = {x}")
    relabeled = [0 if x == 2 else 1 for x in d]
    counts = factor_counts(relabeled, n_max)
    for n in range(1, n_max + 1):
        if counts[n] != n + 1:
            return fail("thm-d", params, n, f"(e) {counts[n]} factors of length {n}")
    return CheckResult("thm-d", params, data={"d_prefix": list(d[:20])})


# Slopes in (1/2, 1) so that 00 can be avoided.
STANDARD_SLOPES = {
    "golden": Surd(-1, 1, 2, 5),  # (sqrt 5 - 1)/2
    "silver": Surd(2, -1, 1, 2),  # 2 - sqrt 2
    "sqrt3": Surd(-1, 1, 1, 3),  # sqrt 3 - 1
    "sqrt7": Surd(-2, 1, 1, 7),  # sqrt 7 - 2
}
