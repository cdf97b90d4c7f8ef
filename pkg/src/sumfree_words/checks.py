"""Result type shared by all the prefix-equality checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

PASS = "pass"
FAIL = "fail"
UNSTABLE = "unstable"
ERROR = "error"


@dataclass
class CheckResult:
    check: str
    params: dict[str, Any]
    status: str = PASS
    fail_index: int | None = None
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status == FAIL and self.fail_index is None:
            raise ValueError("a failing check must carry fail_index")

    def __bool__(self) -> bool:
        return self.status == PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS


def first_mismatch(left: Sequence, right: Sequence) -> int | None:
    """Index of the first disagreement, or ``None``.  Unequal lengths count as a mismatch at the shorter end."""
    for i, (a, b) in enumerate(zip(left, right)):
        if a != b:
            return i
    if len(left) != len(right):
        return min(len(left), len(right))
    return None


def compare(check: str, params: dict[str, Any], left: Sequence, right: Sequence, *, base: int = 0) -> CheckResult:
    """Exact prefix equality; the failure index is reported in ``base`` indexing."""
    i = first_mismatch(left, right)
    if i is None:
        return CheckResult(check, params)
    a = left[i] if i < len(left) else None
    b = right[i] if i < len(right) else None
    return CheckResult(check, params, FAIL, i + base, f"index {i + base}: {a!r} != {b!r}")


def fail(check: str, params: dict[str, Any], index: int, detail: str) -> CheckResult:
    return CheckResult(check, params, FAIL, index, detail)
