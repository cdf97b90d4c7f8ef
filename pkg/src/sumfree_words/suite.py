"""Verification suite: configuration, check cells and JSONL reports."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__, folding, sturmian, wnum
from .checks import ERROR, CheckResult
from .complexity import check_conjecture

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

CHECKS = (
    "thm-a", "thm-b", "gpd", "projection", "gamma", "mu", "alpha", "stars",
    "complement", "membership", "wnum", "value12", "construction", "kernel",
    "sturmian", "conjecture",
)


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    checks: list[str] = field(default_factory=lambda: ["all"])
    ks: list[int] = field(default_factory=lambda: [1, 2, 3, 4])
    n: int = 10_000
    kernel_depth: int = 3
    slopes: list[str] = field(default_factory=lambda: list(sturmian.STANDARD_SLOPES))
    conjecture_m: int = 6
    out: str | None = None
    jobs: int = 1

    def selected(self) -> list[str]:
        if not self.checks:
            raise ConfigError("no checks selected")
        names: list[str] = []
        for c in self.checks:
            if c == "all":
                names.extend(CHECKS)
            elif c in CHECKS:
                names.append(c)
            else:
                raise ConfigError(f"unknown check {c!r}")
        return list(dict.fromkeys(names))

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigError("n must be at least 2")
        if not self.ks or min(self.ks) < 1:
            raise ConfigError("k values must be positive")
        if self.jobs < 1 or self.kernel_depth < 1 or self.conjecture_m < 2:
            raise ConfigError("jobs and kernel_depth must be >= 1, conjecture_m >= 2")
        self.selected()


def parse_k_range(text: str) -> list[int]:
    """``"3"``, ``"1,2,5"`` or ``"1..4"``."""
    out: list[int] = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"bad k range {text!r}") from None
    if not out:
        raise ConfigError(f"empty k range {text!r}")
    return out


def load_config(path: str | Path) -> SuiteConfig:
    path = Path(path)
    try:
        raw = path.read_bytes()
        data = tomllib.loads(raw.decode()) if path.suffix == ".toml" else json.loads(raw)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    cfg = SuiteConfig()
    known = set(SuiteConfig.__dataclass_fields__) | {"k"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, value in data.items():
        if key in ("k", "ks"):
            cfg.ks = parse_k_range(value) if isinstance(value, (str, int)) else [int(x) for x in value]
        elif key == "checks":
            cfg.checks = [value] if isinstance(value, str) else list(value)
        else:
            setattr(cfg, key, value)
    return cfg


@dataclass
class CheckReport:
    check: str
    params: dict[str, Any]
    status: str
    fail_index: int | None
    elapsed_ms: int
    artifact_version: str = __version__
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        record = {"check": self.check, "k": self.params.get("k"), "N": self.params.get("N")}
        record.update(asdict(self))
        if not record["data"]:
            del record["data"]
        return json.dumps(record, sort_keys=False)

    def sort_key(self) -> tuple[str, str]:
        return self.check, json.dumps(self.params, sort_keys=True)


def _slope_spec(text: str) -> sturmian.SlopeSpec:
    """A slope name or ``p,q,r,D``, optionally followed by ``;p,q,r,D`` for the intercept."""
    alpha_text, _, rho_text = text.partition(";")
    alpha = sturmian.STANDARD_SLOPES.get(alpha_text) or sturmian.Surd.parse(alpha_text)
    if rho_text:
        return sturmian.SlopeSpec(alpha, sturmian.Surd.parse(rho_text))
    return sturmian.find_intercept(alpha)


def _sturmian_cell(slope: str, N: int, n_max: int = 50) -> CheckResult:
    spec = _slope_spec(slope)
    parity = sturmian.check_star_parity(spec, N)
    result = sturmian.check_theorem_D(spec, N, n_max)
    result.check = "sturmian"
    result.params = {"slope": slope, **result.params}
    if not parity:
        result.status, result.fail_index, result.detail = parity.status, parity.fail_index, "star parity: " + parity.detail
    return result


def _wnum_cell(k: int, N: int) -> CheckResult:
    ident = wnum.check_w_identities(k, 30)
    if not ident:
        return ident
    res = wnum.check_roundtrip(k, N)
    res.params["n_max"] = 30
    return res


RUNNERS: dict[str, Callable[..., CheckResult]] = {
    "thm-a": lambda k, N: folding.check_theorem_A(N),
    "thm-b": folding.check_theorem_B,
    "gpd": folding.check_gpd,
    "projection": folding.check_projection,
    "gamma": lambda k: folding.check_lemma_gamma(k),
    "mu": lambda k, N: folding.check_lemma_mu(k, min(N, 1000)),
    "alpha": lambda k, N: folding.check_lemma_alpha(k, min(N, 1000)),
    "stars": folding.check_star_positions,
    "complement": folding.check_complement,
    "membership": folding.check_membership_property,
    "wnum": _wnum_cell,
    "value12": wnum.check_value12,
    "construction": lambda k: wnum.check_construction_grid(k),
    "kernel": lambda k, N, max_a: wnum.check_kernel(k, N, max_a),
    "sturmian": _sturmian_cell,
    "conjecture": lambda k, m: check_conjecture(k, m),
}


def cells(cfg: SuiteConfig) -> list[tuple[str, dict[str, Any]]]:
    out: list[tuple[str, dict[str, Any]]] = []
    explicit = set(cfg.checks)
    for name in cfg.selected():
        if name == "thm-a":
            out.append((name, {"k": 1, "N": cfg.n}))
        elif name == "sturmian":
            out.extend((name, {"slope": s, "N": cfg.n}) for s in cfg.slopes)
        else:
            for k in cfg.ks:
                if name == "thm-b" and k < 2:
                    continue
                if name == "conjecture":
                    # k = 1 degenerates (a_3 = 0); only run it when asked for by name
                    if k < 2 and name not in explicit:
                        continue
                    out.append((name, {"k": k, "m": cfg.conjecture_m}))
                elif name in ("gamma", "construction"):
                    out.append((name, {"k": k}))
                elif name == "kernel":
                    out.append((name, {"k": k, "N": cfg.n, "max_a": cfg.kernel_depth}))
                else:
                    out.append((name, {"k": k, "N": cfg.n}))
    return out


def run_cell(cell: tuple[str, dict[str, Any]]) -> CheckReport:
    name, params = cell
    start = time.perf_counter()
    try:
        res = RUNNERS[name](**params)
        status, fail_index, detail, data = res.status, res.fail_index, res.detail, res.data
    except Exception as exc:  # reported as an error record, never fatal to the suite
        status, fail_index, detail, data = ERROR, None, f"{type(exc).__name__}: {exc}", {}
    elapsed = int((time.perf_counter() - start) * 1000)
    return CheckReport(name, params, status, fail_index, elapsed, detail=detail, data=data)


def run_suite(cfg: SuiteConfig) -> list[CheckReport]:
    cfg.validate()
    todo = cells(cfg)
    if not todo:
        raise ConfigError("the selection produced no checks")
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(run_cell, todo))
    else:
        reports = [run_cell(c) for c in todo]
    reports.sort(key=CheckReport.sort_key)
    if cfg.out:
        Path(cfg.out).write_text("".join(r.to_json() + "\n" for r in reports))
    return reports


def exit_code(reports: list[CheckReport]) -> int:
    return 0 if reports and all(r.status == "pass" for r in reports) else 1
