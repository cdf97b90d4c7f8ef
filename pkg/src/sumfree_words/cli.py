"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
or configuration errors.  Machine-readable output is JSONL on stdout (or
``--out``); a human-readable table goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import folding, sturmian, wnum
from .checks import CheckResult
from .complexity import check_conjecture
from .suite import CHECKS, CheckReport, ConfigError, SuiteConfig, exit_code, load_config, parse_k_range, run_suite
from .sumfree import gap_counters, theta_elements, theta_forward
from .words import format_word

GEN_NAMES = ("pkf", "tau", "mu", "alpha", "v", "sumfree", "diff", "sturmian", "what-complement")


def _emit(record: dict, out=None) -> None:
    print(json.dumps(record), file=out or sys.stdout)


def _report(res: CheckResult, elapsed_ms: int = 0) -> CheckReport:
    return CheckReport(res.check, res.params, res.status, res.fail_index, elapsed_ms, detail=res.detail, data=res.data)


def _table(reports: list[CheckReport]) -> None:
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        mark = r.status.upper()
        extra = f" (first failure at {r.fail_index})" if r.fail_index is not None else ""
        print(f"{mark:8} {r.check:13} {params} [{r.elapsed_ms} ms]{extra}", file=sys.stderr)


def cmd_gen(args) -> int:
    k, n = args.k, args.len
    if args.name == "pkf":
        text = format_word(folding.pkf_stream(k).letters(n), sep="")
    elif args.name == "tau":
        text = format_word(folding.tau_stream(k).letters(n), sep="")
    elif args.name == "what-complement":
        text = format_word(folding.sigma_hat_stream(k).letters(n), sep="")
    elif args.name == "v":
        text = theta_forward(folding.pkf_stream(k), n).v_string()
    elif args.name == "sumfree":
        text = "\n".join(map(str, theta_elements(folding.pkf_stream(k), n).S[:n]))
    elif args.name in ("mu", "alpha", "diff"):
        g = gap_counters(theta_elements(folding.pkf_stream(k), n + 1))
        seq = {"mu": g.mu, "alpha": g.alpha, "diff": g.d}[args.name]
        text = format_word(seq[:n], sep=",")
    else:
        if args.alpha is None:
            raise ConfigError("gen sturmian needs --alpha")
        spec = _slope_from_args(args.alpha, args.rho)
        text = format_word(sturmian.mechanical_stream(spec).letters(n), sep="")
    print(text)
    return 0


def _slope_from_args(alpha_text: str, rho_text: str | None) -> sturmian.SlopeSpec:
    try:
        alpha = sturmian.STANDARD_SLOPES.get(alpha_text) or sturmian.Surd.parse(alpha_text)
        if rho_text is None:
            return sturmian.find_intercept(alpha)
        return sturmian.SlopeSpec(alpha, sturmian.Surd.parse(rho_text))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_verify(args) -> int:
    cfg = load_config(args.config) if args.config else SuiteConfig()
    cfg.checks = [args.check]
    if args.k is not None:
        cfg.ks = parse_k_range(args.k)
    for attr in ("n", "out", "jobs", "kernel_depth"):
        value = getattr(args, attr)
        if value is not None:
            setattr(cfg, attr, value)
    if args.m is not None:
        cfg.conjecture_m = args.m
    reports = run_suite(cfg)
    if not cfg.out:
        for r in reports:
            print(r.to_json())
    _table(reports)
    return exit_code(reports)


def _digits(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad digit list {text!r}") from None


def cmd_wnum(args) -> int:
    k = args.k
    op = args.op
    try:
        if op == "encode":
            digits = wnum.encode(k, args.n)
            _emit({"k": k, "n": args.n, "digits": format_word(digits, sep=",")})
            return 0
        if op == "decode":
            digits = _digits(args.digits)
            _emit({"k": k, "digits": args.digits, "value": wnum.decode(k, digits), "valid": wnum.is_valid(k, digits)})
            return 0
        if op == "validate":
            digits = _digits(args.digits)
            _emit({"k": k, "digits": args.digits, "valid": wnum.is_valid(k, digits)})
            return 0
        if op == "kernel":
            if args.max_a is not None:
                _emit({"k": k, "max_a": args.max_a, "N": args.n, "evidence": wnum.kernel_evidence(k, args.max_a, args.n)})
                return 0
            spec = wnum.KernelSpec(k + 1, args.a, args.b)
            letters = wnum.kernel_subsequence(k, spec, args.n)
            _emit({"k": k, "kappa": k + 1, "a": args.a, "b": args.b, "letters": format_word(letters, sep=",")})
            return 0
        if op == "check-identities":
            check, params = wnum.check_w_identities, (k, args.n_max)
        else:
            check, params = wnum.check_construction, (k, args.l, args.r, args.n)
        start = time.perf_counter()
        res = check(*params)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(_report(res, int((time.perf_counter() - start) * 1000)).to_json())
    return 0 if res else 1


def cmd_sturmian(args) -> int:
    spec = _slope_from_args(args.alpha, args.rho)
    reports = []
    try:
        for check, extra in ((sturmian.check_star_parity, ()), (sturmian.check_theorem_D, (args.n_max,))):
            start = time.perf_counter()
            res = check(spec, args.n, *extra)
            reports.append(_report(res, int((time.perf_counter() - start) * 1000)))
    except sturmian.PreconditionError as exc:
        raise ConfigError(str(exc)) from None
    for r in reports:
        print(r.to_json())
    _table(reports)
    return exit_code(reports)


def cmd_complexity(args) -> int:
    res = check_conjecture(args.k, args.m, max_prefix=args.max_prefix)
    record = dict(res.data)
    record["conjecture"] = res.status
    if res.detail:
        record["detail"] = res.detail
    print(json.dumps(record))
    return 0 if res else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print a prefix of one of the sequences")
    g.add_argument("name", choices=GEN_NAMES)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--len", type=int, default=32)
    g.add_argument("--alpha", help="slope name or p,q,r,D (sturmian only)")
    g.add_argument("--rho", help="intercept p,q,r,D or a/b (sturmian only; searched when omitted)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run verification checks, JSONL out")
    v.add_argument("check", choices=CHECKS + ("all",))
    v.add_argument("--k", help="k values: 3, 1,2,5 or 1..4")
    v.add_argument("--n", type=int)
    v.add_argument("--m", type=int, help="number of run lengths for the conjecture check")
    v.add_argument("--kernel-depth", type=int)
    v.add_argument("--out")
    v.add_argument("--jobs", type=int)
    v.add_argument("--config", help="JSON or TOML suite configuration")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("wnum", help="the W_k numeration system")
    w.add_argument("op", choices=("encode", "decode", "validate", "check-identities", "check-construction", "kernel"))
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--n", type=int, default=1)
    w.add_argument("--digits", default="")
    w.add_argument("--n-max", type=int, default=30)
    w.add_argument("--l", type=int, default=1)
    w.add_argument("--r", type=int, default=1)
    w.add_argument("--a", type=int, default=0)
    w.add_argument("--b", type=int, default=0)
    w.add_argument("--max-a", type=int)
    w.set_defaults(func=cmd_wnum)

    s = sub.add_parser("sturmian", help="sum-free sets of Sturmian words")
    s.add_argument("action", choices=("check",))
    s.add_argument("--alpha", required=True)
    s.add_argument("--rho")
    s.add_argument("--n", type=int, default=10_000)
    s.add_argument("--n-max", type=int, default=50)
    s.set_defaults(func=cmd_sturmian)

    c = sub.add_parser("complexity", help="subword complexity of tau_k and the run-length conjecture")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--m", type=int, default=8)
    c.add_argument("--max-prefix", type=int, default=1 << 22)
    c.set_defaults(func=cmd_complexity)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:  # ConfigError and bad parameters
        print(f"error: {exc}", file=sys.stderr)
        return 2
