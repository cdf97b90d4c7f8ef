"""Tabulate the run lengths of the complexity differences of tau_k against the conjectured recurrences.

    python scripts/conjecture_table.py --k 2..6 --m 8 --out runs.jsonl
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from sumfree_words.complexity import check_conjecture, conjectured_runs
from sumfree_words.suite import parse_k_range


@dataclass
class TableConfig:
    ks: list[int]
    m: int = 8
    max_prefix: int = 1 << 22
    out: str | None = None


def run(cfg: TableConfig) -> list[dict]:
    rows = []
    for k in cfg.ks:
        res = check_conjecture(k, cfg.m, max_prefix=cfg.max_prefix)
        rows.append(
            {
                "k": k,
                "observed": res.data["a"],
                "predicted": conjectured_runs(k, cfg.m),
                "status": res.status,
                "fail_index": res.fail_index,
                "prefix_len": res.data["prefix_len"],
            }
        )
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", default="2..6")
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--max-prefix", type=int, default=1 << 22)
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = TableConfig(parse_k_range(args.k), args.m, args.max_prefix, args.out)
    rows = run(cfg)
    for row in rows:
        print(f"k={row['k']:<3} {row['status']:9} observed {row['observed']}")
        print(f"{'':15} predicted {row['predicted']}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(json.dumps({"config": asdict(cfg)}) + "\n")
            fh.writelines(json.dumps(r) + "\n" for r in rows)


if __name__ == "__main__":
    main()
