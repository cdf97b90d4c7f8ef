"""Count distinct (k+1)-kernel prefixes of tau_k by depth, and find separating indices.

    python scripts/kernel_growth.py --k 1..4 --max-a 5 --n 10000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from sumfree_words import wnum
from sumfree_words.folding import tau_stream
from sumfree_words.suite import parse_k_range


@dataclass
class GrowthConfig:
    ks: list[int]
    max_a: int = 5
    n: int = 10_000
    witness_n: int = 100_000


def growth(k: int, cfg: GrowthConfig) -> list[int]:
    letters = tau_stream(k).letters((k + 1) ** cfg.max_a * cfg.n)
    return [wnum.kernel_evidence(k, a, cfg.n, letters) for a in range(cfg.max_a + 1)]


def witnesses(k: int, cfg: GrowthConfig) -> dict[str, str]:
    out = {}
    for c1, c2 in ((0, 1), (0, 2), (1, 2)):
        n = wnum.distinctness_witness(k, c1, c2, cfg.witness_n)
        if n is not None:
            out[f"{c1},{c2}"] = f"n={n}"
            continue
        j = wnum.constructive_witness(k, c1, c2)
        out[f"{c1},{c2}"] = f"constructed n={j}" if j is not None else "none found"
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", default="1..4")
    ap.add_argument("--max-a", type=int, default=5)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--witness-n", type=int, default=100_000)
    args = ap.parse_args()
    cfg = GrowthConfig(parse_k_range(args.k), args.max_a, args.n, args.witness_n)
    for k in cfg.ks:
        start = time.perf_counter()
        counts = growth(k, cfg)
        w = witnesses(k, cfg)
        print(f"k={k} counts by depth {counts}  witnesses {w}  [{time.perf_counter() - start:.1f}s]")


if __name__ == "__main__":
    main()
