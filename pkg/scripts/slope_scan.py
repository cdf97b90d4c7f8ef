"""Run the Sturmian pipeline over slopes sqrt(D) - floor(sqrt(D)) that lie in (1/2, 1).

    python scripts/slope_scan.py --d-max 40 --n 5000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from math import isqrt

from sumfree_words import sturmian
from sumfree_words.sturmian import Surd


@dataclass
class ScanConfig:
    d_max: int = 40
    n: int = 5000
    n_max: int = 40


def slopes(d_max: int):
    for D in range(2, d_max + 1):
        root = isqrt(D)
        if root * root == D:
            continue
        alpha = Surd(-root, 1, 1, D)
        if float(alpha) > 0.5:
            yield alpha


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=40)
    ap.add_argument("--n", type=int, default=5000)
    ap.add_argument("--n-max", type=int, default=40)
    args = ap.parse_args()
    cfg = ScanConfig(args.d_max, args.n, args.n_max)
    for alpha in slopes(cfg.d_max):
        try:
            spec = sturmian.find_intercept(alpha)
        except ValueError:
            print(f"{alpha.serialize():>14}  no intercept")
            continue
        parity = sturmian.check_star_parity(spec, cfg.n)
        res = sturmian.check_theorem_D(spec, cfg.n, cfg.n_max)
        print(f"{alpha.serialize():>14}  rho={spec.rho.serialize():<14} parity={parity.status:5} thm={res.status}")


if __name__ == "__main__":
    main()
