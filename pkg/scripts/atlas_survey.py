"""Survey: cell counts for every disjoint piece of a small group, plus a
sampling run of the Borel chart check.

    python scripts/atlas_survey.py --type A --rank 3 --samples 50
"""

import argparse
import time

import numpy as np

from tnnspringer import springer_cells as sc
from tnnspringer import tnn_parabolic as tp
from tnnspringer.coxeter import build_weyl


def survey(type_: str, rank: int) -> None:
    W = build_weyl(type_, rank)
    pieces = sc.all_pieces(W)
    print(f"{type_}{rank}: {len(W)} elements, {len(sc.bruhat_pairs(W))} cells, {len(pieces)} pieces")
    for piece in sorted(pieces, key=lambda p: (p.dim, p.z.word, p.z_prime.word)):
        atlas = sc.springer_atlas(piece)
        hist = " ".join(f"{d}:{n}" for d, n in atlas.dim_histogram.items())
        print(f"  z={''.join(map(str, piece.z.word)) or 'e':<8} z'={''.join(map(str, piece.z_prime.word)) or 'e':<8}"
              f" cells={len(atlas):<4} {hist}")


def sample(samples: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    for n in (2, 3, 4):
        start, worst = time.perf_counter(), 0.0
        for _ in range(samples):
            report = tp.borel_chart_check(tp.assemble_tnn(n, tp.random_tp_word(rng, n)))
            worst = max(worst, report["data"].agreement)
        print(f"SL{n}: {samples} totally positive samples, worst subspace distance {worst:.2e}, "
              f"{time.perf_counter() - start:.1f}s")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--type", default="A")
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    survey(args.type, args.rank)
    sample(args.samples, args.seed)


if __name__ == "__main__":
    main()
