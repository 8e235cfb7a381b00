"""Compare the compiled rank kernel against the pure-Python fallback.

Builds a few deterministic complexes, extracts their boundary matrices
once, then times the rank computation alone under each backend.  Both
backends must agree exactly; the script exits nonzero if they differ.

The last workload is large and very sparse, so the router sends it to
the pure path even in the default mode; its ratio near 1.0x shows the
routing decision, not the kernel gap.

Run from the repository root:

    python3 benchmarks/bench_rank.py
    python3 benchmarks/bench_rank.py --repeat 5
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from dualcx import (
    boundary_matrices,
    cartesian_product_triangulated,
    simplicial_product,
    star_subdivision,
    validate_complex,
)
from dualcx.rank import compiled_available, matrix_rank


def polygon(n: int):
    verts = [f"p{i}" for i in range(n)]
    simplices = [
        {"id": f"e{i}", "facets": [verts[i], verts[(i + 1) % n]]}
        for i in range(n)
    ]
    return validate_complex({"vertices": verts, "simplices": simplices})


def subdivided_disc(rounds: int):
    cx = validate_complex({
        "vertices": ["a", "b", "c"],
        "simplices": [
            {"id": "ab", "facets": ["a", "b"]},
            {"id": "bc", "facets": ["b", "c"]},
            {"id": "ca", "facets": ["c", "a"]},
            {"id": "abc", "facets": ["ab", "bc", "ca"]},
        ],
    })
    for i in range(rounds):
        top = max(cx.ids(), key=lambda sid: (cx.simplex(sid).dim, sid))
        cx = star_subdivision(cx, top, f"w{i}")
    return cx


def workloads():
    yield "torus 12x12 tensor", simplicial_product(polygon(12), polygon(12))
    yield "disc, 300 subdivisions", subdivided_disc(300)
    yield "torus 40x40 staircase", cartesian_product_triangulated(
        polygon(40), polygon(40)
    ).triangulated


def extract(cx):
    """Boundary matrices as (rows, cols, entry triples) per dimension."""
    cc = boundary_matrices(cx)
    out = []
    for k in range(1, len(cc.boundaries)):
        cols = cc.boundaries[k]
        triples = [
            (row, j, sign)
            for j, col in enumerate(cols)
            for row, sign in col
        ]
        out.append((len(cc.bases[k - 1]), len(cols), triples))
    return out


def timed(matrices, repeat: int):
    best = float("inf")
    ranks = None
    for _ in range(repeat):
        started = time.perf_counter()
        ranks = [matrix_rank(r, c, triples) for r, c, triples in matrices]
        best = min(best, time.perf_counter() - started)
    return best, ranks


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not compiled_available():
        print("compiled backend not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'workload':<24} {'cells':>6} {'compiled':>10} {'pure':>10} "
          f"{'speedup':>8}  agree")
    ok = True
    for name, cx in workloads():
        matrices = extract(cx)

        os.environ.pop("DUALCX_PURE", None)
        t_fast, r_fast = timed(matrices, args.repeat)
        os.environ["DUALCX_PURE"] = "1"
        t_pure, r_pure = timed(matrices, args.repeat)
        os.environ.pop("DUALCX_PURE", None)

        agree = r_fast == r_pure
        ok = ok and agree
        print(f"{name:<24} {len(cx):>6} {t_fast:>9.3f}s {t_pure:>9.3f}s "
              f"{t_pure / t_fast:>7.1f}x  {'yes' if agree else 'NO'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
