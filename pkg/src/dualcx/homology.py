"""Exact rational homology of validated complexes.

Boundary matrices have entries in {-1, 0, +1} with signs read off the
sorted vertex tuples: the facet omitting sort position i contributes
(-1)^i.  Betti numbers are computed over the rationals through exact
integer rank, so every reported dimension is exact.

For dual complexes of projective normal crossing configurations these
Betti numbers are the dimensions of the weight-zero pieces of the
cohomology of the configuration; the ``w0_dims`` alias carries that
reading.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import DeltaComplex
from .errors import EmptyComplex
from .rank import matrix_rank

__all__ = [
    "BettiVector",
    "ChainComplexQ",
    "HomologyComparison",
    "boundary_matrices",
    "betti_numbers",
    "euler_characteristic",
    "homology_equal",
    "W0_CAVEAT",
]

W0_CAVEAT = (
    "w0_dims reads b_i as dim W0 H^i, valid when the complex is the dual "
    "complex of a projective normal crossing configuration"
)

# boundaries[k] is the matrix of the k-th boundary map as a tuple of
# columns, one per k-simplex, each column a tuple of (row, sign) pairs
# over the (k-1)-simplex basis.  boundaries[0] is the empty matrix.
Column = tuple[tuple[int, int], ...]
Matrix = tuple[Column, ...]


@dataclass(frozen=True)
class ChainComplexQ:
    bases: tuple[tuple[str, ...], ...]
    boundaries: tuple[Matrix, ...]

    def n_cells(self, k: int) -> int:
        if 0 <= k < len(self.bases):
            return len(self.bases[k])
        return 0

    def entries(self, k: int) -> list[tuple[int, int, int]]:
        """(row, col, value) triples of the k-th boundary matrix."""
        out = []
        for j, col in enumerate(self.boundaries[k]):
            for r, s in col:
                out.append((r, j, s))
        return out


@dataclass(frozen=True)
class BettiVector:
    """Rational Betti numbers indexed by dimension."""

    b: tuple[int, ...]
    reduced: bool = False

    @property
    def w0_dims(self) -> tuple[int, ...]:
        return self.b

    def padded(self, length: int) -> tuple[int, ...]:
        return self.b + (0,) * max(0, length - len(self.b))

    def __iter__(self):
        return iter(self.b)


@dataclass(frozen=True)
class HomologyComparison:
    equal: bool
    betti_a: BettiVector
    betti_b: BettiVector

    def __bool__(self) -> bool:
        return self.equal

    def report(self) -> dict:
        return {
            "equal": self.equal,
            "betti_a": list(self.betti_a.b),
            "betti_b": list(self.betti_b.b),
        }


def boundary_matrices(cx: DeltaComplex) -> ChainComplexQ:
    bases = tuple(cx.by_dim(k) for k in range(cx.dim + 1))
    index = [{sid: i for i, sid in enumerate(basis)} for basis in bases]
    boundaries: list[Matrix] = []
    for k in range(cx.dim + 1):
        if k == 0:
            boundaries.append(())
            continue
        cols = []
        for sid in bases[k]:
            s = cx.simplex(sid)
            cols.append(
                tuple(
                    (index[k - 1][f], -1 if i % 2 else 1)
                    for i, f in enumerate(s.facets)
                )
            )
        boundaries.append(tuple(cols))
    cc = ChainComplexQ(bases=bases, boundaries=tuple(boundaries))
    _check_boundary_squares_to_zero(cc)
    return cc


def _check_boundary_squares_to_zero(cc: ChainComplexQ) -> None:
    for k in range(2, len(cc.bases)):
        lower = cc.boundaries[k - 1]
        for j, col in enumerate(cc.boundaries[k]):
            acc: dict[int, int] = {}
            for r, s in col:
                for r2, s2 in lower[r]:
                    acc[r2] = acc.get(r2, 0) + s * s2
            if any(acc.values()):
                raise AssertionError(
                    f"boundary of boundary nonzero at dimension {k}, "
                    f"column {cc.bases[k][j]!r}"
                )


def euler_characteristic(cx: DeltaComplex) -> int:
    return sum(
        (len(cx.by_dim(k)) if k % 2 == 0 else -len(cx.by_dim(k)))
        for k in range(cx.dim + 1)
    )


def betti_numbers(cx: DeltaComplex, reduced: bool = False) -> BettiVector:
    """b_k = dim ker boundary_k - rank boundary_{k+1}, exactly."""
    if reduced and len(cx) == 0:
        raise EmptyComplex("reduced Betti numbers need a nonempty complex")
    cc = boundary_matrices(cx)
    dim = cx.dim
    ranks = [0] * (dim + 2)
    for k in range(1, dim + 1):
        ranks[k] = matrix_rank(cc.n_cells(k - 1), cc.n_cells(k), cc.entries(k))
    b = [cc.n_cells(k) - ranks[k] - ranks[k + 1] for k in range(dim + 1)]

    alternating = sum(v if k % 2 == 0 else -v for k, v in enumerate(b))
    if alternating != euler_characteristic(cx):
        raise AssertionError("alternating Betti sum disagrees with Euler count")

    if reduced:
        b[0] -= 1
    return BettiVector(b=tuple(b), reduced=reduced)


def homology_equal(a: DeltaComplex, b: DeltaComplex) -> HomologyComparison:
    """Padded equality of (non-reduced) Betti vectors, with both listed."""
    ba = betti_numbers(a)
    bb = betti_numbers(b)
    n = max(len(ba.b), len(bb.b))
    return HomologyComparison(
        equal=ba.padded(n) == bb.padded(n), betti_a=ba, betti_b=bb
    )
