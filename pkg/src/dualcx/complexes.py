"""Finite generalized simplicial complexes with explicit facet lists.

Cells carry identity: two distinct simplices may share the same vertex
set, so incidence is tracked through facet ids rather than vertex
subsets.  Vertices double as 0-simplices and share the id namespace
with every other cell.

A validated complex is immutable and every operation in this module is
a pure function of its inputs.  The central law is that the face
lattice of each single simplex embeds: within one simplex, faces are
in bijection with vertex subsets, which is what makes
:func:`face_spanned_by` well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingFacet,
    DimensionMismatch,
    DuplicateId,
    IncompatibleVertexTuples,
    RepeatedFacet,
    UnknownSimplex,
    ValidationError,
)

__all__ = [
    "Simplex",
    "DeltaComplex",
    "SimplexSubset",
    "validate_complex",
    "star",
    "closed_star",
    "link",
    "closure",
    "interior",
    "is_star_closed",
]


@dataclass(frozen=True)
class Simplex:
    """One cell.  ``facets[i]`` is the facet omitting ``vertices[i]``.

    ``vertices`` is the sorted tuple of vertex labels; its length is
    ``dim + 1``.  A 0-simplex has no facets and its id equals its only
    vertex label.
    """

    id: str
    dim: int
    facets: tuple[str, ...]
    vertices: tuple[str, ...]


class DeltaComplex:
    """A validated complex.  Build one through :func:`validate_complex`."""

    def __init__(self, simplices: dict[str, Simplex], cofacets: dict[str, tuple[str, ...]]):
        self._simplices = simplices
        self._cofacets = cofacets
        self._vertices = tuple(sorted(s.id for s in simplices.values() if s.dim == 0))
        self._ids = tuple(sorted(simplices))
        self._dim = max((s.dim for s in simplices.values()), default=-1)
        self._by_dim: dict[int, tuple[str, ...]] = {}
        self._faces_cache: dict[str, frozenset[str]] = {}
        self._cofaces_cache: dict[str, frozenset[str]] | None = None

    # -- basic access ------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def dim(self) -> int:
        """Top dimension present, or -1 for the empty complex."""
        return self._dim

    def ids(self) -> tuple[str, ...]:
        return self._ids

    def __contains__(self, sid: object) -> bool:
        return sid in self._simplices

    def __iter__(self) -> Iterator[str]:
        return iter(self._ids)

    def __len__(self) -> int:
        return len(self._simplices)

    def simplex(self, sid: str) -> Simplex:
        try:
            return self._simplices[sid]
        except KeyError:
            raise UnknownSimplex(f"no simplex with id {sid!r}") from None

    def by_dim(self, k: int) -> tuple[str, ...]:
        """Ids of all k-simplices in sorted order."""
        if k not in self._by_dim:
            self._by_dim[k] = tuple(
                sid for sid in self._ids if self._simplices[sid].dim == k
            )
        return self._by_dim[k]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim(k)) for k in range(self._dim + 1))

    def cofacets(self, sid: str) -> tuple[str, ...]:
        """Ids of the cells having ``sid`` as a facet."""
        self.simplex(sid)
        return self._cofacets.get(sid, ())

    # -- derived incidence --------------------------------------------

    def faces_of(self, sid: str) -> frozenset[str]:
        """All faces of ``sid`` including itself."""
        cached = self._faces_cache.get(sid)
        if cached is not None:
            return cached
        s = self.simplex(sid)
        acc = {sid}
        for f in s.facets:
            acc.update(self.faces_of(f))
        out = frozenset(acc)
        self._faces_cache[sid] = out
        return out

    def cofaces_of(self, sid: str) -> frozenset[str]:
        """All cells having ``sid`` as a face, excluding ``sid`` itself."""
        if self._cofaces_cache is None:
            table: dict[str, set[str]] = {i: set() for i in self._ids}
            for sid2 in self._ids:
                for f in self.faces_of(sid2):
                    if f != sid2:
                        table[f].add(sid2)
            self._cofaces_cache = {k: frozenset(v) for k, v in table.items()}
        self.simplex(sid)
        return self._cofaces_cache[sid]

    def face_spanned_by(self, sid: str, vertex_subset: Iterable[str]) -> str:
        """The unique face of ``sid`` whose vertex set is ``vertex_subset``.

        Within a single simplex, faces correspond bijectively to vertex
        subsets, so descending through facets is unambiguous.
        """
        want = frozenset(vertex_subset)
        s = self.simplex(sid)
        if not want or not want.issubset(s.vertices):
            raise UnknownSimplex(
                f"{sorted(want)} is not a nonempty vertex subset of {sid!r}"
            )
        while frozenset(s.vertices) != want:
            drop = next(i for i, v in enumerate(s.vertices) if v not in want)
            s = self.simplex(s.facets[drop])
        return s.id

    # -- equality ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self) -> str:
        return f"DeltaComplex(f_vector={self.f_vector()})"


class SimplexSubset:
    """A subset of the cells of a fixed complex.

    Classification happens eagerly: ``is_subcomplex`` (closed under
    faces) and ``is_star_closed`` (closed under cofaces) are plain
    attributes.  A subset is star-closed exactly when its complement is
    a subcomplex.
    """

    def __init__(self, host: DeltaComplex, members: Iterable[str]):
        mset = frozenset(members)
        for sid in mset:
            if sid not in host:
                raise UnknownSimplex(f"subset member {sid!r} not in complex")
        self.host = host
        self.members = mset
        self.is_subcomplex = all(
            f in mset for sid in mset for f in host.simplex(sid).facets
        )
        self.is_star_closed = all(
            c in mset for sid in mset for c in host.cofacets(sid)
        )

    def __contains__(self, sid: object) -> bool:
        return sid in self.members

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplexSubset):
            return NotImplemented
        return self.host == other.host and self.members == other.members

    def __repr__(self) -> str:
        return f"SimplexSubset({sorted(self.members)!r})"


def _coerce(host: DeltaComplex, subset: SimplexSubset | Iterable[str]) -> SimplexSubset:
    if isinstance(subset, SimplexSubset):
        if subset.host is host or subset.host == host:
            return subset
        raise UnknownSimplex("subset belongs to a different complex")
    return SimplexSubset(host, subset)


# -- validation ------------------------------------------------------------


def validate_complex(raw: Mapping) -> DeltaComplex:
    """Validate a raw description and return the immutable complex.

    ``raw`` carries ``vertices`` (labels) and ``simplices`` (objects
    with ``id`` and ``facets``).  0-simplices may be omitted; an
    explicit entry with an empty facet list declares a vertex.  Facet
    lists may arrive in any order; they are stored canonically, facet
    ``i`` omitting sorted vertex ``i``.
    """
    vertices = list(raw.get("vertices", ()))
    entries = list(raw.get("simplices", ()))

    for v in vertices:
        if not isinstance(v, str) or not v:
            raise ValidationError(f"vertex label must be a nonempty string: {v!r}")

    vertex_set: set[str] = set()
    for v in vertices:
        if v in vertex_set:
            raise DuplicateId(f"vertex {v!r} declared twice")
        vertex_set.add(v)

    # First pass: collect declared dimensions so facet references can be
    # checked before topological assembly.
    declared: dict[str, int] = {v: 0 for v in vertex_set}
    positive: list[tuple[str, list[str]]] = []
    explicit_zero: set[str] = set()
    for entry in entries:
        if not isinstance(entry, Mapping) or "id" not in entry or "facets" not in entry:
            raise ValidationError(f"simplex entry must carry id and facets: {entry!r}")
        sid = entry["id"]
        facets = list(entry["facets"])
        if not isinstance(sid, str) or not sid:
            raise ValidationError(f"simplex id must be a nonempty string: {sid!r}")
        for f in facets:
            if not isinstance(f, str):
                raise ValidationError(f"facet id must be a string: {f!r}")
        if not facets:
            # An explicit 0-simplex declares (or re-states) a vertex.
            if sid in explicit_zero or any(sid == p for p, _ in positive):
                raise DuplicateId(f"id {sid!r} declared twice")
            explicit_zero.add(sid)
            declared.setdefault(sid, 0)
            vertex_set.add(sid)
            continue
        if sid in declared:
            raise DuplicateId(f"id {sid!r} declared twice")
        declared[sid] = len(facets) - 1
        positive.append((sid, facets))

    simplices: dict[str, Simplex] = {
        v: Simplex(id=v, dim=0, facets=(), vertices=(v,)) for v in vertex_set
    }

    # Assemble bottom-up so every facet is finished before its cofacets.
    positive.sort(key=lambda item: (len(item[1]), item[0]))
    for sid, facets in positive:
        dim = len(facets) - 1
        seen: set[str] = set()
        for f in facets:
            if f in seen:
                raise RepeatedFacet(f"simplex {sid!r} repeats facet {f!r}")
            seen.add(f)
            if f not in declared:
                raise DanglingFacet(f"simplex {sid!r} references unknown facet {f!r}")
            if declared[f] != dim - 1:
                raise DimensionMismatch(
                    f"simplex {sid!r} has dimension {dim} but facet {f!r} "
                    f"has dimension {declared[f]}, expected {dim - 1}"
                )

        facet_cells = [simplices[f] for f in facets]
        vset: set[str] = set()
        for fc in facet_cells:
            vset.update(fc.vertices)
        verts = tuple(sorted(vset))
        if len(verts) != dim + 1:
            raise IncompatibleVertexTuples(
                f"simplex {sid!r}: facet vertex tuples span {len(verts)} "
                f"vertices, expected {dim + 1}"
            )

        # Canonical order: position i holds the facet omitting verts[i].
        by_deletion: dict[frozenset[str], str] = {}
        for fc in facet_cells:
            key = frozenset(fc.vertices)
            if key in by_deletion:
                raise RepeatedFacet(
                    f"simplex {sid!r}: facets {by_deletion[key]!r} and "
                    f"{fc.id!r} share the vertex tuple {fc.vertices}"
                )
            by_deletion[key] = fc.id
        canon: list[str] = []
        full = frozenset(verts)
        for v in verts:
            key = full - {v}
            if key not in by_deletion:
                raise IncompatibleVertexTuples(
                    f"simplex {sid!r}: no facet omits vertex {v!r}"
                )
            canon.append(by_deletion[key])

        # Codimension-2 coherence: the two ways down to a common face
        # must land on the same cell, otherwise the face lattice of this
        # simplex does not embed.
        if dim >= 2:
            for j in range(dim + 1):
                for i in range(j):
                    left = simplices[canon[i]].facets[j - 1]
                    right = simplices[canon[j]].facets[i]
                    if left != right:
                        raise RepeatedFacet(
                            f"simplex {sid!r}: faces omitting vertices "
                            f"{verts[i]!r},{verts[j]!r} disagree "
                            f"({left!r} vs {right!r})"
                        )

        simplices[sid] = Simplex(id=sid, dim=dim, facets=tuple(canon), vertices=verts)

    cof: dict[str, list[str]] = {}
    for s in simplices.values():
        for f in set(s.facets):
            cof.setdefault(f, []).append(s.id)
    cofacets = {k: tuple(sorted(v)) for k, v in cof.items()}
    return DeltaComplex(simplices, cofacets)


# -- stars, links, closures -------------------------------------------------


def star(cx: DeltaComplex, tau: str) -> SimplexSubset:
    """All cells having ``tau`` as a face, ``tau`` included."""
    cx.simplex(tau)
    out: set[str] = set()
    frontier = [tau]
    while frontier:
        sid = frontier.pop()
        if sid in out:
            continue
        out.add(sid)
        frontier.extend(cx.cofacets(sid))
    return SimplexSubset(cx, out)


def closure(cx: DeltaComplex, subset: SimplexSubset | Iterable[str]) -> SimplexSubset:
    """Smallest subcomplex containing the subset."""
    sub = _coerce(cx, subset)
    out: set[str] = set()
    for sid in sub.members:
        out.update(cx.faces_of(sid))
    return SimplexSubset(cx, out)


def closed_star(cx: DeltaComplex, tau: str) -> SimplexSubset:
    return closure(cx, star(cx, tau))


def link(cx: DeltaComplex, tau: str) -> SimplexSubset:
    """Closed star minus star: the faces of cofaces that avoid ``tau``."""
    st = star(cx, tau)
    cl = closure(cx, st)
    return SimplexSubset(cx, cl.members - st.members)


def is_star_closed(cx: DeltaComplex, subset: SimplexSubset | Iterable[str]) -> bool:
    return _coerce(cx, subset).is_star_closed


def interior(cx: DeltaComplex, subset: SimplexSubset | Iterable[str]) -> SimplexSubset:
    """Largest star-closed subset of the complex contained in ``subset``.

    A cell is interior exactly when no coface of it escapes the subset,
    i.e. it avoids the closure of the complement.
    """
    sub = _coerce(cx, subset)
    complement = set(cx.ids()) - sub.members
    shadow = closure(cx, complement).members
    return SimplexSubset(cx, sub.members - shadow)
