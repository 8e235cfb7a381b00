"""Structural transformations of complexes.

Cone extensions and star subdivisions (the combinatorial shadow of
blowing up), simplicial and triangulated cartesian products, vertex
induced simplicial maps, and greedy collapse certificates witnessing
retractions.

Everything here is a pure function: inputs are never mutated and every
returned complex passes full validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Iterable, Mapping

from .complexes import (
    DeltaComplex,
    SimplexSubset,
    link,
    star,
    validate_complex,
)
from .errors import (
    AmbiguousTarget,
    DualComplexError,
    DuplicateId,
    FaceIncompatibility,
    NoTargetSimplex,
    NotContained,
    NotSubcomplex,
    NotStarClosed,
    UnknownSimplex,
    VertexClash,
)

__all__ = [
    "ConeExtensionInstruction",
    "SimplicialMap",
    "CollapseCertificate",
    "CollapseFailure",
    "ProductTriangulation",
    "cone_id",
    "cone_extension",
    "star_subdivision",
    "simplicial_product",
    "cartesian_product_triangulated",
    "vertex_induced_map",
    "compose_maps",
    "greedy_collapse",
    "validate_certificate",
]


def cone_id(apex: str, sid: str) -> str:
    """Deterministic id of the cone cell over ``sid`` with tip ``apex``."""
    return f"{apex}#{sid}"


# --- cone extension ---------------------------------------------------------


@dataclass(frozen=True)
class ConeExtensionInstruction:
    """Where to attach a cone: the region, its removed part, the apex.

    ``region`` must be a subcomplex of the host, ``removed`` a
    star-closed subset of the host contained in ``region``.  The cone is
    built over ``region`` minus ``removed``, which is then provably a
    subcomplex again (checked, as a sanity assertion, not an input
    error).
    """

    region: SimplexSubset
    removed: SimplexSubset
    apex: str

    def __post_init__(self):
        host = self.region.host
        if self.removed.host is not host and self.removed.host != host:
            raise UnknownSimplex("region and removed live in different complexes")
        if not self.region.is_subcomplex:
            raise NotSubcomplex("cone region must be a subcomplex")
        if not self.removed.members <= self.region.members:
            raise NotContained("removed part must lie inside the cone region")
        if not self.removed.is_star_closed:
            raise NotStarClosed("removed part must be star-closed in the host")
        if not isinstance(self.apex, str) or not self.apex:
            raise VertexClash(f"apex label must be a nonempty string: {self.apex!r}")
        if self.apex in host:
            raise VertexClash(f"apex {self.apex!r} already names a cell")
        base = SimplexSubset(host, self.region.members - self.removed.members)
        if not base.is_subcomplex:
            raise AssertionError("cone base is not a subcomplex; unreachable")

    @property
    def base(self) -> frozenset[str]:
        """Ids the cone is built over (region minus removed)."""
        return self.region.members - self.removed.members


def cone_extension(cx: DeltaComplex, instr: ConeExtensionInstruction) -> DeltaComplex:
    """Remove ``instr.removed``, cone the base to a fresh apex.

    The result keeps every surviving cell unchanged, adds the apex as a
    new vertex, and for each base cell tau adds a cell ``cone_id(apex,
    tau)`` of one higher dimension with facets tau and the cones over
    tau's facets.  Coning over the empty base adds just the isolated
    apex.
    """
    if instr.region.host is not cx and instr.region.host != cx:
        raise UnknownSimplex("instruction was built against a different complex")
    gone = instr.removed.members
    apex = instr.apex

    survivors = [sid for sid in cx.ids() if sid not in gone]
    new_ids = {cone_id(apex, tau) for tau in instr.base}
    for nid in new_ids:
        if nid in cx and nid not in gone:
            raise DuplicateId(f"cone id {nid!r} collides with an existing cell")

    vertices = [v for v in cx.vertices if v not in gone]
    vertices.append(apex)
    simplices = []
    for sid in survivors:
        s = cx.simplex(sid)
        if s.dim > 0:
            simplices.append({"id": sid, "facets": list(s.facets)})
    for tau in sorted(instr.base):
        s = cx.simplex(tau)
        if s.dim == 0:
            facets = [tau, apex]
        else:
            facets = [tau] + [cone_id(apex, f) for f in s.facets]
        simplices.append({"id": cone_id(apex, tau), "facets": facets})

    return validate_complex({"vertices": vertices, "simplices": simplices})


def star_subdivision(cx: DeltaComplex, tau: str, new_vertex: str) -> DeltaComplex:
    """Replace the star of ``tau`` by the cone over its link.

    Built directly: the surviving part is the complex minus the star of
    ``tau``; the new part is the fresh vertex joined to every cell of
    the link.  Ids of the new cells follow the same deterministic
    scheme as cone extension.
    """
    cx.simplex(tau)
    if not isinstance(new_vertex, str) or not new_vertex:
        raise VertexClash(f"vertex label must be a nonempty string: {new_vertex!r}")
    if new_vertex in cx:
        raise VertexClash(f"vertex {new_vertex!r} already names a cell")

    gone = star(cx, tau).members
    rim = link(cx, tau).members

    vertices = [v for v in cx.vertices if v not in gone]
    vertices.append(new_vertex)
    simplices = []
    for sid in cx.ids():
        if sid in gone:
            continue
        s = cx.simplex(sid)
        if s.dim > 0:
            simplices.append({"id": sid, "facets": list(s.facets)})
    for lam in sorted(rim):
        s = cx.simplex(lam)
        nid = cone_id(new_vertex, lam)
        if nid in cx and nid not in gone:
            raise DuplicateId(f"cone id {nid!r} collides with an existing cell")
        if s.dim == 0:
            facets = [lam, new_vertex]
        else:
            facets = [lam] + [cone_id(new_vertex, f) for f in s.facets]
        simplices.append({"id": nid, "facets": facets})

    return validate_complex({"vertices": vertices, "simplices": simplices})


# --- simplicial maps --------------------------------------------------------


class SimplicialMap:
    """A map of complexes: vertex assignment plus a full cell assignment.

    Validated on construction: each cell's image must carry exactly the
    image vertex set, and images of facets must be the corresponding
    faces of the image (commutation with the face maps).  Dimension may
    drop when the vertex assignment collapses vertices.
    """

    def __init__(
        self,
        source: DeltaComplex,
        target: DeltaComplex,
        vertex_map: Mapping[str, str],
        simplex_map: Mapping[str, str],
    ):
        self.source = source
        self.target = target
        vm: dict[str, str] = {}
        for v in source.vertices:
            if v not in vertex_map:
                raise NoTargetSimplex(f"vertex {v!r} has no assigned image")
            img = vertex_map[v]
            if img not in target or target.simplex(img).dim != 0:
                raise NoTargetSimplex(f"vertex image {img!r} is not a target vertex")
            vm[v] = img
        sm: dict[str, str] = {}
        for sid in source.ids():
            s = source.simplex(sid)
            if s.dim == 0:
                img = simplex_map.get(sid, vm[sid])
                if img != vm[sid]:
                    raise FaceIncompatibility(
                        f"cell map sends vertex {sid!r} to {img!r} but the "
                        f"vertex map says {vm[sid]!r}"
                    )
                sm[sid] = img
                continue
            if sid not in simplex_map:
                raise NoTargetSimplex(f"cell {sid!r} has no assigned image")
            img = simplex_map[sid]
            if img not in target:
                raise NoTargetSimplex(f"image cell {img!r} not in target")
            want = frozenset(vm[v] for v in s.vertices)
            have = frozenset(target.simplex(img).vertices)
            if want != have:
                raise FaceIncompatibility(
                    f"image of {sid!r} must span {sorted(want)}, "
                    f"but {img!r} spans {sorted(have)}"
                )
            sm[sid] = img
        # facet commutation, checked once all images are known
        for sid in source.ids():
            s = source.simplex(sid)
            for f in s.facets:
                img_f = sm[f]
                span = frozenset(target.simplex(img_f).vertices)
                face = target.face_spanned_by(sm[sid], span)
                if face != img_f:
                    raise FaceIncompatibility(
                        f"facet {f!r} of {sid!r} maps to {img_f!r}, which is "
                        f"not the corresponding face of {sm[sid]!r}"
                    )
        self.vertex_map: dict[str, str] = vm
        self.simplex_map: dict[str, str] = sm

    def __call__(self, sid: str) -> str:
        try:
            return self.simplex_map[sid]
        except KeyError:
            raise UnknownSimplex(f"{sid!r} not in the map's source") from None

    @property
    def is_injective(self) -> bool:
        return len(set(self.simplex_map.values())) == len(self.simplex_map)

    def image(self, subset: Iterable[str]) -> frozenset[str]:
        return frozenset(self(sid) for sid in subset)

    def preimage(self, subset: Iterable[str]) -> frozenset[str]:
        want = set(subset)
        return frozenset(s for s, t in self.simplex_map.items() if t in want)

    def __repr__(self) -> str:
        return f"SimplicialMap({len(self.simplex_map)} cells)"


def compose_maps(first: SimplicialMap, then: SimplicialMap) -> SimplicialMap:
    """The composite ``then`` after ``first`` as a validated map."""
    if first.target != then.source:
        raise FaceIncompatibility("maps do not compose: target/source mismatch")
    return SimplicialMap(
        first.source,
        then.target,
        {v: then.vertex_map[w] for v, w in first.vertex_map.items()},
        {s: then.simplex_map[t] for s, t in first.simplex_map.items()},
    )


def vertex_induced_map(
    source: DeltaComplex,
    target: DeltaComplex,
    vertex_map: Mapping[str, str],
    resolution: Mapping[str, str] | None = None,
) -> SimplicialMap:
    """Extend a vertex assignment to a full simplicial map.

    Each source cell must land on a target cell spanning exactly the
    image vertex set; when several target cells share that vertex set,
    ``resolution`` picks one per ambiguous source cell.
    """
    resolution = dict(resolution or {})
    by_span: dict[frozenset[str], list[str]] = {}
    for sid in target.ids():
        by_span.setdefault(frozenset(target.simplex(sid).vertices), []).append(sid)

    simplex_map: dict[str, str] = {}
    for sid in source.ids():
        s = source.simplex(sid)
        want: set[str] = set()
        for v in s.vertices:
            if v not in vertex_map:
                raise NoTargetSimplex(f"vertex {v!r} has no assigned image")
            want.add(vertex_map[v])
        span = frozenset(want)
        if sid in resolution:
            pick = resolution[sid]
            if pick not in target:
                raise NoTargetSimplex(f"resolution names unknown cell {pick!r}")
            if frozenset(target.simplex(pick).vertices) != span:
                raise NoTargetSimplex(
                    f"resolution for {sid!r} must span {sorted(span)}"
                )
            simplex_map[sid] = pick
            continue
        candidates = by_span.get(span, [])
        if not candidates:
            raise NoTargetSimplex(
                f"no target cell spans {sorted(span)} (needed for {sid!r})"
            )
        if len(candidates) > 1:
            raise AmbiguousTarget(
                f"{len(candidates)} target cells span {sorted(span)}: "
                f"{sorted(candidates)}; resolve {sid!r} explicitly"
            )
        simplex_map[sid] = candidates[0]

    return SimplicialMap(source, target, dict(vertex_map), simplex_map)


# --- products ---------------------------------------------------------------

_subset_cache: dict[tuple[int, int], tuple[tuple, tuple]] = {}

# Enumeration is exponential in the grid size; this bound keeps a single
# cell pair to about a million candidate subsets.
_GRID_LIMIT = 20


def _grid_subsets(n1: int, n2: int) -> tuple[tuple, tuple]:
    """(surjective subsets, chain subsets) of the n1 x n2 index grid.

    A subset must project onto both axes.  Chains are those totally
    ordered under the componentwise order; subsets are returned as
    lexicographically sorted tuples of (i, j) pairs.
    """
    key = (n1, n2)
    if key in _subset_cache:
        return _subset_cache[key]
    cells = n1 * n2
    if cells > _GRID_LIMIT:
        raise DualComplexError(
            f"product cell with {n1}x{n2} vertices exceeds the supported "
            f"grid size ({_GRID_LIMIT} cells)"
        )
    pairs = [(i, j) for i in range(n1) for j in range(n2)]
    surjective = []
    chains = []
    for mask in range(1, 1 << cells):
        rows = 0
        cols = 0
        chosen = []
        m = mask
        while m:
            low = (m & -m).bit_length() - 1
            i, j = pairs[low]
            rows |= 1 << i
            cols |= 1 << j
            chosen.append((i, j))
            m &= m - 1
        if rows != (1 << n1) - 1 or cols != (1 << n2) - 1:
            continue
        chosen.sort()
        tup = tuple(chosen)
        surjective.append(tup)
        if all(
            chosen[k][1] <= chosen[k + 1][1] for k in range(len(chosen) - 1)
        ):
            chains.append(tup)
    out = (tuple(surjective), tuple(chains))
    _subset_cache[key] = out
    return out


def _pair_label(p: str, q: str) -> str:
    return f"{p}|{q}"


def _product_cell_id(t1: str, t2: str, labels: tuple[tuple[str, str], ...]) -> str:
    inner = ";".join(_pair_label(p, q) for p, q in labels)
    return f"{t1}⊗{t2}[{inner}]"


def _build_product(
    c1: DeltaComplex, c2: DeltaComplex, chains_only: bool
) -> tuple[DeltaComplex, dict[str, tuple[str, str]]]:
    """Shared product builder; returns the complex plus id -> frame."""
    if len(c1) and len(c2):
        w1 = len(c1.f_vector())
        w2 = len(c2.f_vector())
        if w1 * w2 > _GRID_LIMIT:
            raise DualComplexError(
                f"product frame would need a {w1}x{w2} vertex grid; "
                f"the subset enumeration is capped at {_GRID_LIMIT} grid cells"
            )
    vertices = [
        _pair_label(p, q) for p in c1.vertices for q in c2.vertices
    ]
    frames: dict[str, tuple[str, str]] = {}
    simplices = []
    for sid1 in c1.ids():
        t1 = c1.simplex(sid1)
        n1 = t1.dim + 1
        for sid2 in c2.ids():
            t2 = c2.simplex(sid2)
            n2 = t2.dim + 1
            subsets = _grid_subsets(n1, n2)[1 if chains_only else 0]
            for idx in subsets:
                labels = tuple(
                    (t1.vertices[i], t2.vertices[j]) for i, j in idx
                )
                if len(labels) == 1:
                    frames[_pair_label(*labels[0])] = (sid1, sid2)
                    continue
                cid = _product_cell_id(sid1, sid2, labels)
                facets = []
                for k in range(len(labels)):
                    rest = labels[:k] + labels[k + 1 :]
                    if len(rest) == 1:
                        facets.append(_pair_label(*rest[0]))
                        continue
                    f1 = c1.face_spanned_by(sid1, {p for p, _ in rest})
                    f2 = c2.face_spanned_by(sid2, {q for _, q in rest})
                    facets.append(_product_cell_id(f1, f2, rest))
                frames[cid] = (sid1, sid2)
                simplices.append({"id": cid, "facets": facets})
    cx = validate_complex({"vertices": vertices, "simplices": simplices})
    return cx, frames


def simplicial_product(c1: DeltaComplex, c2: DeltaComplex) -> DeltaComplex:
    """The product complex, cells keyed by (cell, cell, spanning subset).

    For each pair of cells, one product cell per vertex subset of the
    grid projecting onto both factors; the pair of full simplices
    contributes a top cell with (d1+1)(d2+1) vertices and all of its
    faces.
    """
    return _build_product(c1, c2, chains_only=False)[0]


@dataclass(frozen=True)
class ProductTriangulation:
    """Staircase triangulation of the cartesian product, with its maps.

    ``triangulated`` is the simplicial complex of monotone chains;
    ``inclusion`` embeds it into the full product ``tensor`` cell by
    cell; the projections are the coordinate maps, provided both from
    the triangulated complex and from the tensor.
    """

    triangulated: DeltaComplex
    tensor: DeltaComplex
    inclusion: SimplicialMap
    proj1: SimplicialMap
    proj2: SimplicialMap
    tensor_proj1: SimplicialMap
    tensor_proj2: SimplicialMap


def _projection_maps(
    cx: DeltaComplex,
    frames: dict[str, tuple[str, str]],
    c1: DeltaComplex,
    c2: DeltaComplex,
) -> tuple[SimplicialMap, SimplicialMap]:
    vm1 = {}
    vm2 = {}
    for v in cx.vertices:
        f1, f2 = frames[v]
        vm1[v] = f1
        vm2[v] = f2
    sm1 = {sid: frames[sid][0] for sid in cx.ids()}
    sm2 = {sid: frames[sid][1] for sid in cx.ids()}
    return (
        SimplicialMap(cx, c1, vm1, sm1),
        SimplicialMap(cx, c2, vm2, sm2),
    )


def cartesian_product_triangulated(
    c1: DeltaComplex, c2: DeltaComplex
) -> ProductTriangulation:
    """Staircase triangulation: product cells sliced along monotone chains.

    Simplices are the chains of the componentwise order on vertex
    pairs, using the sorted vertex order of each factor.  The result is
    a subcomplex of the full product on the same ids, so the inclusion
    is the identity on ids, and the coordinate projections are genuine
    simplicial maps.
    """
    tensor, tframes = _build_product(c1, c2, chains_only=False)
    tri, sframes = _build_product(c1, c2, chains_only=True)
    identity = {sid: sid for sid in tri.ids()}
    inclusion = SimplicialMap(
        tri, tensor, {v: v for v in tri.vertices}, identity
    )
    tensor_proj1, tensor_proj2 = _projection_maps(tensor, tframes, c1, c2)
    proj1 = compose_maps(inclusion, tensor_proj1)
    proj2 = compose_maps(inclusion, tensor_proj2)
    direct1, direct2 = _projection_maps(tri, sframes, c1, c2)
    if proj1.simplex_map != direct1.simplex_map or proj2.simplex_map != direct2.simplex_map:
        raise AssertionError("projection maps disagree with frames; unreachable")
    return ProductTriangulation(
        triangulated=tri,
        tensor=tensor,
        inclusion=inclusion,
        proj1=proj1,
        proj2=proj2,
        tensor_proj1=tensor_proj1,
        tensor_proj2=tensor_proj2,
    )


# --- collapses ---------------------------------------------------------------


@dataclass(frozen=True)
class CollapseCertificate:
    """Ordered elementary collapses from the source down to the target.

    Each step removes a free face together with its unique live coface
    (one dimension higher).  Replayable against a fresh copy of the
    source complex via :func:`validate_certificate`.
    """

    steps: tuple[tuple[str, str], ...]
    target: frozenset[str]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class CollapseFailure:
    """Greedy search got stuck; not a proof that no collapse exists."""

    remaining: frozenset[str]
    target: frozenset[str]

    def __bool__(self) -> bool:
        return False


def greedy_collapse(
    cx: DeltaComplex, target: SimplexSubset | Iterable[str]
) -> CollapseCertificate | CollapseFailure:
    """Collapse free faces greedily until only the target remains.

    Free faces are taken lowest dimension first, ties broken by id, so
    runs are deterministic.  Returns a certificate on success and a
    failure value (with the surviving cells) when stuck; failure proves
    nothing, the search is greedy.
    """
    tgt = target if isinstance(target, SimplexSubset) else SimplexSubset(cx, target)
    if not tgt.is_subcomplex:
        raise NotSubcomplex("collapse target must be a subcomplex")

    live = set(cx.ids())
    count: dict[str, int] = {sid: 0 for sid in live}
    for sid in live:
        for f in cx.faces_of(sid):
            if f != sid:
                count[f] += 1

    heap = [
        (cx.simplex(sid).dim, sid)
        for sid in live
        if count[sid] == 1 and sid not in tgt.members
    ]
    heapify(heap)
    steps: list[tuple[str, str]] = []

    while heap:
        d, sid = heappop(heap)
        if sid not in live or sid in tgt.members or count[sid] != 1:
            continue
        partner = None
        for c in cx.cofaces_of(sid):
            if c in live:
                partner = c
                break
        if partner is None or cx.simplex(partner).dim != d + 1:
            raise AssertionError("free-face bookkeeping broken; unreachable")
        if partner in tgt.members:
            continue
        steps.append((sid, partner))
        live.discard(sid)
        live.discard(partner)
        for removed in (partner, sid):
            for f in cx.faces_of(removed):
                if f == removed or f not in live:
                    continue
                count[f] -= 1
                if count[f] == 1 and f not in tgt.members:
                    heappush(heap, (cx.simplex(f).dim, f))

    if live == tgt.members:
        return CollapseCertificate(steps=tuple(steps), target=tgt.members)
    return CollapseFailure(remaining=frozenset(live), target=tgt.members)


def validate_certificate(cx: DeltaComplex, cert: CollapseCertificate) -> bool:
    """Replay a certificate step by step against a fresh live set."""
    live = set(cx.ids())
    for free, coface in cert.steps:
        if free not in live or coface not in live:
            return False
        if free in cert.target or coface in cert.target:
            return False
        if free not in cx or coface not in cx:
            return False
        if cx.simplex(coface).dim != cx.simplex(free).dim + 1:
            return False
        live_cofaces = {c for c in cx.cofaces_of(free) if c in live}
        if live_cofaces != {coface}:
            return False
        live.discard(free)
        live.discard(coface)
    return live == cert.target
