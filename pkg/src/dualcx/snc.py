"""Blow-up calculus on dual complexes of normal crossing configurations.

A configuration couples a complex with per-simplex stratum metadata
(name and dimension) and an ambient dimension.  Blow-up centers come in
three kinds; each kind pins down, or constrains, the cone extension
that models the blow-up on the dual complex.  On top of single steps
the module replays whole scripts, tracks a configuration embedded in a
larger one while a common script runs on both, and relabels fibers of
strict descriptors.

The engine never computes incidence from geometry: which strata lie in
or meet a center is caller-supplied data, validated against the
containment laws each kind must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complexes import (
    DeltaComplex,
    SimplexSubset,
    closed_star,
    star,
    validate_complex,
)
from .errors import (
    DimensionInconsistent,
    DualComplexError,
    InvalidIncidence,
    PairBroken,
    StepFailed,
    UnknownSimplex,
    UnmarkedComponent,
)
from .homology import BettiVector, betti_numbers
from .ops import (
    CollapseCertificate,
    ConeExtensionInstruction,
    SimplicialMap,
    cone_extension,
    cone_id,
    greedy_collapse,
)

INTERSECTION = "intersection"
INSIDE = "inside"
TRANSVERSE = "transverse"

_KINDS = (INTERSECTION, INSIDE, TRANSVERSE)


@dataclass(frozen=True)
class Stratum:
    """Metadata of one stratum: a display name and its dimension."""

    name: str
    dim: int


@dataclass(frozen=True)
class SncConfiguration:
    """A dual complex with stratum bookkeeping.

    Dimensions must shrink along coface relations (deeper intersections
    are smaller), and every stratum must fit in the ambient space: in
    the divisor regime a cell of dimension k describes a stratum of
    codimension k+1, so dim plus k stays at most ambient_dim - 1; for
    variety configurations the bound relaxes by one.
    """

    dual: DeltaComplex
    component_meta: Mapping[str, Stratum]
    ambient_dim: int
    divisor_regime: bool = False

    def __post_init__(self):
        object.__setattr__(self, "component_meta", dict(self.component_meta))
        if not isinstance(self.ambient_dim, int) or self.ambient_dim < 0:
            raise DimensionInconsistent(
                f"ambient dimension must be a nonnegative integer: "
                f"{self.ambient_dim!r}"
            )
        for sid in self.component_meta:
            if sid not in self.dual:
                raise UnknownSimplex(f"metadata for unknown simplex {sid!r}")
        slack = 1 if self.divisor_regime else 0
        for sid in self.dual.ids():
            meta = self.component_meta.get(sid)
            if meta is None:
                raise DimensionInconsistent(f"no stratum recorded for {sid!r}")
            if not isinstance(meta.dim, int) or meta.dim < 0:
                raise DimensionInconsistent(
                    f"stratum dimension of {sid!r} must be a nonnegative "
                    f"integer: {meta.dim!r}"
                )
            s = self.dual.simplex(sid)
            if meta.dim + s.dim > self.ambient_dim - slack:
                raise DimensionInconsistent(
                    f"stratum {sid!r} has dim {meta.dim} on a {s.dim}-cell, "
                    f"exceeding ambient dimension {self.ambient_dim}"
                )
            for f in s.facets:
                if self.component_meta.get(f) is None:
                    continue  # reported on its own turn
                if meta.dim > self.component_meta[f].dim:
                    raise DimensionInconsistent(
                        f"stratum dimensions must not grow from {f!r} "
                        f"({self.component_meta[f].dim}) to {sid!r} ({meta.dim})"
                    )

    def stratum(self, sid: str) -> Stratum:
        try:
            return self.component_meta[sid]
        except KeyError:
            raise UnknownSimplex(f"no stratum recorded for {sid!r}") from None


@dataclass(frozen=True)
class BlowUpCenter:
    """One blow-up center: a kind, a fresh vertex label, incidence data.

    ``intersection`` and ``inside`` centers sit at a named simplex
    sigma_c; ``transverse`` centers meet the configuration without lying
    in any stratum and carry explicit incidence instead.  ``delta`` and
    ``delta0`` optionally override or supply the incidence sets; the
    containment laws of the kind are enforced when the center is
    resolved against a configuration.
    """

    kind: str
    new_vertex: str
    sigma_c: str | None = None
    delta: frozenset[str] | None = None
    delta0: frozenset[str] | None = None
    center_dim: int | None = None
    note: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidIncidence(
                f"unknown center kind {self.kind!r}; expected one of {_KINDS}"
            )
        if not isinstance(self.new_vertex, str) or not self.new_vertex:
            raise InvalidIncidence(
                f"new vertex label must be a nonempty string: {self.new_vertex!r}"
            )
        if self.kind == TRANSVERSE:
            if self.sigma_c is not None:
                raise InvalidIncidence("transverse centers have no sigma_c")
        elif self.sigma_c is None:
            raise InvalidIncidence(f"{self.kind} centers need a sigma_c")
        if self.delta is not None:
            object.__setattr__(self, "delta", frozenset(self.delta))
        if self.delta0 is not None:
            object.__setattr__(self, "delta0", frozenset(self.delta0))
        if self.center_dim is not None:
            if not isinstance(self.center_dim, int) or self.center_dim < 0:
                raise DimensionInconsistent(
                    f"center dimension must be a nonnegative integer: "
                    f"{self.center_dim!r}"
                )


@dataclass(frozen=True)
class ResolutionScript:
    """An ordered list of centers, applied left to right."""

    steps: tuple[BlowUpCenter, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class DerivedCenter:
    """A center resolved against a configuration.

    ``instruction`` is the cone extension to apply; ``eliminated`` are
    the ids the extension removes, ``created`` the ids it adds (the new
    vertex plus one cone cell per base cell).
    """

    instruction: ConeExtensionInstruction
    eliminated: frozenset[str]
    created: frozenset[str]


def derive_cone_extension(
    cfg: SncConfiguration, center: BlowUpCenter
) -> DerivedCenter:
    """Resolve a center to its cone extension and the resulting ledger.

    Enforces the containment laws of the center's kind: intersection
    centers cone over exactly the closed star of sigma_c and remove a
    star-closed set sandwiched between the star and the closed star
    (exactly the star in the divisor regime); inside centers remove
    nothing and cone over a region whose maximal cells contain sigma_c;
    transverse centers (divisor regime only) remove nothing and cone
    over explicitly supplied incidence.
    """
    cx = cfg.dual

    if center.kind == TRANSVERSE:
        if not cfg.divisor_regime:
            raise InvalidIncidence(
                "transverse centers are only meaningful in the divisor regime"
            )
        if center.delta0:
            raise InvalidIncidence("transverse centers eliminate nothing")
        if center.delta is None:
            raise InvalidIncidence(
                "transverse centers need explicit incidence (delta)"
            )
        if center.center_dim is not None and center.center_dim >= cfg.ambient_dim:
            raise DimensionInconsistent(
                f"center dimension {center.center_dim} does not fit in "
                f"ambient dimension {cfg.ambient_dim}"
            )
        region = SimplexSubset(cx, center.delta)
        removed = SimplexSubset(cx, ())
    else:
        sigma = center.sigma_c
        cx.simplex(sigma)
        cs = closed_star(cx, sigma)
        st = star(cx, sigma)
        if center.center_dim is not None:
            bound = cfg.stratum(sigma).dim
            if center.center_dim > bound:
                raise DimensionInconsistent(
                    f"center dimension {center.center_dim} exceeds the "
                    f"stratum dimension {bound} of {sigma!r}"
                )
        if center.kind == INTERSECTION:
            if center.delta is not None and frozenset(center.delta) != cs.members:
                raise InvalidIncidence(
                    f"intersection centers cone over exactly the closed "
                    f"star of {sigma!r}"
                )
            if cfg.divisor_regime:
                if center.delta0 is not None and frozenset(center.delta0) != st.members:
                    raise InvalidIncidence(
                        f"in the divisor regime the eliminated set is "
                        f"exactly the star of {sigma!r}"
                    )
                removed = st
            elif center.delta0 is None:
                removed = st
            else:
                d0 = frozenset(center.delta0)
                if not (st.members <= d0 <= cs.members):
                    raise InvalidIncidence(
                        f"eliminated set must sit between the star and the "
                        f"closed star of {sigma!r}"
                    )
                removed = SimplexSubset(cx, d0)
            region = cs
        else:  # inside
            if center.delta0:
                raise InvalidIncidence("inside centers eliminate nothing")
            region = cs if center.delta is None else SimplexSubset(cx, center.delta)
            if not region.members <= cs.members:
                raise InvalidIncidence(
                    f"inside centers cone over a part of the closed star "
                    f"of {sigma!r}"
                )
            for sid in region.members:
                if cx.cofaces_of(sid) & region.members:
                    continue  # not maximal in the region
                if sid not in st.members:
                    raise InvalidIncidence(
                        f"maximal cell {sid!r} of the region does not "
                        f"contain {sigma!r}"
                    )
            removed = SimplexSubset(cx, ())

    instruction = ConeExtensionInstruction(region, removed, center.new_vertex)
    created = frozenset(
        {center.new_vertex}
        | {cone_id(center.new_vertex, tau) for tau in instruction.base}
    )
    return DerivedCenter(
        instruction=instruction,
        eliminated=removed.members,
        created=created,
    )


def _exceptional_meta(
    cfg: SncConfiguration, center: BlowUpCenter, derived: DerivedCenter
) -> dict[str, Stratum]:
    """Stratum metadata for the complex after one blow-up."""
    v = center.new_vertex
    meta: dict[str, Stratum] = {}
    for sid, stratum in cfg.component_meta.items():
        if sid not in derived.eliminated:
            meta[sid] = stratum
    meta[v] = Stratum(name=f"E({v})", dim=cfg.ambient_dim - 1)
    for tau in derived.instruction.base:
        base_dim = cfg.component_meta[tau].dim
        if center.center_dim is None:
            dim = max(base_dim - 1, 0)
        else:
            dim = max(center.center_dim, 0)
        meta[cone_id(v, tau)] = Stratum(
            name=f"E({v})∩{cfg.component_meta[tau].name}", dim=dim
        )
    return meta


def blow_up(cfg: SncConfiguration, center: BlowUpCenter) -> SncConfiguration:
    """Apply one blow-up and return the updated configuration.

    The dual complex is replaced by the derived cone extension.  The
    new vertex records the exceptional divisor with dimension
    ambient_dim - 1; a created cell over tau records a stratum of
    dimension center_dim when supplied, one less than tau's stratum
    otherwise, floored at zero.  Metadata of eliminated cells is
    dropped.  The updated configuration re-validates, so a center whose
    declared dimension breaks monotonicity is refused.
    """
    return _apply(cfg, center, derive_cone_extension(cfg, center))


def _apply(
    cfg: SncConfiguration, center: BlowUpCenter, derived: DerivedCenter
) -> SncConfiguration:
    new_dual = cone_extension(cfg.dual, derived.instruction)
    return SncConfiguration(
        dual=new_dual,
        component_meta=_exceptional_meta(cfg, center, derived),
        ambient_dim=cfg.ambient_dim,
        divisor_regime=cfg.divisor_regime,
    )


# --- script replay ------------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    """Ledger of one applied step."""

    index: int
    center: BlowUpCenter
    eliminated: tuple[str, ...]
    created: tuple[str, ...]
    # for inside centers: did the new complex collapse back onto the
    # old one?  A witness when true, no verdict when false.
    collapse_witness: bool | None = None


@dataclass(frozen=True)
class ScriptRun:
    """History of a replay: configurations, Betti vectors, ledgers.

    ``history[0]`` is the input configuration; entry k+1 is the result
    of step k.  The final Betti vector doubles as the weight-zero
    dimension profile of the combinatorial type.
    """

    history: tuple[SncConfiguration, ...]
    bettis: tuple[BettiVector, ...]
    steps: tuple[StepRecord, ...]

    @property
    def final(self) -> SncConfiguration:
        return self.history[-1]

    @property
    def w0_dims(self) -> tuple[int, ...]:
        return self.bettis[-1].w0_dims


def run_script(cfg: SncConfiguration, script: ResolutionScript) -> ScriptRun:
    """Replay a script, keeping the full history and per-step ledgers.

    Deterministic: identical inputs give identical histories.  On a bad
    step raises StepFailed carrying the run up to that point.
    """
    history = [cfg]
    bettis = [betti_numbers(cfg.dual)]
    records: list[StepRecord] = []
    for index, center in enumerate(script.steps):
        cur = history[-1]
        try:
            derived = derive_cone_extension(cur, center)
            nxt = _apply(cur, center, derived)
        except DualComplexError as err:
            partial = ScriptRun(tuple(history), tuple(bettis), tuple(records))
            raise StepFailed(index, err, partial) from err
        witness = None
        if center.kind == INSIDE:
            result = greedy_collapse(nxt.dual, set(cur.dual.ids()))
            witness = isinstance(result, CollapseCertificate)
        history.append(nxt)
        bettis.append(betti_numbers(nxt.dual))
        records.append(
            StepRecord(
                index=index,
                center=center,
                eliminated=tuple(sorted(derived.eliminated)),
                created=tuple(sorted(derived.created)),
                collapse_witness=witness,
            )
        )
    return ScriptRun(tuple(history), tuple(bettis), tuple(records))


# --- embedded pairs -----------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedPair:
    """A configuration sitting inside a larger one.

    ``inclusion`` must embed the inner dual complex into the outer one
    injectively.  ``filtration`` is an ascending chain of subsets of
    the outer complex; the inner chain is always its preimage.
    """

    inner: SncConfiguration
    outer: SncConfiguration
    inclusion: SimplicialMap
    filtration: tuple[SimplexSubset, ...] = ()

    def __post_init__(self):
        if self.inclusion.source != self.inner.dual:
            raise PairBroken(None, "inclusion", "source is not the inner complex")
        if self.inclusion.target != self.outer.dual:
            raise PairBroken(None, "inclusion", "target is not the outer complex")
        if not self.inclusion.is_injective:
            raise PairBroken(None, "inclusion", "inclusion is not injective")
        levels = tuple(
            lv if isinstance(lv, SimplexSubset) else SimplexSubset(self.outer.dual, lv)
            for lv in self.filtration
        )
        object.__setattr__(self, "filtration", levels)
        for lv in levels:
            if lv.host != self.outer.dual:
                raise PairBroken(
                    None, "filtration", "levels must be subsets of the outer complex"
                )
        for lo, hi in zip(levels, levels[1:]):
            if not lo.members <= hi.members:
                raise PairBroken(None, "filtration", "levels must be nested")

    def inner_filtration(self) -> tuple[frozenset[str], ...]:
        return tuple(self.inclusion.preimage(lv.members) for lv in self.filtration)


@dataclass(frozen=True)
class PairStep:
    """One step of a pair replay: the same center seen from both sides.

    The two descriptions share the new vertex label (the extension maps
    it to itself) but carry their own incidence data.
    """

    inner: BlowUpCenter
    outer: BlowUpCenter

    def __post_init__(self):
        if self.inner.new_vertex != self.outer.new_vertex:
            raise InvalidIncidence(
                "both sides of a pair step must share the new vertex label"
            )


@dataclass(frozen=True)
class PairVerdict:
    """What one pair step checked and found.

    ``region_match``: the inner cone region maps onto the outer region
    restricted to the image.  ``removed_covered``: whatever the outer
    step eliminates from the image was eliminated inside too.
    ``inclusion_extended`` is always True in a recorded verdict; a step
    that cannot extend the inclusion aborts the replay instead.
    ``betti_match`` compares both sides' Betti vectors, the necessary
    condition for the inner complex to be a deformation retract.
    ``filtration_preserved`` is None when no filtration is tracked.
    """

    index: int
    region_match: bool
    removed_covered: bool
    inclusion_extended: bool
    betti_inner: BettiVector
    betti_outer: BettiVector
    betti_match: bool
    filtration_preserved: bool | None = None

    @property
    def ok(self) -> bool:
        checks = [self.region_match, self.removed_covered,
                  self.inclusion_extended, self.betti_match]
        if self.filtration_preserved is not None:
            checks.append(self.filtration_preserved)
        return all(checks)


@dataclass(frozen=True)
class PairRun:
    """History and verdicts of a pair replay."""

    history: tuple[EmbeddedPair, ...]
    verdicts: tuple[PairVerdict, ...]


def _transform_level(
    members: frozenset[str], center: BlowUpCenter, derived: DerivedCenter
) -> frozenset[str]:
    # total transform: surviving cells stay, cones over member cells
    # join, the exceptional vertex joins iff the center lay inside the
    # level (never for transverse centers)
    out = set(members - derived.eliminated)
    v = center.new_vertex
    for tau in derived.instruction.base:
        if tau in members:
            out.add(cone_id(v, tau))
    if center.kind != TRANSVERSE and center.sigma_c in members:
        out.add(v)
    return frozenset(out)


def _extend_inclusion(
    pair: EmbeddedPair,
    step: PairStep,
    inner_derived: DerivedCenter,
    outer_derived: DerivedCenter,
    new_inner: SncConfiguration,
    new_outer: SncConfiguration,
    index: int,
    partial: PairRun,
) -> SimplicialMap:
    """The old inclusion on survivors, the new vertex to itself, cones
    to cones.  Raises PairBroken if any image is missing or the map
    degenerates."""

    def broken(message: str) -> PairBroken:
        return PairBroken(index, "inclusion-extension", message, partial)

    v = step.inner.new_vertex
    old = pair.inclusion
    vertex_map: dict[str, str] = {}
    simplex_map: dict[str, str] = {}
    for s, t in old.simplex_map.items():
        if s in inner_derived.eliminated:
            continue
        if t in outer_derived.eliminated:
            raise broken(
                f"image {t!r} of surviving cell {s!r} was eliminated outside"
            )
        simplex_map[s] = t
        if s in old.vertex_map:
            vertex_map[s] = t
    vertex_map[v] = v
    simplex_map[v] = v
    for tau in inner_derived.instruction.base:
        image = old.simplex_map[tau]
        if image not in outer_derived.instruction.base:
            raise broken(
                f"cone base cell {tau!r} maps to {image!r}, which the outer "
                f"step does not cone over"
            )
        simplex_map[cone_id(v, tau)] = cone_id(v, image)
    try:
        extended = SimplicialMap(
            new_inner.dual, new_outer.dual, vertex_map, simplex_map
        )
    except DualComplexError as err:
        raise broken(str(err)) from err
    if not extended.is_injective:
        raise broken("extension not injective")
    return extended


def track_embedded_pair(
    pair: EmbeddedPair, steps: Sequence[PairStep]
) -> PairRun:
    """Replay a script on both sides of an embedded pair.

    Per step this records whether the incidence data of both sides
    agrees through the inclusion, whether the inclusion extends over
    the new cells (it must; failure aborts with PairBroken), whether
    the Betti vectors still agree, and whether the filtration levels
    are still mirrored.  Diagnostic mismatches are flagged in the
    verdicts, not raised.
    """
    history = [pair]
    verdicts: list[PairVerdict] = []
    for index, step in enumerate(steps):
        cur = history[-1]
        partial = PairRun(tuple(history), tuple(verdicts))
        try:
            inner_derived = derive_cone_extension(cur.inner, step.inner)
            outer_derived = derive_cone_extension(cur.outer, step.outer)
            new_inner = _apply(cur.inner, step.inner, inner_derived)
            new_outer = _apply(cur.outer, step.outer, outer_derived)
        except DualComplexError as err:
            raise PairBroken(index, "step", str(err), partial) from err

        image_all = frozenset(cur.inclusion.simplex_map.values())
        region_match = (
            cur.inclusion.image(inner_derived.instruction.region.members)
            == outer_derived.instruction.region.members & image_all
        )
        removed_covered = (
            cur.inclusion.preimage(outer_derived.eliminated)
            <= inner_derived.eliminated
        )

        extended = _extend_inclusion(
            cur, step, inner_derived, outer_derived,
            new_inner, new_outer, index, partial,
        )

        b_in = betti_numbers(new_inner.dual)
        b_out = betti_numbers(new_outer.dual)
        width = max(len(b_in.b), len(b_out.b))
        betti_match = b_in.padded(width) == b_out.padded(width)

        filtration_preserved = None
        new_levels: tuple[SimplexSubset, ...] = ()
        if cur.filtration:
            inner_levels = [
                _transform_level(members, step.inner, inner_derived)
                for members in cur.inner_filtration()
            ]
            outer_levels = [
                _transform_level(lv.members, step.outer, outer_derived)
                for lv in cur.filtration
            ]
            nested = all(
                lo <= hi for lo, hi in zip(outer_levels, outer_levels[1:])
            )
            mirrored = all(
                inner_levels[i] == extended.preimage(outer_levels[i])
                for i in range(len(outer_levels))
            )
            filtration_preserved = nested and mirrored
            new_levels = tuple(
                SimplexSubset(new_outer.dual, members) for members in outer_levels
            )

        nxt = EmbeddedPair(
            inner=new_inner,
            outer=new_outer,
            inclusion=extended,
            filtration=new_levels,
        )
        history.append(nxt)
        verdicts.append(
            PairVerdict(
                index=index,
                region_match=region_match,
                removed_covered=removed_covered,
                inclusion_extended=True,
                betti_inner=b_in,
                betti_outer=b_out,
                betti_match=betti_match,
                filtration_preserved=filtration_preserved,
            )
        )
    return PairRun(tuple(history), tuple(verdicts))


# --- strict descriptors -------------------------------------------------------


@dataclass(frozen=True)
class StrictSncDescriptor:
    """A complex with a per-cell strictness marking.

    A marked cell asserts its stratum is smooth and proper with
    irreducible fibers; operations needing strictness require every
    cell marked.
    """

    dual: DeltaComplex
    marking: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        marks = frozenset(self.marking)
        object.__setattr__(self, "marking", marks)
        for sid in marks:
            if sid not in self.dual:
                raise UnknownSimplex(f"marking names unknown simplex {sid!r}")

    @property
    def fully_marked(self) -> bool:
        return self.marking >= frozenset(self.dual.ids())


def fiber_complex(
    d: StrictSncDescriptor, point: str = "x"
) -> tuple[DeltaComplex, dict[str, str]]:
    """The dual complex over one fiber point, with the identifying bijection.

    For a fully strict descriptor the fiber complex is a relabeled copy
    of the total one (ids get an ``@point`` suffix); the returned map
    sends each original id to its copy.  Unmarked cells make the
    construction unsound and are refused.
    """
    missing = sorted(set(d.dual.ids()) - d.marking)
    if missing:
        raise UnmarkedComponent(
            f"{len(missing)} component(s) not marked strict: {missing[:5]}"
        )
    rename = {sid: f"{sid}@{point}" for sid in d.dual.ids()}
    simplices = []
    for sid in d.dual.ids():
        s = d.dual.simplex(sid)
        if s.dim > 0:
            simplices.append(
                {"id": rename[sid], "facets": [rename[f] for f in s.facets]}
            )
    copy = validate_complex(
        {
            "vertices": [rename[v] for v in d.dual.vertices],
            "simplices": simplices,
        }
    )
    if copy.f_vector() != d.dual.f_vector():
        raise AssertionError("relabeling changed the complex; unreachable")
    return copy, rename
