"""Builtin example objects for the command line and the test suite.

Each builtin is either a bare complex or a configuration; the two
configurations ship with a companion blow-up script so a fresh
checkout can replay a resolution end to end.
"""

from __future__ import annotations

from .complexes import DeltaComplex, validate_complex
from .errors import UnknownSimplex
from .snc import (
    INTERSECTION,
    BlowUpCenter,
    ResolutionScript,
    SncConfiguration,
    Stratum,
)

_FILLED_TRIANGLE = {
    "vertices": ["a", "b", "c"],
    "simplices": [
        {"id": "ab", "facets": ["a", "b"]},
        {"id": "bc", "facets": ["b", "c"]},
        {"id": "ca", "facets": ["c", "a"]},
        {"id": "abc", "facets": ["ab", "bc", "ca"]},
    ],
}

_CIRCLE = {
    "vertices": ["a", "b", "c"],
    "simplices": [
        {"id": "ab", "facets": ["a", "b"]},
        {"id": "bc", "facets": ["b", "c"]},
        {"id": "ca", "facets": ["c", "a"]},
    ],
}

# two edges on the same pair of vertices
_DOUBLED_EDGE = {
    "vertices": ["u", "w"],
    "simplices": [
        {"id": "e1", "facets": ["u", "w"]},
        {"id": "e2", "facets": ["u", "w"]},
    ],
}

BUILTIN_COMPLEXES = {
    "filled-triangle": _FILLED_TRIANGLE,
    "circle": _CIRCLE,
    "doubled-edge": _DOUBLED_EDGE,
}


def _three_axes() -> SncConfiguration:
    # the three coordinate axes in 3-space; every pairwise and the
    # triple intersection is the origin
    meta = {v: Stratum(f"axis {v}", 1) for v in "abc"}
    for sid in ("ab", "bc", "ca", "abc"):
        meta[sid] = Stratum("origin", 0)
    return SncConfiguration(
        validate_complex(_FILLED_TRIANGLE), meta, ambient_dim=3
    )


def _triangle_of_lines() -> SncConfiguration:
    # three lines in the plane meeting pairwise in three nodes
    meta = {v: Stratum(f"line {v}", 1) for v in "abc"}
    for sid in ("ab", "bc", "ca"):
        meta[sid] = Stratum(f"node {sid}", 0)
    return SncConfiguration(
        validate_complex(_CIRCLE), meta, ambient_dim=2, divisor_regime=True
    )


BUILTIN_CONFIGURATIONS = {
    "three-axes": _three_axes,
    "triangle-of-lines": _triangle_of_lines,
}

COMPANION_SCRIPTS = {
    "three-axes": ResolutionScript(steps=(
        BlowUpCenter(
            kind=INTERSECTION,
            new_vertex="v",
            sigma_c="abc",
            delta0=frozenset({"ab", "bc", "ca", "abc"}),
            center_dim=0,
            note="blow up the origin",
        ),
    )),
    "triangle-of-lines": ResolutionScript(steps=(
        BlowUpCenter(
            kind=INTERSECTION,
            new_vertex="v",
            sigma_c="ab",
            note="blow up the node where lines a and b meet",
        ),
    )),
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(BUILTIN_COMPLEXES) + sorted(BUILTIN_CONFIGURATIONS))


def get_complex(name: str) -> DeltaComplex:
    """The builtin's dual complex, for either builtin kind."""
    if name in BUILTIN_COMPLEXES:
        return validate_complex(BUILTIN_COMPLEXES[name])
    if name in BUILTIN_CONFIGURATIONS:
        return BUILTIN_CONFIGURATIONS[name]().dual
    raise UnknownSimplex(
        f"no builtin named {name!r}; available: {', '.join(builtin_names())}"
    )


def get_configuration(name: str) -> SncConfiguration:
    if name not in BUILTIN_CONFIGURATIONS:
        raise UnknownSimplex(
            f"no builtin configuration named {name!r}; available: "
            f"{', '.join(sorted(BUILTIN_CONFIGURATIONS))}"
        )
    return BUILTIN_CONFIGURATIONS[name]()


def get_script(name: str) -> ResolutionScript | None:
    return COMPANION_SCRIPTS.get(name)
