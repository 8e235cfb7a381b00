"""Reading and writing the on-disk document formats.

Four document kinds share one JSON carrier: bare complexes,
configurations (a complex plus stratum bookkeeping), scripts, and
embedded-pair descriptions.  Emission is canonical: fixed key order,
id arrays sorted, two-space indentation, a trailing newline.  Whatever
the emitters produce re-parses and re-emits byte-identically, so
golden files diff cleanly.

Shape problems raise ParseError with the offending file named;
semantic problems (dangling facets, broken containment laws, ...)
propagate from the constructing module untouched.
"""

from __future__ import annotations

import json
import os
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from .complexes import DeltaComplex, validate_complex
from .errors import IoError, ParseError
from .ops import SimplicialMap, vertex_induced_map
from .snc import (
    BlowUpCenter,
    EmbeddedPair,
    PairStep,
    ResolutionScript,
    SncConfiguration,
    Stratum,
)

SCHEMA_VERSION = 1


# --- carrier ------------------------------------------------------------------


def canonical_text(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def parse_document(text: str, where: str = "<string>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(
            f"{where}:{err.lineno}:{err.colno}: {err.msg}"
        ) from err


def read_document(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise IoError(f"cannot read {path}: {err.strerror or err}") from err
    return parse_document(text, where=path)


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as err:
        raise IoError(f"cannot write {path}: {err.strerror or err}") from err


# --- shape checks -------------------------------------------------------------


def _expect_mapping(data: Any, what: str, where: str) -> Mapping:
    if not isinstance(data, Mapping):
        raise ParseError(f"{where}: {what} must be an object, got {type(data).__name__}")
    return data


def _expect_keys(data: Mapping, allowed: Sequence[str], what: str, where: str) -> None:
    unknown = sorted(set(data) - set(allowed) - {"schema_version"})
    if unknown:
        raise ParseError(f"{where}: {what} has unknown keys {unknown}")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(
            f"{where}: unsupported schema_version {version!r} "
            f"(this build reads version {SCHEMA_VERSION})"
        )


def _expect_str(value: Any, what: str, where: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{where}: {what} must be a string, got {value!r}")
    return value


def _expect_str_list(value: Any, what: str, where: str) -> list[str]:
    if not isinstance(value, Sequence) or isinstance(value, (str, bytes)):
        raise ParseError(f"{where}: {what} must be an array of strings")
    return [_expect_str(item, f"{what} entry", where) for item in value]


def _expect_int(value: Any, what: str, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{where}: {what} must be an integer, got {value!r}")
    return value


# --- complexes ------------------------------------------------------------------


def complex_to_data(cx: DeltaComplex) -> dict:
    simplices = [
        {"id": sid, "facets": list(cx.simplex(sid).facets)}
        for sid in sorted(cx.ids())
        if cx.simplex(sid).dim > 0
    ]
    return {
        "schema_version": SCHEMA_VERSION,
        "vertices": sorted(cx.vertices),
        "simplices": simplices,
    }


def complex_from_data(data: Any, where: str = "<data>") -> DeltaComplex:
    data = _expect_mapping(data, "a complex document", where)
    _expect_keys(data, ("vertices", "simplices"), "complex document", where)
    vertices = _expect_str_list(data.get("vertices", []), "vertices", where)
    entries = data.get("simplices", [])
    if not isinstance(entries, Sequence) or isinstance(entries, (str, bytes)):
        raise ParseError(f"{where}: simplices must be an array")
    simplices = []
    for entry in entries:
        entry = _expect_mapping(entry, "a simplex entry", where)
        unknown = sorted(set(entry) - {"id", "facets"})
        if unknown:
            raise ParseError(f"{where}: simplex entry has unknown keys {unknown}")
        simplices.append({
            "id": _expect_str(entry.get("id"), "simplex id", where),
            "facets": _expect_str_list(entry.get("facets", []), "facets", where),
        })
    return validate_complex({"vertices": vertices, "simplices": simplices})


def load_complex(path: str) -> DeltaComplex:
    return complex_from_data(read_document(path), where=path)


def dump_complex(cx: DeltaComplex, path: str) -> None:
    write_text(path, canonical_text(complex_to_data(cx)))


# --- configurations -------------------------------------------------------------


_CONFIG_KEYS = (
    "vertices", "simplices", "component_meta", "ambient_dim", "divisor_regime",
)


def configuration_to_data(cfg: SncConfiguration) -> dict:
    base = complex_to_data(cfg.dual)
    meta = {
        sid: {"name": cfg.component_meta[sid].name,
              "dim": cfg.component_meta[sid].dim}
        for sid in sorted(cfg.component_meta)
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "vertices": base["vertices"],
        "simplices": base["simplices"],
        "component_meta": meta,
        "ambient_dim": cfg.ambient_dim,
        "divisor_regime": cfg.divisor_regime,
    }


def configuration_from_data(data: Any, where: str = "<data>") -> SncConfiguration:
    data = _expect_mapping(data, "a configuration document", where)
    _expect_keys(data, _CONFIG_KEYS, "configuration document", where)
    dual = complex_from_data(
        {"vertices": data.get("vertices", []),
         "simplices": data.get("simplices", [])},
        where,
    )
    raw_meta = _expect_mapping(
        data.get("component_meta", {}), "component_meta", where
    )
    meta = {}
    for sid, entry in raw_meta.items():
        entry = _expect_mapping(entry, f"stratum entry for {sid!r}", where)
        unknown = sorted(set(entry) - {"name", "dim"})
        if unknown:
            raise ParseError(f"{where}: stratum entry has unknown keys {unknown}")
        meta[sid] = Stratum(
            name=_expect_str(entry.get("name"), f"stratum name for {sid!r}", where),
            dim=_expect_int(entry.get("dim"), f"stratum dim for {sid!r}", where),
        )
    if "ambient_dim" not in data:
        raise ParseError(f"{where}: configuration document needs ambient_dim")
    ambient = _expect_int(data["ambient_dim"], "ambient_dim", where)
    regime = data.get("divisor_regime", False)
    if not isinstance(regime, bool):
        raise ParseError(f"{where}: divisor_regime must be a boolean")
    return SncConfiguration(dual, meta, ambient_dim=ambient, divisor_regime=regime)


def load_configuration(path: str) -> SncConfiguration:
    return configuration_from_data(read_document(path), where=path)


def dump_configuration(cfg: SncConfiguration, path: str) -> None:
    write_text(path, canonical_text(configuration_to_data(cfg)))


def load_any_complex(path: str) -> DeltaComplex:
    """The dual complex of a file holding either document kind."""
    data = read_document(path)
    if isinstance(data, Mapping) and "component_meta" in data:
        return configuration_from_data(data, where=path).dual
    return complex_from_data(data, where=path)


# --- scripts ---------------------------------------------------------------------


@dataclass(frozen=True)
class FiberSpec:
    """Declared fiber points of the final configuration's strata.

    ``marked`` is the strictness marking; None marks every cell.  The
    replay asserts the fiber complexes over all points coincide.
    """

    points: tuple[str, ...]
    marked: tuple[str, ...] | None = None


def center_to_data(center: BlowUpCenter) -> dict:
    out: dict[str, Any] = {
        "kind": center.kind,
        "new_vertex": center.new_vertex,
    }
    if center.sigma_c is not None:
        out["sigma_c"] = center.sigma_c
    if center.delta is not None:
        out["delta"] = sorted(center.delta)
    if center.delta0 is not None:
        out["delta0"] = sorted(center.delta0)
    if center.center_dim is not None:
        out["center_dim"] = center.center_dim
    if center.note:
        out["note"] = center.note
    return out


_STEP_KEYS = ("kind", "new_vertex", "sigma_c", "delta", "delta0",
              "center_dim", "note")


def center_from_data(data: Any, where: str = "<data>") -> BlowUpCenter:
    data = _expect_mapping(data, "a script step", where)
    unknown = sorted(set(data) - set(_STEP_KEYS))
    if unknown:
        raise ParseError(f"{where}: script step has unknown keys {unknown}")
    kind = _expect_str(data.get("kind"), "step kind", where)
    new_vertex = _expect_str(data.get("new_vertex"), "new_vertex", where)
    sigma_c = data.get("sigma_c")
    if sigma_c is not None:
        sigma_c = _expect_str(sigma_c, "sigma_c", where)
    delta = data.get("delta")
    if delta is not None:
        delta = frozenset(_expect_str_list(delta, "delta", where))
    delta0 = data.get("delta0")
    if delta0 is not None:
        delta0 = frozenset(_expect_str_list(delta0, "delta0", where))
    center_dim = data.get("center_dim")
    if center_dim is not None:
        center_dim = _expect_int(center_dim, "center_dim", where)
    note = data.get("note", "")
    if note:
        note = _expect_str(note, "note", where)
    return BlowUpCenter(
        kind=kind, new_vertex=new_vertex, sigma_c=sigma_c,
        delta=delta, delta0=delta0, center_dim=center_dim, note=note,
    )


def script_to_data(script: ResolutionScript, strata: FiberSpec | None = None) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "steps": [center_to_data(c) for c in script.steps],
    }
    if strata is not None:
        block: dict[str, Any] = {"points": list(strata.points)}
        if strata.marked is not None:
            block["marked"] = sorted(strata.marked)
        out["strata"] = block
    return out


def script_from_data(
    data: Any, where: str = "<data>"
) -> tuple[ResolutionScript, FiberSpec | None]:
    data = _expect_mapping(data, "a script document", where)
    _expect_keys(data, ("steps", "strata"), "script document", where)
    entries = data.get("steps", [])
    if not isinstance(entries, Sequence) or isinstance(entries, (str, bytes)):
        raise ParseError(f"{where}: steps must be an array")
    script = ResolutionScript(
        steps=tuple(center_from_data(entry, where) for entry in entries)
    )
    strata = None
    if "strata" in data:
        block = _expect_mapping(data["strata"], "strata", where)
        unknown = sorted(set(block) - {"points", "marked"})
        if unknown:
            raise ParseError(f"{where}: strata block has unknown keys {unknown}")
        points = tuple(_expect_str_list(block.get("points", []), "points", where))
        if not points:
            raise ParseError(f"{where}: strata block declares no points")
        marked = block.get("marked")
        if marked is not None:
            marked = tuple(_expect_str_list(marked, "marked", where))
        strata = FiberSpec(points=points, marked=marked)
    return script, strata


def load_script(path: str) -> tuple[ResolutionScript, FiberSpec | None]:
    return script_from_data(read_document(path), where=path)


def dump_script(
    script: ResolutionScript, path: str, strata: FiberSpec | None = None
) -> None:
    write_text(path, canonical_text(script_to_data(script, strata)))


# --- embedded pairs ----------------------------------------------------------------


_PAIR_KEYS = ("inner", "outer", "vertex_map", "filtration")


def pair_from_data(data: Any, where: str = "<data>") -> EmbeddedPair:
    """Resolve a pair document; the two referenced configuration files
    are looked up relative to the document's directory."""
    data = _expect_mapping(data, "a pair document", where)
    _expect_keys(data, _PAIR_KEYS, "pair document", where)
    base = os.path.dirname(where) if where not in ("<data>", "<string>") else ""
    refs = {}
    for side in ("inner", "outer"):
        if side not in data:
            raise ParseError(f"{where}: pair document needs {side!r}")
        ref = _expect_str(data[side], side, where)
        refs[side] = os.path.join(base, ref) if base else ref
    raw_map = _expect_mapping(data.get("vertex_map", {}), "vertex_map", where)
    vertex_map = {
        _expect_str(k, "vertex_map key", where):
            _expect_str(v, "vertex_map value", where)
        for k, v in raw_map.items()
    }
    levels = data.get("filtration", [])
    if not isinstance(levels, Sequence) or isinstance(levels, (str, bytes)):
        raise ParseError(f"{where}: filtration must be an array of id arrays")
    filtration = tuple(
        frozenset(_expect_str_list(lv, "filtration level", where)) for lv in levels
    )
    inner = load_configuration(refs["inner"])
    outer = load_configuration(refs["outer"])
    inclusion = vertex_induced_map(inner.dual, outer.dual, vertex_map)
    return EmbeddedPair(inner, outer, inclusion, filtration)


def load_pair(path: str) -> EmbeddedPair:
    return pair_from_data(read_document(path), where=path)


def pair_to_data(
    inner_ref: str, outer_ref: str, inclusion: SimplicialMap,
    filtration: Sequence[frozenset[str]] = (),
) -> dict:
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "inner": inner_ref,
        "outer": outer_ref,
        "vertex_map": {v: inclusion.vertex_map[v]
                       for v in sorted(inclusion.vertex_map)},
    }
    if filtration:
        out["filtration"] = [sorted(lv) for lv in filtration]
    return out


def pair_script_from_data(
    data: Any, where: str = "<data>"
) -> tuple[PairStep, ...]:
    data = _expect_mapping(data, "a pair script document", where)
    _expect_keys(data, ("steps",), "pair script document", where)
    entries = data.get("steps", [])
    if not isinstance(entries, Sequence) or isinstance(entries, (str, bytes)):
        raise ParseError(f"{where}: steps must be an array")
    steps = []
    for entry in entries:
        entry = _expect_mapping(entry, "a pair step", where)
        unknown = sorted(set(entry) - {"inner", "outer"})
        if unknown:
            raise ParseError(f"{where}: pair step has unknown keys {unknown}")
        if "inner" not in entry or "outer" not in entry:
            raise ParseError(f"{where}: pair steps need inner and outer parts")
        steps.append(PairStep(
            inner=center_from_data(entry["inner"], where),
            outer=center_from_data(entry["outer"], where),
        ))
    return tuple(steps)


def load_pair_script(path: str) -> tuple[PairStep, ...]:
    return pair_script_from_data(read_document(path), where=path)


def pair_script_to_data(steps: Sequence[PairStep]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "steps": [
            {"inner": center_to_data(s.inner), "outer": center_to_data(s.outer)}
            for s in steps
        ],
    }
