"""JSON files for tile systems and patches.

Numbers are written per stage: integers as JSON numbers, other rationals
as ``"p/q"`` strings, and reals as the decimal literal they were read from.
Re-serializing a loaded rational or integral file reproduces it exactly.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .exactmath import RealScalar, as_rat
from .tilemodel import STAGES, EdgeType, Patch, Placement, Prototile, TileSystem


def _num_out(value, stage):
    if stage == "real":
        return RealScalar(value).text
    r = as_rat(value)
    return int(r) if r.denominator == 1 else str(r)


def _rat_out(value: Fraction):
    return int(value) if value.denominator == 1 else str(value)


def _num_in(value, stage, where):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ParseError(f"{where}: expected a number, got {type(value).__name__}")
    try:
        if stage == "real":
            if isinstance(value, str) and "/" in value:
                raise ValueError("fraction string at real stage")
            return RealScalar(value if isinstance(value, str) else repr(value))
        if isinstance(value, float):
            raise ValueError(f"float {value!r} at {stage} stage")
        r = as_rat(value)
        if stage == "integral" and (r.denominator != 1 or isinstance(value, str) and "/" in value):
            raise ValueError(f"non-integer {value!r} at integral stage")
        return int(r) if stage == "integral" else r
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _rat_in(value, where) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected an integer or \"p/q\" string, got {value!r}")
    try:
        return as_rat(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _field(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def system_to_json(s: TileSystem) -> dict:
    return {
        "stage": s.stage,
        "edge_types": [
            {"id": e.id, "vector": [_num_out(c, s.stage) for c in e.vector]} for e in s.edge_types
        ],
        "prototiles": [
            {"id": p.id, "boundary": [{"edge": e, "sign": sg} for e, sg in p.boundary]}
            for p in s.prototiles
        ],
    }


def system_from_json(doc) -> TileSystem:
    """Build a system from a parsed SystemFile document.

    Structural problems (missing fields, unknown edge references, signs
    other than +1/-1, numbers that do not fit the stage) raise
    :class:`ParseError`; geometric validity is left to ``validate_system``.
    """
    stage = _field(doc, "stage", str, "system")
    if stage not in STAGES:
        raise ParseError(f"system.stage: unknown stage {stage!r}")
    edges = []
    for i, e in enumerate(_field(doc, "edge_types", list, "system")):
        where = f"edge_types[{i}]"
        eid = _field(e, "id", str, where)
        vec = _field(e, "vector", list, where)
        if len(vec) != 2:
            raise ParseError(f"{where}.vector: expected 2 components, got {len(vec)}")
        edges.append(EdgeType(eid, tuple(_num_in(c, stage, f"{where}.vector[{k}]") for k, c in enumerate(vec))))
    known = {e.id for e in edges}
    if len(known) != len(edges):
        raise ParseError("edge_types: duplicate edge id")
    tiles = []
    for i, p in enumerate(_field(doc, "prototiles", list, "system")):
        where = f"prototiles[{i}]"
        tid = _field(p, "id", str, where)
        word = []
        for k, step in enumerate(_field(p, "boundary", list, where)):
            w = f"{where}.boundary[{k}]"
            eid = _field(step, "edge", str, w)
            sign = _field(step, "sign", int, w)
            if eid not in known:
                raise ParseError(f"{w}.edge: unknown edge type {eid!r}")
            if sign not in (1, -1):
                raise ParseError(f"{w}.sign: must be 1 or -1, got {sign}")
            word.append((eid, sign))
        tiles.append(Prototile(tid, tuple(word)))
    return TileSystem(stage, tuple(edges), tuple(tiles))


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def save_system(s: TileSystem, path) -> None:
    Path(path).write_text(dumps(system_to_json(s)))


def load_system(path) -> TileSystem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return system_from_json(_loads(text, str(path)))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def patch_to_json(p: Patch, system: TileSystem | str) -> dict:
    """PatchFile document; ``system`` is inlined, or kept as a path reference if a string."""
    return {
        "system": system if isinstance(system, str) else system_to_json(system),
        "placed": [
            {"tile": pl.tile, "translation": [_rat_out(c) for c in pl.translation]} for pl in p.placed
        ],
        "seed": p.seed,
        "origin_offset": [_rat_out(c) for c in p.origin_offset],
    }


def patch_from_json(doc, base: Path | None = None) -> tuple[Patch, TileSystem]:
    ref = doc.get("system") if isinstance(doc, dict) else None
    if isinstance(ref, str):
        s = load_system((base or Path(".")) / ref)
    else:
        s = system_from_json(_field(doc, "system", dict, "patch"))
    placed = []
    for i, pl in enumerate(_field(doc, "placed", list, "patch")):
        where = f"placed[{i}]"
        tid = _field(pl, "tile", str, where)
        try:
            s.prototile(tid)
        except KeyError:
            raise ParseError(f"{where}.tile: unknown prototile {tid!r}") from None
        t = _field(pl, "translation", list, where)
        if len(t) != 2:
            raise ParseError(f"{where}.translation: expected 2 components")
        placed.append(Placement(tid, tuple(_rat_in(c, f"{where}.translation[{k}]") for k, c in enumerate(t))))
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or (placed and not 0 <= seed < len(placed)):
        raise ParseError(f"patch.seed: invalid index {seed!r}")
    off = doc.get("origin_offset", [0, 0])
    if not isinstance(off, list) or len(off) != 2:
        raise ParseError("patch.origin_offset: expected 2 components")
    offset = tuple(_rat_in(c, f"origin_offset[{k}]") for k, c in enumerate(off))
    return Patch(tuple(placed), seed, offset), s


def save_patch(p: Patch, system: TileSystem | str, path) -> None:
    Path(path).write_text(dumps(patch_to_json(p, system)))


def load_patch(path) -> tuple[Patch, TileSystem]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return patch_from_json(_loads(text, str(path)), path.parent)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None
