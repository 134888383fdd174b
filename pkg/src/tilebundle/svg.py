"""Deterministic SVG scenes for systems, patches, zig-zag charts and square configurations.

Coordinates are written with six fractional digits and the y axis is
flipped so that the picture has the usual mathematical orientation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .squaresys import SquareConfiguration
from .tilemodel import Patch, TileSystem
from .transport import ZigzagPatch
from .zigzag import ZigzagSystem

PALETTE = ("#e8a33d", "#4f86c6", "#7bb36b", "#c65a5a", "#9a7bc6", "#5ab8b0")

CHART_COLUMNS = 10


def _fmt(x) -> str:
    return f"{float(x):.6f}"


@dataclass(frozen=True)
class Shape:
    tag: str  # "polygon", "polyline" or "rect"
    cls: str
    points: tuple


@dataclass
class SvgScene:
    shapes: list[Shape] = field(default_factory=list)
    grid: bool = False

    def count(self, tag: str | None = None) -> int:
        return sum(1 for s in self.shapes if tag is None or s.tag == tag)

    def bounds(self):
        pts = [p for s in self.shapes for p in s.points]
        if not pts:
            return 0, 0, 1, 1
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    @property
    def view_box(self) -> tuple[float, float, float, float]:
        x0, y0, x1, y1 = self.bounds()
        pad = 1
        return float(x0) - pad, -float(y1) - pad, float(x1 - x0) + 2 * pad, float(y1 - y0) + 2 * pad

    def _grid_lines(self) -> list[str]:
        x0, y0, x1, y1 = self.bounds()
        lines = []
        for x in range(int(x0 // 1), int(-(-x1 // 1)) + 1):
            lines.append(f'<line x1="{_fmt(x)}" y1="{_fmt(-y0)}" x2="{_fmt(x)}" y2="{_fmt(-y1)}"/>')
        for y in range(int(y0 // 1), int(-(-y1 // 1)) + 1):
            lines.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(-y)}" x2="{_fmt(x1)}" y2="{_fmt(-y)}"/>')
        return lines

    def _classes(self) -> list[str]:
        names = sorted({s.cls for s in self.shapes})
        return [f".{n} {{ fill: {PALETTE[i % len(PALETTE)]}; }}" for i, n in enumerate(names)]

    def to_string(self) -> str:
        vb = " ".join(_fmt(v) for v in self.view_box)
        out = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vb}">',
            "<style>",
            "polygon, rect { stroke: #222; stroke-width: 0.05; fill-opacity: 0.8; }",
            "polyline { fill: none; stroke: #222; stroke-width: 0.08; }",
            *self._classes(),
            "</style>",
        ]
        for s in self.shapes:
            if s.tag == "rect":
                x, y = s.points[0]
                out.append(
                    f'<rect class="{s.cls}" x="{_fmt(x)}" y="{_fmt(-(y + 1))}" width="1.000000" height="1.000000"/>'
                )
            else:
                pts = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in s.points)
                out.append(f'<{s.tag} class="{s.cls}" points="{pts}"/>')
        if self.grid:
            out.append('<g class="grid" stroke="#999" stroke-width="0.02">')
            out.extend(self._grid_lines())
            out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_string())


def _family(tid: str) -> str:
    letters = "".join(ch for ch in tid if ch.isalpha())
    return f"t-{letters or 'x'}"


def _system_sheet(s: TileSystem) -> list[Shape]:
    # prototiles laid out row by row, spaced by the largest bounding box
    polys = [s.vertices(p.id) for p in s.prototiles]
    w = max((max(x for x, _ in v) - min(x for x, _ in v) for v in polys), default=0) + 1
    h = max((max(y for _, y in v) - min(y for _, y in v) for v in polys), default=0) + 1
    shapes = []
    for k, (p, vs) in enumerate(zip(s.prototiles, polys)):
        mx, my = min(x for x, _ in vs), min(y for _, y in vs)
        ox, oy = (k % CHART_COLUMNS) * w - mx, -(k // CHART_COLUMNS) * h - my
        shapes.append(Shape("polygon", _family(p.id), tuple((x + ox, y + oy) for x, y in vs)))
    return shapes


def _zigzag_chart(z: ZigzagSystem) -> list[Shape]:
    shapes = []
    paths = list(z.paths.items())
    pts = [path.vertices() for _, path in paths]
    w = max((max(x for x, _ in v) - min(x for x, _ in v) for v in pts), default=0) + 2
    h = max((max(y for _, y in v) - min(y for _, y in v) for v in pts), default=0) + 2
    for k, ((eid, _), vs) in enumerate(zip(paths, pts)):
        mx, my = min(x for x, _ in vs), min(y for _, y in vs)
        ox, oy = (k % CHART_COLUMNS) * w - mx, -(k // CHART_COLUMNS) * h - my
        shapes.append(Shape("polyline", _family(eid), tuple((x + ox, y + oy) for x, y in vs)))
    return shapes


def render_svg(obj, system: TileSystem | None = None, grid: bool = False) -> SvgScene:
    """Scene for a prototile sheet, a patch, a zig-zag edge chart or a square window.

    * ``TileSystem``: every prototile once, in a sheet.
    * ``Patch`` (``system`` required): one polygon per placed tile.
    * ``ZigzagSystem``: one polyline per edge type.
    * ``ZigzagPatch``: one polygon per placed tile, drawn along its zig-zag loop.
    * ``SquareConfiguration``: one unit square per assigned cell.
    """
    scene = SvgScene(grid=grid)
    if isinstance(obj, TileSystem):
        scene.shapes = _system_sheet(obj)
    elif isinstance(obj, Patch):
        if system is None:
            raise ValueError("rendering a patch needs its tile system")
        scene.shapes = [Shape("polygon", _family(pl.tile), tuple(obj.polygon(i, system)))
                        for i, pl in enumerate(obj.placed)]
    elif isinstance(obj, ZigzagSystem):
        scene.shapes = _zigzag_chart(obj)
    elif isinstance(obj, ZigzagPatch):
        for pl in obj.placed:
            tx, ty = pl.translation
            loop = obj.zigzag.tile(pl.tile).loop[:-1]
            scene.shapes.append(Shape("polygon", _family(pl.tile), tuple((x + tx, y + ty) for x, y in loop)))
    elif isinstance(obj, SquareConfiguration):
        scene.shapes = [
            Shape("rect", _family(sym.tile), ((x, y),))
            for (x, y), sym in sorted(obj.assignment.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    return scene
