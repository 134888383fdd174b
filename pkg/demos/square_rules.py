"""Matching rules of the marked-square system for a pair of triangles.

The real triangles go through the whole pipeline (the log shows each
stage), then a window of marked squares is checked against the local
rules before and after a single symbol is changed.
"""
import logging

from tilebundle.squaresys import SquareConfiguration, amalgamate, explode, matching_rules, rule_violations
from tilebundle.errors import AmalgamationError
from tilebundle.tilemodel import grow_patch, single_tile_patch, system_from_words
from tilebundle.transport import SystemCorrespondence, compose_pipeline, transport_patch

logging.basicConfig(level=logging.INFO, format="%(message)s")

u, v = (3.9, 3.0), (4.1, 4.0)
w = (u[0] + v[0], u[1] + v[1])
tri = system_from_words(
    "real",
    {"u": u, "v": v, "w": w},
    {"T": [("u", 1), ("v", 1), ("w", -1)], "R": [("u", -1), ("v", -1), ("w", 1)]},
)
rec = compose_pipeline(tri, 0.2)
print("integral vectors:", {e.id: e.vector for e in rec.integral.edge_types})

patch = transport_patch(grow_patch(tri, single_tile_patch("T"), 5), SystemCorrespondence(tri, rec.integral))
config = explode(patch, rec.squares)
rules = matching_rules(rec.squares)
print(f"{len(patch)} tiles -> {len(config.assignment)} squares; violations: {len(rule_violations(config, rules))}")

cell = min(config.assignment, key=lambda c: (c[1], c[0]))
other = next(s for s in rec.squares.alphabet if s != config.assignment[cell])
bad = SquareConfiguration({**config.assignment, cell: other})
print(f"swap {config.assignment[cell]} for {other} at {cell}: {len(rule_violations(bad, rules))} violations")
try:
    amalgamate(bad, rec.squares)
except AmalgamationError as exc:
    print("amalgamation refuses it:", exc)
