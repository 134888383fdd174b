"""Walk the real Penrose B-tiles down to marked unit squares.

Run with ``python3 demos/penrose_walkthrough.py [outdir]``.  Figures and
JSON files land in ``outdir`` (default ``penrose_out``).
"""
import sys
from fractions import Fraction
from pathlib import Path

from tilebundle import penrose
from tilebundle.fileio import save_patch, save_system
from tilebundle.rationalizer import max_deviation, rationalize, rescale_integral, torus_project
from tilebundle.squaresys import amalgamate, build_square_system, explode
from tilebundle.svg import render_svg
from tilebundle.tilemodel import grow_patch, prototile_area, single_tile_patch
from tilebundle.transport import SystemCorrespondence, transport_with_report
from tilebundle.zigzag import build_zigzag_system, max_deviation as path_deviation

out = Path(sys.argv[1] if len(sys.argv) > 1 else "penrose_out")
out.mkdir(parents=True, exist_ok=True)

real = penrose.real_system()
table = penrose.integral_system()
print(f"{len(real.prototiles)} prototiles, {len(real.edge_types)} edge types")

# A search for a nearby rational solution.  Small epsilons push the
# denominators up quickly, so the hand-made integer table is used below.
for eps in (0.5, 0.005):
    rat = rationalize(real, eps)
    _, rec = rescale_integral(rat)
    print(f"epsilon {eps}: deviation {float(max_deviation(real, rat)):.4f}, common denominator {rec.lcm_denominator}")

print(f"integer table: deviation {float(max_deviation(real, table)):.3f}, "
      f"total area {sum(prototile_area(p, table) for p in table.prototiles)}")

patch = grow_patch(real, single_tile_patch("A0"), 120, companions=(table,))
rep = transport_with_report(patch, SystemCorrespondence(real, table))
print(f"grown {len(patch)} tiles; transport made {rep.checks} consistency checks")

moved = rep.patch.shifted((Fraction(1, 3), Fraction(1, 2)))
print("torus coordinate after moving the origin by (1/3, 1/2):", torus_project(moved, table))

z = build_zigzag_system(table)
worst = max(path_deviation(z.paths[e.id], e.vector) for e in table.edge_types)
print(f"zig-zag edges: worst deviation {worst:.4f} (bound {0.5 ** 0.5:.4f}), {z.total_cells} cells")

sq = build_square_system(z)
config = explode(rep.patch, sq)
back = amalgamate(config, sq)
print(f"{len(sq.alphabet)} square symbols, rule radius {sq.rule_radius}; "
      f"{len(config.assignment)} marked squares; round trip exact: {back.placement_key() == rep.patch.placement_key()}")

save_system(table, out / "penrose_integral.json")
save_patch(rep.patch, "penrose_integral.json", out / "patch.json")
render_svg(real).write(out / "prototiles.svg")
render_svg(rep.patch, table).write(out / "patch.svg")
render_svg(z).write(out / "zigzag_edges.svg")
render_svg(config, grid=True).write(out / "squares.svg")
print("wrote", ", ".join(sorted(p.name for p in out.iterdir())))
