"""Level-n pictures of C_t: exact measure, endpoint collapse, and the overlap grid.

    python demos/04_geometry_and_grid.py [outdir]

Writes W.pgm and W.svg (black = overlapping pair, q grows downward).
"""

import sys
from pathlib import Path

from overlap_lab.geometry import (
    first_collapse_depth,
    grid_to_pgm,
    grid_to_svg,
    level_endpoints,
    measure_and_dimension,
    render_W_grid,
)

for pq in [(1, 2), (2, 3), (1, 3), (1, 11)]:
    print(f"t = {pq[0]}/{pq[1]}")
    for n in (1, 3, 6):
        est = measure_and_dimension(pq, n)
        print(f"   level {n}: measure {str(est.measure):>12} = {float(est.measure):.5f}  "
              f"D_n {est.D_n:5d} / {4**n:5d}  dim ~ {est.dim_estimate:.4f}")
    print("   first level with coinciding endpoints:", first_collapse_depth(pq))

# t = 1/3 loses two endpoints at level 2
print("\nlevel-2 scaled endpoints of t = 1/3:", level_endpoints((1, 3), 2).endpoints.tolist())

outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
grid = render_W_grid(200)
(outdir / "W.pgm").write_bytes(grid_to_pgm(grid))
(outdir / "W.svg").write_text(grid_to_svg(render_W_grid(40)))
print(f"\nwrote {outdir / 'W.pgm'} ({int(grid.sum())} black cells of {grid.size}) and {outdir / 'W.svg'}")
