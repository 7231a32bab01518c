"""
Drawing K and its sections
==========================

Points are generated digit by digit on an integer grid, so deep
approximations stay cheap.  Images are plain PPM files.
"""
from fractions import Fraction
from pathlib import Path

from twindragon import lines
from twindragon.render import render

out = Path("demo_output")
out.mkdir(exist_ok=True)

# %%
# The tile with the line x = -1/5
raster = render(10, [lines.normalize_line(1, 0, Fraction(-1, 5))], size=(384, 384))
raster.save(out / "twin_dragon.ppm")
print(raster.occupied("K"), "tile pixels")

# %%
# Several sections without the tile
sections = [lines.normalize_line(1, 0, 0), lines.normalize_line(1, 0, Fraction(-1, 4)),
            lines.normalize_line(1, 1, Fraction(-1, 10)), lines.normalize_line(2, -3, 1)]
raster = render(10, sections, size=(384, 384), tile=False)
raster.save(out / "sections.ppm")
for name, _, grid in raster.layers:
    print(name, int(grid.sum()))
