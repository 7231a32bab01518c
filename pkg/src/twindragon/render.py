"""Rasterize the twin dragon and its line sections into plain PPM images."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import attractor_points, extremes, imaginary_extremes, tile_automaton
from .lines import LineParams, build_line_automaton

MAX_DEPTH = 14

BACKGROUND = (255, 255, 255)
TILE_COLOR = (150, 150, 150)
PALETTE = ((0, 60, 220), (220, 30, 30), (0, 150, 60), (200, 120, 0), (140, 0, 160))


@dataclass(frozen=True)
class Viewport:
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("degenerate viewport")

    @classmethod
    def default(cls, margin=Fraction(1, 20)) -> "Viewport":
        xl, xh = extremes()
        yl, yh = imaginary_extremes()
        return cls(xl - margin, xh + margin, yl - margin, yh + margin)


@dataclass
class Raster:
    width: int
    height: int
    viewport: Viewport
    layers: list[tuple[str, tuple[int, int, int], np.ndarray]] = field(default_factory=list)

    def cells(self, points: np.ndarray) -> np.ndarray:
        """Boolean occupancy grid (rows top to bottom) for complex points."""
        vp = self.viewport
        sx = self.width / float(vp.x1 - vp.x0)
        sy = self.height / float(vp.y1 - vp.y0)
        col = np.floor((points.real - float(vp.x0)) * sx).astype(np.int64)
        row = np.floor((float(vp.y1) - points.imag) * sy).astype(np.int64)
        keep = (col >= 0) & (col < self.width) & (row >= 0) & (row < self.height)
        grid = np.zeros((self.height, self.width), dtype=bool)
        grid[row[keep], col[keep]] = True
        return grid

    def add(self, name: str, color, points: np.ndarray) -> np.ndarray:
        grid = self.cells(points)
        self.layers.append((name, tuple(color), grid))
        return grid

    def occupied(self, name: str | None = None) -> int:
        grids = [g for n, _, g in self.layers if name is None or n == name]
        return int(np.logical_or.reduce(grids).sum()) if grids else 0

    def pixels(self) -> np.ndarray:
        img = np.empty((self.height, self.width, 3), dtype=np.uint8)
        img[:] = BACKGROUND
        for _, color, grid in self.layers:
            img[grid] = color
        return img

    def to_ppm(self) -> bytes:
        """Plain (ASCII) PPM, byte-identical for identical inputs."""
        img = self.pixels()
        lines = [f"P3\n{self.width} {self.height}\n255\n"]
        for row in img:
            lines.append(" ".join(f"{r} {g} {b}" for r, g, b in row) + "\n")
        return "".join(lines).encode("ascii")

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_ppm())


def render(depth: int, lines: Sequence[LineParams] = (), viewport: Viewport | None = None,
           size: tuple[int, int] = (512, 512), tile: bool = True) -> Raster:
    """Draw the depth-``depth`` approximation of K and of its sections by ``lines``."""
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}]")
    viewport = viewport or Viewport.default()
    width, height = size
    raster = Raster(width, height, viewport)
    pixel = min(float(viewport.x1 - viewport.x0) / width, float(viewport.y1 - viewport.y0) / height)
    res = pixel / 4
    if tile:
        raster.add("K", TILE_COLOR, attractor_points(tile_automaton(), depth, resolution=res))
    for k, L in enumerate(lines):
        A = build_line_automaton(L)
        raster.add(str(L), PALETTE[k % len(PALETTE)], attractor_points(A, depth, resolution=res))
    return raster
