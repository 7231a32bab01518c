from fractions import Fraction as F

import numpy as np
import pytest

from twindragon import lines
from twindragon.render import MAX_DEPTH, Raster, Viewport, render


def test_depth_one_has_sixteen_cells():
    r = render(1, size=(64, 64))
    assert r.occupied("K") == 16


def test_render_is_deterministic():
    L = [lines.normalize_line(1, 0, F(-1, 5))]
    a = render(6, L, size=(96, 80)).to_ppm()
    b = render(6, L, size=(96, 80)).to_ppm()
    assert a == b
    assert a.startswith(b"P3\n96 80\n255\n")


def test_line_pixels_sit_in_one_column():
    vp = Viewport(F(-1), F(1), F(-1), F(1))
    r = render(8, [lines.normalize_line(1, 0, F(-1, 5))], viewport=vp, size=(200, 200), tile=False)
    grid = r.layers[0][2]
    cols = np.nonzero(grid.any(axis=0))[0]
    assert cols.tolist() == [80]  # x = -1/5 maps to column floor(0.8 / 2 * 200)


def test_raster_pixels_and_save(tmp_path):
    vp = Viewport(F(0), F(1), F(0), F(1))
    r = Raster(4, 4, vp)
    r.add("dots", (1, 2, 3), np.array([0.1 + 0.9j, 0.9 + 0.1j, 5 + 5j]))
    img = r.pixels()
    assert tuple(img[0, 0]) == (1, 2, 3) and tuple(img[3, 3]) == (1, 2, 3)
    assert r.occupied() == 2
    path = tmp_path / "x.ppm"
    r.save(path)
    assert path.read_bytes() == r.to_ppm()


def test_bad_arguments():
    with pytest.raises(ValueError):
        Viewport(F(1), F(0), F(0), F(1))
    with pytest.raises(ValueError):
        render(MAX_DEPTH + 1)
