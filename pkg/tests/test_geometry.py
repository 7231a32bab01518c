from fractions import Fraction as F

import numpy as np
import pytest

from twindragon import buchi, cns, geometry, lines
from twindragon.geometry import IntervalUnion, NotAnIntervalUnion


def line_auto(p, q, r):
    return lines.build_line_automaton(lines.normalize_line(p, q, r))


def test_interval_union_merges_and_measures():
    u = IntervalUnion.of((0, 1), (F(1, 2), 2), (3, 4))
    assert u.intervals == ((0, 2), (3, 4))
    assert u.length == 3
    assert u.hull == (0, 4)
    assert str(u) == "[0, 2] ∪ [3, 4]"
    with pytest.raises(ValueError):
        IntervalUnion.of((1, 0))


def test_intervals_vertical_zero():
    assert geometry.extract_interval_union(line_auto(1, 0, 0)) == IntervalUnion.of((F(-2, 5), F(3, 5)))


def test_intervals_quarter():
    got = geometry.extract_interval_union(line_auto(1, 0, F(-1, 4)))
    assert got == IntervalUnion.of((F(-9, 10), F(-13, 20)), (F(-2, 5), F(1, 10)), (F(7, 20), F(3, 5)))


def test_intervals_boundary_section_is_not_a_union():
    B = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
    res = geometry.extract_interval_union(B)
    assert isinstance(res, NotAnIntervalUnion) and not res


def test_intervals_full_tile_projection():
    lo, hi = geometry.extremes()
    assert geometry.extract_interval_union(geometry.tile_automaton(), "real") == IntervalUnion.of((lo, hi))


def test_extremes():
    assert geometry.extremes() == (F(-13, 15), F(7, 15))
    lo, hi = geometry.extremes()
    assert not line_auto(1, 0, lo).is_empty()
    assert not line_auto(1, 0, hi).is_empty()
    assert line_auto(1, 0, lo - F(1, 1000)).is_empty()
    assert line_auto(1, 0, hi + F(1, 1000)).is_empty()


def test_binary_value():
    assert geometry.binary_value("", "0") == 0
    assert geometry.binary_value("1", "0") == F(-1, 2)
    assert geometry.binary_value("", "10") == F(-8, 15)
    assert geometry.binary_value("", "01") == F(2, 15)


@pytest.mark.parametrize("pre, per, r, lo, hi", [
    ("", "0", F(0), F(-2, 5), F(3, 5)),
    ("1", "0", F(-1, 2), F(-9, 10), F(1, 10)),
])
def test_vertical_endpoints(pre, per, r, lo, hi):
    sec = geometry.vertical_line_endpoints(pre, per)
    assert sec.r == r
    assert sec.lower == (r, lo) and sec.upper == (r, hi)
    A = lines.build_line_automaton(sec.line)
    assert geometry.extract_interval_union(A) == sec.segment


def test_vertical_excluded_tail():
    with pytest.raises(geometry.ExcludedSequenceError):
        geometry.vertical_line_endpoints("1", "01")
    with pytest.raises(geometry.ExcludedSequenceError):
        geometry.vertical_line_endpoints("", "10")


@pytest.mark.parametrize("pre, per", [("", "0"), ("1", "0"), ("", "1100"), ("01", "1"), ("", "110")])
def test_vertical_endpoint_words_lie_on_boundary(pre, per):
    sec = geometry.vertical_line_endpoints(pre, per)
    B = lines.boundary_line_automaton(sec.line)
    (up_u, up_v), (lo_u, lo_v) = geometry.vertical_endpoint_words(pre, per)
    assert cns.eval_periodic([b.value for b in up_u], [b.value for b in up_v]) == sec.upper
    assert cns.eval_periodic([b.value for b in lo_u], [b.value for b in lo_v]) == sec.lower
    assert buchi.accepts(B, up_u, up_v)
    assert buchi.accepts(B, lo_u, lo_v)
    assert str(buchi.classify_cardinality(B)) == "finite(2)"
    assert geometry.extract_interval_union(lines.build_line_automaton(sec.line)) == sec.segment


def test_prefix_cloud_depth_one():
    pts = geometry.prefix_cloud(geometry.tile_automaton(), 1)
    assert len(pts) == 16
    expected = np.array([complex(b.value) / -4 for b in cns.digit_table()])
    assert geometry.hausdorff_distance(pts, expected) < 1e-12


def test_attractor_points_exact_matches_prefix_cloud():
    A = line_auto(1, 0, F(-1, 4))
    a = geometry.attractor_points(A, 4)
    b = geometry.prefix_cloud(A, 4)
    assert len(a) == len(b)
    assert geometry.hausdorff_distance(a, b) < 1e-12


def test_attractor_snapping_error_is_small():
    A = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
    exact = geometry.attractor_points(A, 6)
    snapped = geometry.attractor_points(A, 6, resolution=2.0 ** -12)
    assert geometry.hausdorff_distance(exact, snapped) <= 2.0 ** -12


def test_line_cloud_stays_near_line():
    A = line_auto(1, 0, F(-1, 5))
    pts = geometry.attractor_points(A, 8)
    assert np.all(np.abs(pts.real + 0.2) <= 4.0 ** -8)


def test_box_counting_needs_three_scales():
    with pytest.raises(ValueError):
        geometry.box_counting(np.zeros(3, complex), [0.1, 0.01])


def test_box_counting_segment():
    # half-open [0, 1) meets exactly 2**k boxes of side 2**-k
    pts = np.linspace(0, 1, 4096, endpoint=False) * (1 + 0j)
    slope = geometry.box_counting(pts, [2.0 ** -k for k in range(3, 9)])
    assert abs(slope - 1) < 1e-9


def test_hausdorff_distance():
    a = np.array([0, 1], dtype=complex)
    b = np.array([0, 1, 3], dtype=complex)
    assert geometry.hausdorff_distance(a, b) == 2


@pytest.mark.parametrize("r", [F(0), F(1, 10)])
def test_diagonal_relations(r):
    assert geometry.diagonal_relations_check(r, depth=4)


def test_diagonal_rejects_out_of_range():
    with pytest.raises(ValueError):
        geometry.diagonal_relations(F(1, 2), 4)
    with pytest.raises(ValueError):
        geometry.diagonal_relations(F(-8, 15), 4)


@pytest.mark.parametrize("r", [F(0), F(1, 10), F(-1, 2), F(1, 8)])
def test_diagonal_segments_match_automata(r):
    segs = geometry.diagonal_segments(r)
    specs = {"Δ_{0,1,r/2}": (0, 1, r / 2), "Δ_{1,1,-r}": (1, 1, -r), "Δ_{1,-1,r/2}": (1, -1, r / 2)}
    for key, (p, q, rr) in specs.items():
        (x0, y0), (x1, y1) = segs[key]
        assert p * x0 + q * y0 == rr and p * x1 + q * y1 == rr
        got = geometry.extract_interval_union(line_auto(p, q, rr), "real")
        assert got == IntervalUnion.of((min(x0, x1), max(x0, x1)))


def test_write_cloud(tmp_path):
    path = tmp_path / "c.txt"
    geometry.write_cloud([(F(1, 3), F(-1, 2))], path, exact=True)
    assert path.read_text() == "1/3 -1/2\n"
    geometry.write_cloud(np.array([0.5 - 0.25j]), path)
    assert path.read_text() == "0.500000000000 -0.250000000000\n"
