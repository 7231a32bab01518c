"""Acceptance checks for the exact constants, automata and dimensions, with timing."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import buchi, cns, dimension, geometry, lines

F = Fraction


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.name} ({self.seconds:.2f}s) {self.detail}"


class _Collector:
    def __init__(self):
        self.failures: list[str] = []
        self.notes: list[str] = []

    def expect(self, cond: bool, what: str):
        if not cond:
            self.failures.append(what)

    def note(self, text: str):
        self.notes.append(text)


def _run(number: int, name: str, budget: float | None, body: Callable[[_Collector], None]) -> CheckResult:
    c = _Collector()
    start = time.perf_counter()
    try:
        body(c)
    except Exception as exc:  # report, don't crash the table
        c.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        c.failures.append(f"runtime {elapsed:.2f}s exceeds {budget}s")
    detail = "; ".join(c.failures) if c.failures else "; ".join(c.notes)
    return CheckResult(number, name, not c.failures, detail, elapsed)


FIFTH_LINE_LABELS = {
    ("g3", "g3"): [-2],
    ("g3", "g4"): [-2, 0],
    ("g4", "g4"): [3],
    ("g4", "g3"): [1, 3],
}


def check_fifth_line_boundary() -> CheckResult:
    def body(c):
        B = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
        c.expect(len(B.states) == 2, f"expected 2 states, got {len(B.states)}")
        labels = {}
        for (s, g), a, (t, h) in B.edges:
            labels.setdefault((g, h), []).append(B.alphabet[a].value.im)
        labels = {k: sorted(v) for k, v in labels.items()}
        c.expect(labels == FIFTH_LINE_LABELS, f"edge labels {labels}")
        scc = buchi.scc_decompose(B)
        mats = [m.tolist() for i, m in enumerate(scc.matrices) if scc.is_cyclic(i)]
        c.expect(mats == [[[1, 2], [2, 1]]], f"incidence matrices {mats}")
        if mats:
            poly = dimension.char_poly(mats[0])
            c.expect(poly.coeffs == (1, -2, -3), f"char poly {poly}")
        report = dimension.hausdorff_dimension(B)
        c.expect(report.beta is not None and abs(report.beta - 3) < 1e-12, f"beta {report.beta}")
        target = math.log(3) / math.log(4)
        c.expect(report.dimension is not None and abs(report.dimension - target) < 1e-9,
                 f"dimension {report.dimension}")
        c.note(f"beta={report.beta}, dim={report.dimension:.12f}")
    return _run(1, "boundary on x=-1/5: automaton and dimension log3/log4", 1.0, body)


def check_vertical_r0() -> CheckResult:
    def body(c):
        L = lines.normalize_line(1, 0, 0)
        B = lines.boundary_line_automaton(L)
        card = buchi.classify_cardinality(B)
        c.expect(str(card) == "finite(2)", f"cardinality {card}")
        points = sorted(cns.eval_periodic(u, v) for u, v in buchi.finite_words(B))
        c.expect(points == [(F(0), F(-2, 5)), (F(0), F(3, 5))], f"boundary points {points}")
        seg = geometry.extract_interval_union(lines.build_line_automaton(L))
        c.expect(seg == geometry.IntervalUnion.of((F(-2, 5), F(3, 5))), f"segment {seg}")
        c.note(f"{card}, points {[(str(x), str(y)) for x, y in points]}, segment {seg}")
    return _run(2, "vertical line x=0: two boundary points, segment [-2/5, 3/5]", 1.0, body)


def check_quarter_line() -> CheckResult:
    def body(c):
        A = lines.build_line_automaton(lines.normalize_line(1, 0, F(-1, 4)))
        ims = geometry.extract_interval_union(A, "imag")
        want = geometry.IntervalUnion.of((F(-9, 10), F(-13, 20)), (F(-2, 5), F(1, 10)),
                                         (F(7, 20), F(3, 5)))
        c.expect(ims == want, f"imaginary parts {ims}")
        res = geometry.extract_interval_union(A, "real")
        c.expect(res == geometry.IntervalUnion.of((F(-1, 4), F(-1, 4))), f"real parts {res}")
        c.note(f"-1/4 + ({ims}) i")
    return _run(3, "K on x=-1/4 is three intervals", 1.0, body)


def check_extremes(samples: int = 50, seed: int = 20200101) -> CheckResult:
    def body(c):
        lo, hi = geometry.extremes()
        c.expect((lo, hi) == (F(-13, 15), F(7, 15)), f"extremes {lo}, {hi}")
        rng = random.Random(seed)
        tested = 0
        while tested < samples:
            den = rng.randint(1, 40)
            r = F(rng.randint(-3 * den, 3 * den), den)
            if lo <= r <= hi:
                continue
            A = lines.build_line_automaton(lines.normalize_line(1, 0, r))
            c.expect(A.is_empty(), f"line x={r} meets K")
            tested += 1
        c.note(f"min={lo}, max={hi}, {tested} outside lines empty")
    return _run(4, "real extremes -13/15, 7/15", None, body)


def check_boundary_self_consistency() -> CheckResult:
    def body(c):
        consts = dimension.lambda_constants()
        report = dimension.hausdorff_dimension(lines.boundary_automaton_base4())
        c.expect(abs(report.beta - consts.lam ** 4) < 1e-9, f"beta {report.beta} vs {consts.lam ** 4}")
        c.expect(f"{report.dimension:.4f}" == "1.5236", f"dimension {report.dimension}")
        c.expect(f"{consts.s:.4f}" == "1.5236", f"s {consts.s}")
        c.note(f"beta={report.beta:.12f}, lambda^4={consts.lam ** 4:.12f}, dim={report.dimension:.6f}")
    return _run(5, "boundary automaton spectral radius lambda^4, dim 1.5236", None, body)


def check_never_s_minus_1(bound: int = 4) -> CheckResult:
    def body(c):
        roots = dimension.TARGET_POLY.rational_roots()
        c.expect(roots == [], f"4x^3-9x^2+2x-1 has rational roots {roots}")
        c.expect(dimension.target_satisfies(), "lambda^4/4 does not satisfy 4x^3-9x^2+2x-1")
        nonempty = 0
        min_gap = math.inf
        for L in lines.all_small_lines(bound):
            B = lines.boundary_line_automaton(L)
            if B.is_empty():
                continue
            nonempty += 1
            report = dimension.hausdorff_dimension(B, line=L)
            cert = dimension.check_not_s_minus_1(report)
            min_gap = min(min_gap, cert.gap)
            c.expect(cert.passed, f"certificate failed for {L}")
        c.expect(nonempty > 0, "no nonempty boundary sections found")
        c.note(f"{nonempty} nonempty sections, min |beta - lambda^4/4| = {min_gap:.6f}")
    return _run(6, "never s-1 certificate for |p|,|q|,|r| <= 4", 30.0, body)


def check_oracle(bound: int = 3, depth: int = 8) -> CheckResult:
    def body(c):
        compared = words = 0
        for L in lines.all_small_lines(bound):
            got = buchi.prefix_code_layers(lines.build_line_automaton(L), depth)
            want = lines.brute_force_prefix_layers(L, depth)
            for n, (g, w) in enumerate(zip(got, want)):
                compared += 1
                words += len(w)
                if not np.array_equal(g, w):
                    c.expect(False, f"{L} depth {n}: {len(g)} vs {len(w)} words")
                    break
        c.note(f"{compared} (line, depth) prefix sets identical, {words} words")
    return _run(7, "line automaton prefixes match brute-force recursion", None, body)


DIAGONAL_RS = (F(0), F(1, 10), F(-1, 2), F(-8, 15) + F(1, 100))


def check_diagonals(depth: int = 5) -> CheckResult:
    def body(c):
        worst = 0.0
        for r in DIAGONAL_RS:
            for rel in geometry.diagonal_relations(r, depth):
                worst = max(worst, rel.distance / rel.tolerance)
                c.expect(rel.passed, f"r={r}: {rel.name} distance {rel.distance:.3g} > {rel.tolerance:.3g}")
        c.note(f"worst distance/tolerance = {worst:.3f}")
    return _run(8, "diagonal similarity relations at depth 5", None, body)


BOX_SCALES_BOUNDARY = [2.0 ** -k for k in range(4, 9)]
BOX_SCALES_TILE = [2.0 ** -k for k in range(7, 11)]
BOX_SCALES_FIFTH_LINE = [2.0 ** -k for k in range(4, 9)]


def box_counting_estimates() -> dict[str, float]:
    boundary = geometry.attractor_points(lines.boundary_automaton_base4(), 10, resolution=2.0 ** -11)
    fifth = geometry.attractor_points(lines.boundary_line_automaton(lines.normalize_line(5, 0, -1)),
                                     10, part="imag")
    tile = geometry.attractor_points(geometry.tile_automaton(), 8, resolution=2.0 ** -11)
    return {
        "boundary": geometry.box_counting(boundary, BOX_SCALES_BOUNDARY),
        "fifth_line": geometry.box_counting(fifth, BOX_SCALES_FIFTH_LINE),
        "tile": geometry.box_counting(tile, BOX_SCALES_TILE),
    }


def check_box_counting() -> CheckResult:
    def body(c):
        est = box_counting_estimates()
        consts = dimension.lambda_constants()
        targets = {"boundary": consts.s, "fifth_line": math.log(3) / math.log(4), "tile": 2.0}
        for key, target in targets.items():
            c.expect(abs(est[key] - target) < 0.05, f"{key} slope {est[key]:.4f} vs {target:.4f}")
        c.note(", ".join(f"{k}={v:.4f}" for k, v in est.items()))
    return _run(9, "box-counting slopes", 60.0, body)


# Verbatim transcription of the 16-entry table of 4-digit blocks.
GOLDEN_TABLE = {
    "0000": 0, "0001": 1, "0010": -1 + 1j, "0011": 1j,
    "0100": -2j, "0101": 1 - 2j, "0110": -1 - 1j, "0111": -1j,
    "1000": 2 + 2j, "1001": 3 + 2j, "1010": 1 + 3j, "1011": 2 + 3j,
    "1100": 2, "1101": 3, "1110": 1 + 1j, "1111": 2 + 1j,
}


def check_digit_table() -> CheckResult:
    def body(c):
        table = cns.digit_table()
        got = {b.word: complex(b.value) for b in table}
        want = {k: complex(v) for k, v in GOLDEN_TABLE.items()}
        c.expect(got == want, f"table mismatch at {[k for k in want if got.get(k) != want[k]]}")
        c.expect([b.word for b in table] == sorted(GOLDEN_TABLE), "table order")
        c.note("16/16 blocks match")
    return _run(10, "digit table golden values", None, body)


CHECKS = (check_fifth_line_boundary, check_vertical_r0, check_quarter_line, check_extremes,
          check_boundary_self_consistency, check_never_s_minus_1, check_oracle,
          check_diagonals, check_box_counting, check_digit_table)


def run_all(skip: tuple[int, ...] = ()) -> list[CheckResult]:
    return [check() for i, check in enumerate(CHECKS, 1) if i not in skip]
