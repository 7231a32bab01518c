"""Exact sections of the twin dragon by axis-parallel and diagonal lines, point clouds, box counting."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .buchi import BuchiAutomaton, canonical_word, enumerate_prefixes, scc_decompose
from .cns import GaussianInt, block_for_bits, digit_table, eval_periodic, eval_prefix, tail_bound
from .lines import LineParams, build_line_automaton, normalize_line


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of disjoint closed intervals with rational endpoints, sorted."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        merged: list[list[Fraction]] = []
        for lo, hi in sorted((Fraction(a), Fraction(b)) for a, b in self.intervals):
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "intervals", tuple((a, b) for a, b in merged))

    @classmethod
    def of(cls, *pairs) -> "IntervalUnion":
        return cls(tuple(pairs))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def length(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), Fraction(0))

    @property
    def hull(self) -> tuple[Fraction, Fraction]:
        return self.intervals[0][0], self.intervals[-1][1]

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self.intervals + other.intervals)

    def shift(self, d) -> "IntervalUnion":
        return IntervalUnion(tuple((a + d, b + d) for a, b in self.intervals))

    def digit_image(self, d) -> "IntervalUnion":
        """Image under ``x -> (x + d) / -4``."""
        return IntervalUnion(tuple(((b + d) / -4, (a + d) / -4) for a, b in self.intervals))

    def __str__(self):
        return " ∪ ".join(f"[{a}, {b}]" for a, b in self.intervals) or "∅"


@dataclass(frozen=True)
class NotAnIntervalUnion:
    reason: str

    def __bool__(self):
        return False


def _digit_part(letter, part: str) -> int:
    if hasattr(letter, "value"):
        letter = letter.value
    if isinstance(letter, GaussianInt):
        return letter.im if part == "imag" else letter.re
    return int(letter)


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    rows = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if rows[i][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for i in range(n):
            if i != col and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return [rows[i][n] for i in range(n)]


def _component_hull(comp, edges, known):
    """Exact ``(lo, hi)`` of every attractor in a cyclic SCC.

    With ``u = -lo`` both equations become maximisations,
    ``u_s = max (hi_t + d) / 4`` and ``hi_s = max (u_t - d) / 4``,
    a discounted problem solved exactly by policy iteration.
    """
    idx = {s: i for i, s in enumerate(comp)}
    k = len(comp)

    def value_terms(s, kind, values):
        # candidate values of u_s (kind 0) or hi_s (kind 1) for each edge
        out = []
        for d, t in edges[s]:
            if t in idx:
                other = values[idx[t] + (k if kind == 0 else 0)]
            else:
                lo_t, hi_t = known[t].hull
                other = hi_t if kind == 0 else -lo_t
            out.append(((other + d) / 4) if kind == 0 else ((other - d) / 4))
        return out

    policy = {(s, kind): 0 for s in comp for kind in (0, 1)}
    while True:
        # evaluate: unknowns u_0..u_{k-1}, hi_0..hi_{k-1}
        mat = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
        rhs = [Fraction(0)] * (2 * k)
        for s in comp:
            for kind in (0, 1):
                row = idx[s] + kind * k
                mat[row][row] += 1
                d, t = edges[s][policy[s, kind]]
                if t in idx:
                    col = idx[t] + (k if kind == 0 else 0)
                    mat[row][col] -= Fraction(1, 4)
                    rhs[row] = Fraction(d, 4) if kind == 0 else Fraction(-d, 4)
                else:
                    lo_t, hi_t = known[t].hull
                    rhs[row] = (hi_t + d) / 4 if kind == 0 else (-lo_t - d) / 4
        values = _solve(mat, rhs)
        changed = False
        for s in comp:
            for kind in (0, 1):
                cands = value_terms(s, kind, values)
                best = max(range(len(cands)), key=lambda j: (cands[j], -j))
                if cands[best] > cands[policy[s, kind]]:
                    policy[s, kind] = best
                    changed = True
        if not changed:
            return {s: (-values[idx[s]], values[idx[s] + k]) for s in comp}


def extract_interval_union(A: BuchiAutomaton, part: str = "imag"):
    """Exact finite union of closed intervals described by a trimmed automaton.

    Letters are projected to one real coordinate (``part``) and read as base
    -4 digits.  Acyclic states map finitely many pieces; every cyclic SCC must
    have interval attractors, which holds exactly when the digit images of the
    exact hulls cover each hull without gaps.  Otherwise a
    :class:`NotAnIntervalUnion` is returned.
    """
    if A.is_empty():
        return IntervalUnion(())
    edges = {s: sorted({(_digit_part(A.alphabet[a], part), t) for a, t in A.successors[s]},
                       key=lambda e: (e[0], repr(e[1])))
             for s in A.states}
    scc = scc_decompose(A)
    known: dict = {}
    for i in reversed(range(len(scc.components))):
        comp = scc.components[i]
        if not scc.is_cyclic(i):
            (s,) = comp
            acc = IntervalUnion(())
            for d, t in edges[s]:
                acc = acc.union(known[t].digit_image(d))
            known[s] = acc
            continue
        hulls = _component_hull(comp, edges, known)
        pieces = {}
        for s in comp:
            acc = IntervalUnion(())
            for d, t in edges[s]:
                src = IntervalUnion.of(hulls[t]) if t in hulls else known[t]
                acc = acc.union(src.digit_image(d))
            if len(acc) != 1 or acc.hull != hulls[s]:
                return NotAnIntervalUnion(f"attractor of state {s!r} has gaps")
            pieces[s] = acc
        known.update(pieces)
    out = IntervalUnion(())
    for s in A.initial:
        out = out.union(known[s])
    return out


def tile_automaton() -> BuchiAutomaton:
    """One state looping on all 16 digits: its attractor is the whole twin dragon."""
    table = digit_table()
    return BuchiAutomaton.build(["K"], table, [("K", i, "K") for i in range(16)], ["K"],
                                name="K")


def extremes() -> tuple[Fraction, Fraction]:
    """Smallest and largest real part of a point of K.

    Odd positions carry negative weight, so the minimum alternates the digits
    of real part 3 and -1 and the maximum does the opposite.
    """
    lo, _ = eval_periodic([], [3, -1])
    hi, _ = eval_periodic([], [-1, 3])
    return lo, hi


def imaginary_extremes() -> tuple[Fraction, Fraction]:
    ims = sorted({b.value.im for b in digit_table()})
    _, lo = eval_periodic([], [complex(0, ims[-1]), complex(0, ims[0])])
    _, hi = eval_periodic([], [complex(0, ims[0]), complex(0, ims[-1])])
    return lo, hi


# -- vertical lines through the twin dragon --

class ExcludedSequenceError(ValueError):
    pass


def _parse_bits(s: str) -> tuple[int, ...]:
    if any(c not in "01" for c in s):
        raise ValueError(f"{s!r} is not a word over {{0, 1}}")
    return tuple(int(c) for c in s)


def binary_value(preperiod: str, period: str) -> Fraction:
    """``r = sum 2 a_k (-4)**-k`` for the eventually periodic sequence ``a``."""
    pre, per = _parse_bits(preperiod), _parse_bits(period)
    r, _ = eval_periodic([2 * a for a in pre], [2 * a for a in per])
    return r


@dataclass(frozen=True)
class VerticalSection:
    r: Fraction
    lower: tuple[Fraction, Fraction]
    upper: tuple[Fraction, Fraction]
    segment: IntervalUnion  # imaginary parts of K on the line x = r

    @property
    def line(self) -> LineParams:
        return normalize_line(1, 0, self.r)


def vertical_line_endpoints(preperiod: str, period: str) -> VerticalSection:
    """Boundary points of K on ``x = r`` for ``r = sum 2 a_k (-4)**-k``.

    The sequence ``a`` must not end in ``(01)^omega``.
    """
    pre, per = canonical_word(_parse_bits(preperiod), _parse_bits(period))
    if not per:
        raise ValueError("period must be nonempty")
    if per in ((0, 1), (1, 0)):
        raise ExcludedSequenceError("sequences ending in (01)^omega are excluded")
    r = binary_value(preperiod, period)
    lo, hi = r - Fraction(2, 5), r + Fraction(3, 5)
    return VerticalSection(r, (r, lo), (r, hi), IntervalUnion.of((lo, hi)))


def vertical_endpoint_words(preperiod: str, period: str):
    """Digit-block words of the two boundary points, as ``(preperiod, period)`` pairs.

    The upper point reads ``a_1 100 a_2 011 a_3 100 ...`` in base ``-1+i``, the
    lower one ``a_1 011 a_2 100 ...``.  Returns ``(upper, lower)``.
    """
    pre, per = _parse_bits(preperiod), _parse_bits(period)
    span = math.lcm(len(per), 2)
    seq_pre = list(pre)
    seq_per = [per[k % len(per)] for k in range(span)]

    def blocks(first, second, seq, offset):
        return tuple(block_for_bits((a,) + (first if (offset + k) % 2 == 0 else second))
                     for k, a in enumerate(seq))

    out = []
    for first, second in (((1, 0, 0), (0, 1, 1)), ((0, 1, 1), (1, 0, 0))):
        out.append((blocks(first, second, seq_pre, 0),
                    blocks(first, second, seq_per, len(seq_pre))))
    return tuple(out)


# -- point clouds --

def prefix_points(A: BuchiAutomaton, n: int) -> list[tuple[Fraction, Fraction]]:
    """Exact points ``sum_{k<=n} b_k (-4)**-k`` for every accepted length-``n`` prefix."""
    return sorted({eval_prefix(w) for w in enumerate_prefixes(A, n)})


def prefix_cloud(A: BuchiAutomaton, n: int) -> np.ndarray:
    """Depth-``n`` prefix points as complex floats (distinct values, sorted)."""
    pts = prefix_points(A, n)
    return np.array([complex(float(x), float(y)) for x, y in pts], dtype=complex)


def attractor_points(A: BuchiAutomaton, depth: int, resolution: float | None = None,
                     part: str | None = None) -> np.ndarray:
    """Depth-``depth`` prefix points of the attractor, built from the last digit outwards.

    ``S_{k+1}(s) = U (S_k(t) + b) / -4`` over edges ``s -b-> t`` with ``S_0 = {0}``.
    When ``resolution`` is given, points live on that grid and are snapped
    after every step, which bounds memory; the accumulated displacement stays
    below ``2/3 * resolution``.  ``part='imag'`` or ``'real'`` projects labels
    to one coordinate first and returns real values.
    """
    if A.is_empty():
        return np.zeros(0, dtype=float if part else complex)
    if part is None:
        labels = np.array([complex(b.value) if hasattr(b, "value") else complex(b)
                           for b in A.alphabet])
    else:
        labels = np.array([_digit_part(b, part) for b in A.alphabet], dtype=float)
    if resolution is None:
        return _exact_attractor(A, depth, labels)
    lx = labels.real / resolution
    ly = labels.imag / resolution if part is None else np.zeros(len(labels))
    succ = A.successors
    zero = np.zeros(1, dtype=np.int64)
    current = {s: (zero, zero) for s in A.states}
    for _ in range(depth):
        nxt = {}
        for s in A.states:
            xs, ys = [], []
            for a, t in succ[s]:
                X, Y = current[t]
                xs.append(np.rint(-(X + lx[a]) / 4).astype(np.int64))
                ys.append(np.rint(-(Y + ly[a]) / 4).astype(np.int64))
            nxt[s] = unique_cells(np.concatenate(xs), np.concatenate(ys))
        current = nxt
    starts = sorted(A.initial, key=repr)
    X, Y = unique_cells(np.concatenate([current[s][0] for s in starts]),
                        np.concatenate([current[s][1] for s in starts]))
    if part is not None:
        return X * resolution
    return X * resolution + 1j * (Y * resolution)


def _exact_attractor(A: BuchiAutomaton, depth: int, labels: np.ndarray) -> np.ndarray:
    succ = A.successors
    current = {s: np.zeros(1, dtype=labels.dtype) for s in A.states}
    for _ in range(depth):
        current = {s: np.unique(np.concatenate([(current[t] + labels[a]) / -4.0
                                                for a, t in succ[s]]))
                   for s in A.states}
    return np.unique(np.concatenate([current[s] for s in A.initial]))


_BITMAP_LIMIT = 60_000_000


def unique_cells(X: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct integer cells, sorted by ``(X, Y)``.

    Marks a boolean bitmap over the bounding box when it is small enough,
    otherwise sorts packed keys.
    """
    if len(X) == 0:
        return X, Y
    x0, y0 = X.min(), Y.min()
    wx, wy = int(X.max() - x0) + 1, int(Y.max() - y0) + 1
    if wx * wy <= _BITMAP_LIMIT:
        grid = np.zeros((wx, wy), dtype=bool)
        grid[X - x0, Y - y0] = True
        ix, iy = np.nonzero(grid)
        return ix + x0, iy + y0
    keys = np.unique((X - x0) * wy + (Y - y0))
    return keys // wy + x0, keys % wy + y0


def box_counting(points, scales: Sequence[float]) -> float:
    """Least-squares slope of ``log N(eps)`` against ``log(1/eps)``."""
    if len(scales) < 3:
        raise ValueError("box counting needs at least three scales")
    pts = np.asarray(points)
    if np.iscomplexobj(pts):
        xs, ys = pts.real, pts.imag
    else:
        xs, ys = pts.reshape(len(pts), -1)[:, 0], None
    counts = []
    for eps in scales:
        X = np.floor(xs / eps).astype(np.int64)
        Y = np.zeros_like(X) if ys is None else np.floor(ys / eps).astype(np.int64)
        counts.append(len(unique_cells(X, Y)[0]))
    slope, _ = np.polyfit(np.log(1 / np.asarray(scales, dtype=float)), np.log(counts), 1)
    return float(slope)


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    def as2d(z):
        z = np.asarray(z)
        return np.stack([z.real, z.imag], axis=1) if np.iscomplexobj(z) else z.reshape(len(z), -1)

    if len(a) == 0 or len(b) == 0:
        return 0.0 if len(a) == len(b) else math.inf
    A, B = as2d(a), as2d(b)
    d_ab = cKDTree(B).query(A)[0].max()
    d_ba = cKDTree(A).query(B)[0].max()
    return float(max(d_ab, d_ba))


# -- diagonal lines --

DIAGONAL_RANGE = (Fraction(-8, 15), Fraction(2, 15))


@dataclass(frozen=True)
class RelationCheck:
    name: str
    distance: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.distance <= self.tolerance


def _translates(cloud: np.ndarray, shifts: Iterable[complex]) -> np.ndarray:
    return np.concatenate([cloud + s for s in shifts])


def diagonal_relations(r, depth: int) -> list[RelationCheck]:
    """Compare both sides of the four similarity relations between diagonal and axis sections.

    Each side is the depth-``n`` prefix cloud of a line automaton; the side that
    gets multiplied by a similarity uses depth ``n + 1`` so that its
    approximation error, at most ``|factor| / 4`` times the tail bound, stays
    below the tail bound.  The clouds must then agree within twice the tail bound.
    """
    r = Fraction(r)
    lo, hi = DIAGONAL_RANGE
    if not lo < r < hi:
        raise ValueError(f"r = {r} is outside the open range ({lo}, {hi})")
    n = depth

    def cloud(p, q, rr, k):
        return prefix_cloud(build_line_automaton(normalize_line(p, q, rr)), k)

    vert = cloud(1, 0, r, n)
    horiz = cloud(0, 1, r / 2, n)
    horiz_fine = cloud(0, 1, r / 2, n + 1)
    anti = cloud(1, 1, -r, n + 1)
    diag = cloud(1, -1, r / 2, n + 1)
    tol = 2 * tail_bound(n)
    pairs = [
        ("-2i (K ∩ Δ_{0,1,r/2}) = (K ∩ Δ_{1,0,r}) + {0, i}",
         -2j * horiz_fine, _translates(vert, (0, 1j))),
        ("(-1+i) (K ∩ Δ_{1,1,-r}) = K ∩ Δ_{1,0,r}",
         (-1 + 1j) * anti, vert),
        ("(-1+i) (K ∩ Δ_{1,-1,r/2}) = (K ∩ Δ_{0,1,r/2}) + {0, 1}",
         (-1 + 1j) * diag, _translates(horiz, (0, 1))),
        ("2(1+i) (K ∩ Δ_{1,-1,r/2}) = (K ∩ Δ_{1,0,r}) + {-2i, -i, 0, i}",
         2 * (1 + 1j) * diag, _translates(vert, (-2j, -1j, 0, 1j))),
    ]
    return [RelationCheck(name, hausdorff_distance(a, b), tol) for name, a, b in pairs]


def diagonal_relations_check(r, depth: int = 5) -> bool:
    return all(c.passed for c in diagonal_relations(r, depth))


def diagonal_segments(r) -> dict[str, tuple[complex, complex]]:
    """Closed-form endpoints of the horizontal and diagonal sections related to ``x = r``.

    They are segments exactly when ``K`` meets ``x = r`` in a segment, which
    happens for ``r = sum 2 a_k (-4)**-k`` (see :func:`vertical_line_endpoints`).
    """
    r = Fraction(r)
    half = r / 2
    return {
        "Δ_{0,1,r/2}": ((-Fraction(4, 5) - half, half), (Fraction(1, 5) - half, half)),
        "Δ_{1,1,-r}": ((-Fraction(1, 5), Fraction(1, 5) - r), (Fraction(3, 10), -(Fraction(3, 10) + r))),
        "Δ_{1,-1,r/2}": ((-Fraction(3, 5) + half, -Fraction(3, 5)), (Fraction(2, 5) + half, Fraction(2, 5))),
    }


def write_cloud(points, path, exact: bool = False) -> None:
    """Write one ``x y`` pair per line; exact rationals when ``exact`` and the input holds them."""
    with open(path, "w", encoding="utf-8") as fh:
        for p in points:
            if exact:
                x, y = p
                fh.write(f"{x} {y}\n")
            else:
                z = complex(*p) if isinstance(p, tuple) else complex(p)
                fh.write(f"{z.real:.12f} {z.imag:.12f}\n")
