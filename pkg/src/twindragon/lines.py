"""Automata for the twin dragon cut by rational lines ``p x + q y = r``.

A point ``sum b_k (-4)**-k`` lies on the line iff the integer recursion
``s_0 = -r``, ``s_k = p Re(b_k) + q Im(b_k) - 4 s_{k-1}`` stays bounded, and
every bounded orbit satisfies ``|s_k| <= c(p, q)``.  The integers ``s`` are
the states of the line automaton.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

import numpy as np

from .buchi import BuchiAutomaton, product, trim
from .cns import digit_table


class DegenerateLineError(ValueError):
    pass


@dataclass(frozen=True)
class LineParams:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise DegenerateLineError("p and q cannot both vanish")

    def __str__(self):
        return f"Δ_{{{self.p},{self.q},{self.r}}}"

    @property
    def bound(self) -> Fraction:
        return state_bound(self.p, self.q)

    def contains(self, x, y) -> bool:
        return self.p * x + self.q * y == self.r


def _as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floating point line parameters are not accepted; use Fraction or 'a/b'")
    return Fraction(v)


def normalize_line(p, q, r) -> LineParams:
    """Integer triple with gcd 1 and positive leading coefficient describing the same line."""
    p, q, r = (_as_fraction(v) for v in (p, q, r))
    if p == 0 and q == 0:
        raise DegenerateLineError("p and q cannot both vanish")
    den = math.lcm(p.denominator, q.denominator, r.denominator)
    ints = [int(v * den) for v in (p, q, r)]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = ints[0] if ints[0] != 0 else ints[1]
    if lead < 0:
        ints = [-v for v in ints]
    return LineParams(*ints)


def state_bound(p: int, q: int) -> Fraction:
    """``c(p, q) = max |p Re(b) + q Im(b)| / 3`` over the base -4 digits."""
    return Fraction(max(abs(p * b.value.re + q * b.value.im) for b in digit_table()), 3)


def line_states(L: LineParams) -> list[int]:
    c = math.floor(L.bound)
    states = set(range(-c, c + 1))
    states.add(-L.r)
    return sorted(states)


def build_line_automaton(L: LineParams, trimmed: bool = True) -> BuchiAutomaton:
    """Büchi automaton whose words are the base -4 expansions of points of K on ``L``."""
    table = digit_table()
    states = line_states(L)
    allowed = set(states)
    edges = []
    for s in states:
        for i, b in enumerate(table):
            t = L.p * b.value.re + L.q * b.value.im - 4 * s
            if t in allowed:
                edges.append((s, i, t))
    A = BuchiAutomaton.build(states, table, edges, [-L.r], None, name=f"K ∩ {L}")
    return trim(A) if trimmed else A


# Base alpha boundary automaton: (src, label, dst), all states initial and terminal.
BOUNDARY_EDGES = (
    ("g2", 1, "g1"),
    ("g1", 0, "g3"),
    ("g3", 0, "g2"),
    ("g3", 1, "g2"),
    ("g3", 0, "g4"),
    ("g4", 1, "g3"),
    ("g4", 0, "g5"),
    ("g4", 1, "g5"),
    ("g5", 0, "g6"),
    ("g6", 1, "g4"),
)
BOUNDARY_STATES = ("g1", "g2", "g3", "g4", "g5", "g6")


def boundary_automaton_alpha() -> BuchiAutomaton:
    """Binary-digit automaton recognising the expansions of boundary points of K."""
    return BuchiAutomaton.build(BOUNDARY_STATES, (0, 1), BOUNDARY_EDGES,
                                BOUNDARY_STATES, BOUNDARY_STATES, name="boundary (base alpha)")


def alpha_paths(G: BuchiAutomaton, length: int):
    """Yield ``(src, labels, dst)`` for every path of the given length."""
    succ = G.successors
    for src in G.states:
        stack = [(src, ())]
        while stack:
            s, word = stack.pop()
            if len(word) == length:
                yield src, word, s
                continue
            for a, t in succ[s]:
                stack.append((t, word + (G.alphabet[a],)))


def boundary_automaton_base4() -> BuchiAutomaton:
    """Fourth power of the binary boundary automaton, relabelled by digit blocks."""
    G = boundary_automaton_alpha()
    table = digit_table()
    edges = []
    for src, word, dst in alpha_paths(G, 4):
        edges.append((src, int("".join(map(str, word)), 2), dst))
    if len(set(edges)) != len(edges):
        raise AssertionError("two length-4 paths share endpoints and labels")
    return BuchiAutomaton.build(G.states, table, edges, G.initial, G.terminal,
                                name="boundary (base -4)")


def boundary_line_automaton(L: LineParams) -> BuchiAutomaton:
    """Trimmed product automaton describing the boundary of K intersected with ``L``."""
    A = product(build_line_automaton(L), boundary_automaton_base4(), name=f"∂K ∩ {L}")
    return trim(A)


def brute_force_prefixes(L: LineParams, n: int) -> set[tuple[int, ...]]:
    """Length-``n`` prefixes (as digit-block indices) found by direct search on the recursion.

    Independent of the automaton code: a word survives when every state after
    the start stays within ``c(p, q)`` and the final state still has a bounded
    continuation long enough to close a cycle.
    """
    table = digit_table()
    weights = [L.p * b.value.re + L.q * b.value.im for b in table]
    c = L.bound
    horizon = 2 * math.floor(c) + 2
    live: dict = {}

    def completable(s, k):
        # a bounded path of ``horizon`` steps must revisit a state, so it extends forever
        if k == 0:
            return True
        key = (s, k)
        if key not in live:
            live[key] = any(abs(w - 4 * s) <= c and completable(w - 4 * s, k - 1) for w in weights)
        return live[key]

    found = set()
    stack = [(-L.r, ())]
    while stack:
        s, word = stack.pop()
        if len(word) == n:
            if completable(s, horizon):
                found.add(word)
            continue
        for i, w in enumerate(weights):
            t = w - 4 * s
            if abs(t) <= c:
                stack.append((t, word + (i,)))
    return found


def brute_force_prefix_layers(L: LineParams, n: int) -> list[np.ndarray]:
    """Vectorised :func:`brute_force_prefixes` for every depth ``0..n`` in one pass.

    The word ``(i_1, ..., i_k)`` is encoded as the integer with base-16 digits
    ``i_1 ... i_k``; each layer comes back sorted.
    """
    table = digit_table()
    weights = np.array([L.p * b.value.re + L.q * b.value.im for b in table], dtype=np.int64)
    cmax = math.floor(L.bound)  # integer states: |s| <= c iff |s| <= floor(c)
    horizon = 2 * cmax + 2

    def step_alive(states, alive):
        nxt = weights[None, :] - 4 * states[:, None]
        idx = np.clip(nxt + cmax, 0, 2 * cmax)
        return ((np.abs(nxt) <= cmax) & alive[idx]).any(axis=1)

    # alive[s + cmax]: a bounded path of k more steps leaves s
    span = np.arange(-cmax, cmax + 1, dtype=np.int64)
    alive = np.ones(2 * cmax + 1, dtype=bool)
    for _ in range(horizon - 1):
        alive = step_alive(span, alive)
    before_last = alive
    alive = step_alive(span, alive)

    start = np.array([-L.r], dtype=np.int64)
    layers = [np.zeros(int(step_alive(start, before_last)[0]), dtype=np.int64)]
    codes, states = np.zeros(1, dtype=np.int64), start
    for _ in range(n):
        nxt = weights[None, :] - 4 * states[:, None]
        rows, cols = np.nonzero(np.abs(nxt) <= cmax)
        codes = codes[rows] * 16 + cols
        states = nxt[rows, cols]
        layers.append(np.sort(codes[alive[states + cmax]]))
    return layers


def all_small_lines(bound: int) -> list[LineParams]:
    """Distinct normalized lines with ``|p|, |q|, |r| <= bound``."""
    seen = set()
    for p, q, r in _cartesian(range(-bound, bound + 1), repeat=3):
        if p == 0 and q == 0:
            continue
        seen.add(normalize_line(p, q, r))
    return sorted(seen, key=lambda L: (L.p, L.q, L.r))
