"""Büchi automata whose states are all terminal.

Every automaton in this package (line automata, boundary automata and their
products) has ``terminal == states``.  For such automata an infinite word is
accepted exactly when it labels an infinite run from an initial state, which
is what all algorithms below rely on.  General Büchi acceptance is not
implemented.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as _cartesian
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

State = Hashable
Edge = tuple[State, int, State]  # (src, letter index, dst)


def state_key(s):
    """Deterministic sort key for mixed state ids (ints, strings, tuples, frozensets)."""
    if isinstance(s, bool):
        return (0, int(s))
    if isinstance(s, int):
        return (0, s)
    if isinstance(s, str):
        return (1, s)
    if isinstance(s, tuple):
        return (2, tuple(state_key(x) for x in s))
    if isinstance(s, frozenset):
        return (3, tuple(sorted(state_key(x) for x in s)))
    return (4, repr(s))


def state_name(s) -> str:
    if isinstance(s, tuple):
        return "(" + ",".join(state_name(x) for x in s) + ")"
    if isinstance(s, frozenset):
        return "{" + ",".join(state_name(x) for x in sorted(s, key=state_key)) + "}"
    return str(s)


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class BuchiAutomaton:
    states: tuple
    alphabet: tuple
    edges: tuple[Edge, ...]
    initial: frozenset
    terminal: frozenset
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, states: Iterable, alphabet: Sequence, edges: Iterable[Edge],
              initial: Iterable, terminal: Iterable | None = None, name: str = ""):
        states = tuple(sorted(set(states), key=state_key))
        known = set(states)
        alphabet = tuple(alphabet)
        clean = set()
        for src, letter, dst in edges:
            if src not in known or dst not in known:
                raise ValueError(f"edge {src!r} -> {dst!r} uses an undeclared state")
            if not 0 <= letter < len(alphabet):
                raise ValueError(f"letter index {letter} outside the alphabet")
            clean.add((src, letter, dst))
        initial = frozenset(initial)
        terminal = frozenset(known if terminal is None else terminal)
        if not initial <= known or not terminal <= known:
            raise ValueError("initial and terminal states must be declared states")
        ordered = tuple(sorted(clean, key=lambda e: (state_key(e[0]), e[1], state_key(e[2]))))
        return cls(states, alphabet, ordered, initial, terminal, name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<BuchiAutomaton{label}: {len(self.states)} states, {len(self.edges)} edges, "
                f"{len(self.initial)} initial>")

    @property
    def all_terminal(self) -> bool:
        return self.terminal == frozenset(self.states)

    def is_empty(self) -> bool:
        return not self.states

    @cached_property
    def successors(self) -> dict:
        """``state -> list of (letter index, dst)``."""
        out = {s: [] for s in self.states}
        for src, letter, dst in self.edges:
            out[src].append((letter, dst))
        return out

    @cached_property
    def delta(self) -> dict:
        """``(state, letter index) -> tuple of dst``."""
        table = defaultdict(list)
        for src, letter, dst in self.edges:
            table[src, letter].append(dst)
        return {k: tuple(v) for k, v in table.items()}

    def letter_index(self, letter) -> int:
        return self.alphabet.index(letter)

    def step(self, current: Iterable, letter: int) -> frozenset:
        """Set of states reachable from ``current`` by one letter (given as index)."""
        nxt = set()
        for s in current:
            nxt.update(self.delta.get((s, letter), ()))
        return frozenset(nxt)

    def relabel(self, fn: Callable, alphabet: Sequence | None = None) -> "BuchiAutomaton":
        """Map every letter through ``fn``; parallel edges that collide are merged."""
        if alphabet is None:
            alphabet = sorted({fn(a) for a in self.alphabet}, key=state_key)
        alphabet = tuple(alphabet)
        edges = [(s, alphabet.index(fn(self.alphabet[a])), t) for s, a, t in self.edges]
        return BuchiAutomaton.build(self.states, alphabet, edges, self.initial, self.terminal,
                                    name=self.name)


def _require_all_terminal(A: BuchiAutomaton, what: str):
    if not A.all_terminal:
        raise PreconditionError(f"{what} needs an automaton whose states are all terminal")


def product(A: BuchiAutomaton, B: BuchiAutomaton, name: str = "") -> BuchiAutomaton:
    """Synchronous product accepting ``L(A) & L(B)``.

    Only valid when one factor has all states terminal.
    """
    if A.alphabet != B.alphabet:
        raise ValueError("automata must share the alphabet")
    if not (A.all_terminal or B.all_terminal):
        raise PreconditionError("one of the automata must have all states terminal")
    states = list(_cartesian(A.states, B.states))
    b_by_letter = defaultdict(list)
    for src, letter, dst in B.edges:
        b_by_letter[letter].append((src, dst))
    edges = []
    for a, letter, a2 in A.edges:
        for b, b2 in b_by_letter[letter]:
            edges.append(((a, b), letter, (a2, b2)))
    initial = list(_cartesian(sorted(A.initial, key=state_key), sorted(B.initial, key=state_key)))
    terminal = list(_cartesian(sorted(A.terminal, key=state_key), sorted(B.terminal, key=state_key)))
    return BuchiAutomaton.build(states, A.alphabet, edges, initial, terminal,
                                name=name or f"{A.name} x {B.name}".strip())


def tarjan(nodes: Sequence, neighbours: Callable[[State], Iterable[State]]) -> list[list]:
    """Strongly connected components, sinks first (iterative Tarjan)."""
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    result = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(neighbours(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(neighbours(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result


def _targets(A: BuchiAutomaton):
    succ = A.successors
    return lambda s: [t for _, t in succ[s]]


def _cyclic_states(A: BuchiAutomaton) -> set:
    succ = A.successors
    cyclic = set()
    for comp in tarjan(A.states, _targets(A)):
        if len(comp) > 1 or any(t == comp[0] for _, t in succ[comp[0]]):
            cyclic.update(comp)
    return cyclic


def _reach(starts: Iterable, neighbours: Callable) -> set:
    seen = set(starts)
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for t in neighbours(s):
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def trim(A: BuchiAutomaton) -> BuchiAutomaton:
    """Keep only states lying on an infinite run from an initial state."""
    _require_all_terminal(A, "trim")
    forward = _reach(A.initial, _targets(A))
    preds = defaultdict(list)
    for s, _, t in A.edges:
        preds[t].append(s)
    backward = _reach(_cyclic_states(A), lambda s: preds[s])
    keep = forward & backward
    edges = [e for e in A.edges if e[0] in keep and e[2] in keep]
    return BuchiAutomaton.build(keep, A.alphabet, edges, A.initial & keep, keep, name=A.name)


def is_trimmed(A: BuchiAutomaton) -> bool:
    return A.all_terminal and len(trim(A).states) == len(A.states)


@dataclass(frozen=True)
class SccDecomposition:
    """SCC partition in topological order (sources first) with per-component incidence matrices."""

    components: tuple[tuple, ...]
    condensation: frozenset  # (i, j) component indices with an edge i -> j, i != j
    matrices: tuple[np.ndarray, ...]
    component_of: dict

    def is_cyclic(self, i: int) -> bool:
        return bool(self.matrices[i].any())

    def reachable_from(self, starts: Iterable) -> set[int]:
        """Component indices reachable from the components of ``starts``."""
        succ = defaultdict(list)
        for i, j in self.condensation:
            succ[i].append(j)
        return _reach({self.component_of[s] for s in starts}, lambda i: succ[i])


def scc_decompose(A: BuchiAutomaton) -> SccDecomposition:
    comps = [tuple(sorted(c, key=state_key)) for c in tarjan(A.states, _targets(A))]
    comps.reverse()
    component_of = {s: i for i, c in enumerate(comps) for s in c}
    position = {s: c.index(s) for c in comps for s in c}
    matrices = [np.zeros((len(c), len(c)), dtype=np.int64) for c in comps]
    condensation = set()
    for s, _, t in A.edges:
        i, j = component_of[s], component_of[t]
        if i == j:
            matrices[i][position[s], position[t]] += 1
        else:
            condensation.add((i, j))
    return SccDecomposition(tuple(comps), frozenset(condensation), tuple(matrices), component_of)


@dataclass(frozen=True)
class Cardinality:
    kind: str  # "finite", "countable" or "uncountable"
    count: int | None = None

    def __str__(self):
        return f"finite({self.count})" if self.kind == "finite" else self.kind


FINITE, COUNTABLE, UNCOUNTABLE = "finite", "countable", "uncountable"


def determinize(A: BuchiAutomaton) -> BuchiAutomaton:
    """Subset construction over nonempty subsets reachable from ``A.initial``.

    For a trimmed all-terminal automaton the result accepts the same
    omega-language (every prefix of the word has a run, hence by König's lemma
    an infinite one), and distinct runs carry distinct words.
    """
    _require_all_terminal(A, "determinize")
    if not A.initial:
        return BuchiAutomaton.build([], A.alphabet, [], [], [], name=A.name)
    start = frozenset(A.initial)
    seen = {start}
    queue = deque([start])
    edges = []
    letters = range(len(A.alphabet))
    while queue:
        S = queue.popleft()
        for a in letters:
            T = A.step(S, a)
            if not T:
                continue
            edges.append((S, a, T))
            if T not in seen:
                seen.add(T)
                queue.append(T)
    return BuchiAutomaton.build(seen, A.alphabet, edges, [start], None, name=A.name)


def classify_cardinality(A: BuchiAutomaton) -> Cardinality:
    """Cardinality of the omega-language of a trimmed all-terminal automaton.

    Works on the subset automaton so that runs and words are in bijection:
    uncountable iff a reachable SCC is not a simple cycle, countably infinite
    iff a cycle can leave its SCC, otherwise the number of runs.
    """
    _require_all_terminal(A, "classify_cardinality")
    if not is_trimmed(A):
        raise PreconditionError("classify_cardinality needs a trimmed automaton")
    D = determinize(A)
    if D.is_empty():
        return Cardinality(FINITE, 0)
    scc = scc_decompose(D)
    succ = D.successors
    for i, comp in enumerate(scc.components):
        if not scc.is_cyclic(i):
            continue
        inner = set(comp)
        for s in comp:
            out = succ[s]
            if sum(1 for _, t in out if t in inner) >= 2:
                return Cardinality(UNCOUNTABLE)
            if any(t not in inner for _, t in out):
                return Cardinality(COUNTABLE)
    # every cyclic SCC is a closed simple cycle; count paths into them
    memo: dict = {}

    def count(s):
        if s in memo:
            return memo[s]
        if scc.is_cyclic(scc.component_of[s]):
            memo[s] = 1
        else:
            memo[s] = sum(count(t) for _, t in succ[s])
        return memo[s]

    # the transient part is acyclic, so the recursion depth is bounded by its size
    for s in reversed([s for c in scc.components for s in c]):
        count(s)
    return Cardinality(FINITE, sum(count(s) for s in D.initial))


def finite_words(A: BuchiAutomaton) -> list[tuple[tuple, tuple]]:
    """All accepted words as ``(preperiod, period)`` letter tuples, in canonical form.

    Only meaningful when :func:`classify_cardinality` reports a finite language.
    """
    card = classify_cardinality(A)
    if card.kind != FINITE:
        raise PreconditionError(f"language is {card}, not finite")
    D = determinize(A)
    scc = scc_decompose(D)
    succ = D.successors
    words = set()

    def walk(s, prefix):
        if scc.is_cyclic(scc.component_of[s]):
            cycle, t = [], s
            while True:
                (letter, t), = succ[t]
                cycle.append(letter)
                if t == s:
                    break
            words.add(canonical_word(prefix, tuple(cycle)))
            return
        for letter, t in succ[s]:
            walk(t, prefix + (letter,))

    for s in D.initial:
        walk(s, ())
    return sorted(((tuple(A.alphabet[a] for a in u), tuple(A.alphabet[a] for a in v))
                   for u, v in words), key=repr)


def canonical_word(preperiod: tuple, period: tuple) -> tuple[tuple, tuple]:
    """Shortest ``(u, v)`` with ``u v^omega`` equal to the given word."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            period = period[:d]
            break
    u = list(preperiod)
    v = list(period)
    while u and u[-1] == v[-1]:
        u.pop()
        v = [v[-1]] + v[:-1]
    return tuple(u), tuple(v)


def accepts(A: BuchiAutomaton, preperiod: Sequence, period: Sequence) -> bool:
    """Whether the eventually periodic word ``preperiod period^omega`` is accepted.

    Letters are given as alphabet entries.  ``A`` must be trimmed and all
    terminal: then a word is accepted as soon as each of its prefixes has a run.
    """
    _require_all_terminal(A, "accepts")
    if not period:
        raise ValueError("period must be nonempty")
    pre = [A.letter_index(x) for x in preperiod]
    per = [A.letter_index(x) for x in period]
    current = frozenset(A.initial)
    for a in pre:
        current = A.step(current, a)
    seen = set()
    while current and current not in seen:
        seen.add(current)
        for a in per:
            current = A.step(current, a)
            if not current:
                return False
    return bool(current)


def enumerate_prefixes(A: BuchiAutomaton, n: int) -> set[tuple]:
    """All length-``n`` prefixes of accepted words (letters as alphabet entries).

    ``A`` must be trimmed: then every finite path from an initial state extends
    to an infinite run.
    """
    layer = {(): frozenset(A.initial)} if A.initial else {}
    for _ in range(n):
        nxt = {}
        for word, current in layer.items():
            for a in range(len(A.alphabet)):
                T = A.step(current, a)
                if T:
                    nxt[word + (a,)] = T
        layer = nxt
    return {tuple(A.alphabet[a] for a in w) for w in layer}


def prefix_code_layers(A: BuchiAutomaton, n: int) -> list[np.ndarray]:
    """Length-``0..n`` prefixes of a trimmed automaton as sorted base-16 integer codes.

    Same language as :func:`enumerate_prefixes`, vectorised: letter indices
    must be below 16 and ``n`` at most 15.
    """
    if len(A.alphabet) > 16 or n > 15:
        raise ValueError("codes need at most 16 letters and depth <= 15")
    pos = {s: i for i, s in enumerate(A.states)}
    src = np.array([pos[e[0]] for e in A.edges], dtype=np.int64)
    letter = np.array([e[1] for e in A.edges], dtype=np.int64)
    dst = np.array([pos[e[2]] for e in A.edges], dtype=np.int64)
    order = np.argsort(src, kind="stable")
    src, letter, dst = src[order], letter[order], dst[order]
    start = np.searchsorted(src, np.arange(len(A.states) + 1))
    degree = np.diff(start)

    states = np.array(sorted(pos[s] for s in A.initial), dtype=np.int64)
    codes = np.zeros(len(states), dtype=np.int64)
    layers = [np.unique(codes)]
    for _ in range(n):
        reps = degree[states]
        first = np.repeat(start[states], reps)
        offset = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
        e = first + offset
        codes = np.repeat(codes, reps) * 16 + letter[e]
        states = dst[e]
        nstates = max(len(A.states), 1)
        if 16 ** n * nstates < 2 ** 62:
            key = np.unique(codes * nstates + states)
            codes, states = key // nstates, key % nstates
        else:
            pairs = np.unique(np.stack([codes, states]), axis=1)
            codes, states = pairs[0], pairs[1]
        layers.append(np.unique(codes))
    return layers


def prefix_states(A: BuchiAutomaton, n: int) -> dict[tuple, frozenset]:
    """Like :func:`enumerate_prefixes` but keeps letter indices and the reached state sets."""
    layer = {(): frozenset(A.initial)} if A.initial else {}
    for _ in range(n):
        nxt = {}
        for word, current in layer.items():
            for a in range(len(A.alphabet)):
                T = A.step(current, a)
                if T:
                    nxt[word + (a,)] = T
        layer = nxt
    return layer


def _letter_json(letter):
    if hasattr(letter, "value"):
        letter = letter.value
    if hasattr(letter, "re"):
        return {"re": letter.re, "im": letter.im}
    return {"re": int(letter), "im": 0}


def export(A: BuchiAutomaton, fmt: str = "dot") -> str:
    """Serialize as Graphviz ``dot`` or as a ``json`` document; output is byte-stable."""
    index = {s: i for i, s in enumerate(A.states)}
    if fmt in ("json", "structured"):
        doc = {
            "name": A.name,
            "states": [state_name(s) for s in A.states],
            "alphabet": [_letter_json(a) for a in A.alphabet],
            "edges": [[index[s], a, index[t]] for s, a, t in A.edges],
            "initial": sorted(index[s] for s in A.initial),
            "terminal": sorted(index[s] for s in A.terminal),
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt not in ("dot", "graph"):
        raise ValueError(f"unknown export format {fmt!r}")
    lines = [f'digraph "{A.name}" {{' if A.name else "digraph {", "  rankdir=LR;"]
    for s in A.states:
        attrs = []
        if s in A.initial:
            attrs.append('initial="true"')
        if s in A.terminal:
            attrs.append('terminal="true"')
            attrs.append("peripheries=2")
        lines.append(f'  "{state_name(s)}" [{", ".join(attrs)}];')
    for s, a, t in A.edges:
        lines.append(f'  "{state_name(s)}" -> "{state_name(t)}" [label="{A.alphabet[a]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
