import json

import numpy as np
import pytest

from twindragon import buchi, lines
from twindragon.buchi import BuchiAutomaton, Cardinality


def auto(edges, initial=("a",), states=None, alphabet=(0, 1), terminal=None):
    states = states or {s for e in edges for s in (e[0], e[2])} | set(initial)
    return BuchiAutomaton.build(states, alphabet, edges, initial, terminal)


def universal(alphabet):
    return BuchiAutomaton.build(["u"], alphabet, [("u", i, "u") for i in range(len(alphabet))], ["u"])


def test_build_rejects_unknown_state():
    with pytest.raises(ValueError):
        BuchiAutomaton.build(["a"], (0,), [("a", 0, "b")], ["a"])


def test_product_with_universal_is_identity():
    B = lines.boundary_automaton_base4()
    P = buchi.trim(buchi.product(universal(B.alphabet), B))
    assert len(P.states) == len(B.states)
    assert len(P.edges) == len(B.edges)
    assert {(s[1], a, t[1]) for s, a, t in P.edges} == set(B.edges)


def test_product_with_edgeless_is_empty():
    A = auto([], initial=("a",))
    B = universal((0, 1))
    assert buchi.trim(buchi.product(A, B)).is_empty()


def test_product_needs_an_all_terminal_factor():
    A = auto([("a", 0, "a")], terminal=())
    with pytest.raises(buchi.PreconditionError):
        buchi.product(A, A)


def test_trim_removes_dead_ends():
    A = auto([("a", 0, "b"), ("a", 1, "c"), ("c", 0, "c")])
    T = buchi.trim(A)
    assert set(T.states) == {"a", "c"}
    assert buchi.is_trimmed(T)
    assert buchi.trim(auto([], initial=("a",))).is_empty()


def test_trim_needs_all_terminal():
    with pytest.raises(buchi.PreconditionError):
        buchi.trim(auto([("a", 0, "a")], terminal=()))


def test_scc_two_cycle():
    A = auto([("a", 0, "b"), ("b", 0, "a")])
    scc = buchi.scc_decompose(A)
    assert len(scc.components) == 1
    assert scc.matrices[0].tolist() == [[0, 1], [1, 0]]


def test_scc_of_fifth_line_boundary():
    B = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
    scc = buchi.scc_decompose(B)
    assert [[s[1] for s in c] for c in scc.components] == [["g3", "g4"]]
    assert scc.matrices[0].tolist() == [[1, 2], [2, 1]]


def test_scc_dag_gives_zero_singletons():
    A = auto([("a", 0, "b"), ("b", 1, "c"), ("a", 1, "c")])
    scc = buchi.scc_decompose(A)
    assert all(len(c) == 1 for c in scc.components)
    assert all(not m.any() for m in scc.matrices)
    assert not any(scc.is_cyclic(i) for i in range(len(scc.components)))
    # topological order: sources first
    order = [c[0] for c in scc.components]
    assert order.index("a") < order.index("b") < order.index("c")


def test_tarjan_deep_chain_is_iterative():
    n = 20000
    comps = buchi.tarjan(list(range(n)), lambda v: [v + 1] if v + 1 < n else [])
    assert len(comps) == n


@pytest.mark.parametrize("edges, expected", [
    ([], "finite(0)"),
    ([("a", 0, "a")], "finite(1)"),
    ([("a", 0, "b"), ("a", 1, "b"), ("b", 0, "b")], "finite(2)"),
    ([("a", 0, "a"), ("a", 1, "b"), ("b", 1, "b")], "countable"),
    ([("a", 0, "a"), ("a", 1, "a")], "uncountable"),
])
def test_cardinality(edges, expected):
    A = buchi.trim(auto(edges))
    assert str(buchi.classify_cardinality(A)) == expected


def test_cardinality_merges_equal_words_from_different_runs():
    # two runs, one word: subset construction must not double count
    A = auto([("a", 0, "b"), ("a", 0, "c"), ("b", 0, "b"), ("c", 0, "c")])
    assert buchi.classify_cardinality(A) == Cardinality("finite", 1)


def test_cardinality_of_known_sections():
    B0 = lines.boundary_line_automaton(lines.normalize_line(1, 0, 0))
    assert str(buchi.classify_cardinality(B0)) == "finite(2)"
    B5 = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
    assert str(buchi.classify_cardinality(B5)) == "uncountable"


def test_finite_words_and_accepts():
    A = buchi.trim(auto([("a", 0, "b"), ("a", 1, "b"), ("b", 0, "b")]))
    words = buchi.finite_words(A)
    assert words == [((), (0,)), ((1,), (0,))]
    for u, v in words:
        assert buchi.accepts(A, u, v)
    assert not buchi.accepts(A, (), (1,))


def test_canonical_word():
    assert buchi.canonical_word((1, 0), (1, 0)) == ((), (1, 0))
    assert buchi.canonical_word((), (2, 2, 2)) == ((), (2,))
    assert buchi.canonical_word((5, 1), (0, 1)) == ((5,), (1, 0))


def test_prefixes():
    A = lines.build_line_automaton(lines.normalize_line(5, 0, -1))
    assert buchi.enumerate_prefixes(A, 0) == {()}
    one = buchi.enumerate_prefixes(A, 1)
    assert {str(w[0]) for w in one} == {"1-2i", "1", "1+i", "1+3i"}
    V = lines.build_line_automaton(lines.normalize_line(1, 0, 0))
    two = buchi.enumerate_prefixes(V, 2)
    assert len(two) == 16
    assert all(b.value.re == 0 for w in two for b in w)


def test_prefix_code_layers_agree_with_sets():
    A = lines.boundary_line_automaton(lines.normalize_line(3, 1, 1))
    layers = buchi.prefix_code_layers(A, 4)
    for n, layer in enumerate(layers):
        words = buchi.enumerate_prefixes(A, n)
        codes = sorted(sum(b.index * 16 ** (n - 1 - k) for k, b in enumerate(w)) for w in words)
        assert layer.tolist() == codes


def test_export_dot_and_json_are_stable():
    B = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
    dot = buchi.export(B, "dot")
    assert dot == buchi.export(B, "graph")
    assert dot.count("->") == 6
    doc = json.loads(buchi.export(B, "json"))
    assert len(doc["states"]) == 2 and len(doc["edges"]) == 6
    assert doc["alphabet"][5] == {"re": 1, "im": -2}


def test_export_boundary_alpha():
    G = lines.boundary_automaton_alpha()
    dot = buchi.export(G, "dot")
    assert dot.count("peripheries=2") == 6
    # ten labelled edges, eight distinct arrows
    assert dot.count("->") == 10
    assert len({(s, t) for s, _, t in G.edges}) == 8


def test_export_empty():
    E = BuchiAutomaton.build([], (0,), [], [])
    assert json.loads(buchi.export(E, "json"))["states"] == []
    with pytest.raises(ValueError):
        buchi.export(E, "svg")


def test_relabel_merges():
    A = auto([("a", 0, "a"), ("a", 1, "a")])
    R = A.relabel(lambda x: 0, alphabet=(0,))
    assert len(R.edges) == 1
