from fractions import Fraction as F

import pytest

from twindragon import cns
from twindragon.cns import GaussianInt


def test_table_is_bijection_onto_16_digits():
    table = cns.digit_table()
    assert len(table) == 16
    assert len({b.value for b in table}) == 16
    assert [b.index for b in table] == list(range(16))


@pytest.mark.parametrize("bits, value", [
    ("0000", 0), ("1011", 2 + 3j), ("0101", 1 - 2j), ("0100", -2j), ("1101", 3),
])
def test_block_values(bits, value):
    assert complex(cns.block_for_bits(bits).value) == value


def test_block_value_is_horner_in_alpha():
    a = cns.ALPHA
    for b in cns.digit_table():
        d1, d2, d3, d4 = b.bits
        assert b.value == a ** 3 * d1 + a ** 2 * d2 + a * d3 + d4


def test_alpha_powers():
    assert cns.ALPHA ** 2 == GaussianInt(0, -2)
    assert cns.ALPHA ** 4 == GaussianInt(cns.BASE, 0)


def test_block_lookup_errors():
    with pytest.raises(KeyError):
        cns.block_for_value(5)
    with pytest.raises(ValueError):
        cns.block_for_bits("101")


@pytest.mark.parametrize("g, word", [(0, ""), (-1 + 1j, "10"), (3, "1101")])
def test_alpha_expand_examples(g, word):
    assert cns.alpha_expand(g) == word
    assert cns.alpha_eval(word) == GaussianInt.coerce(g)


def test_gaussian_int_rejects_non_integers():
    with pytest.raises((TypeError, ValueError)):
        GaussianInt.coerce(0.5)


def test_gaussian_str():
    assert str(GaussianInt(1, -2)) == "1-2i"
    assert str(GaussianInt(0, 1)) == "i"
    assert str(GaussianInt(2, 3)) == "2+3i"


def test_eval_prefix():
    assert cns.eval_prefix([]) == (0, 0)
    assert cns.eval_prefix([2 + 3j]) == (F(-1, 2), F(-3, 4))


def test_alternating_partial_sums_approach_minimum():
    target = F(-13, 15)
    errs = [abs(cns.eval_prefix([3, -1] * k)[0] - target) for k in range(1, 6)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < cns.tail_bound(10)


@pytest.mark.parametrize("period, x", [([3, -1], F(-13, 15)), ([-1, 3], F(7, 15)), ([1], F(-1, 5))])
def test_eval_periodic(period, x):
    assert cns.eval_periodic([], period) == (x, 0)


def test_eval_periodic_empty_period():
    with pytest.raises(ValueError):
        cns.eval_periodic([1], [])


def test_override_restores_table():
    original = cns.digit_table()
    with cns.digit_table_override([b.value for b in reversed(original)]):
        assert cns.digit_table()[0].value == original[-1].value
    assert cns.digit_table() == original
