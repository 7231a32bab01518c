"""Exact arithmetic for the base ``-1+i`` number system and its base ``-4`` recoding.

Every point of the twin dragon is ``sum d_k / alpha**k`` with ``d_k`` in {0, 1}
and ``alpha = -1+i``.  Because ``alpha**4 == -4``, grouping four binary digits
gives one digit of a base ``-4`` expansion over a 16-element complex digit set.

Digit sequences are indexed from 1 (the first digit is the most significant
fractional digit) throughout the package.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class GaussianInt:
    re: int
    im: int

    def __post_init__(self):
        if not (isinstance(self.re, int) and isinstance(self.im, int)):
            raise TypeError(f"GaussianInt needs integer parts, got {self.re!r}, {self.im!r}")

    @classmethod
    def coerce(cls, value) -> "GaussianInt":
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, DigitBlock):
            return value.value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, complex):
            re, im = value.real, value.imag
            if re != int(re) or im != int(im):
                raise ValueError(f"{value!r} is not a Gaussian integer")
            return cls(int(re), int(im))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(*value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    def __add__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianInt.coerce(other) - self

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers leave the Gaussian integers")
        result = GaussianInt(1, 0)
        for _ in range(n):
            result = result * self
        return result

    def __complex__(self):
        return complex(self.re, self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def exact_div(self, other) -> "GaussianInt":
        """Divide, raising ``ValueError`` unless the quotient is a Gaussian integer."""
        other = GaussianInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * other.conjugate()
        if num.re % n or num.im % n:
            raise ValueError(f"{self} is not divisible by {other}")
        return GaussianInt(num.re // n, num.im // n)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"{self.re}{sign}{'' if mag == 1 else mag}i"


ALPHA = GaussianInt(-1, 1)
BASE = -4  # ALPHA ** 4


@dataclass(frozen=True)
class DigitBlock:
    """One base -4 digit together with the four binary digits it encodes."""

    value: GaussianInt
    bits: tuple[int, int, int, int]

    @property
    def index(self) -> int:
        """Position in the table, i.e. the bits read as a binary number."""
        return int("".join(map(str, self.bits)), 2)

    @property
    def word(self) -> str:
        return "".join(map(str, self.bits))

    def __str__(self):
        return str(self.value)


def _block_value(bits: Sequence[int]) -> GaussianInt:
    value = GaussianInt(0, 0)
    for d in bits:
        value = value * ALPHA + d
    return value


def _build_table() -> tuple[DigitBlock, ...]:
    table = []
    for n in range(16):
        bits = tuple(int(c) for c in format(n, "04b"))
        table.append(DigitBlock(_block_value(bits), bits))
    return tuple(table)


_TABLE: tuple[DigitBlock, ...] = _build_table()


def digit_table() -> tuple[DigitBlock, ...]:
    """The 16 digit blocks ordered ``[0000], [0001], ..., [1111]``."""
    return _TABLE


def digit_values() -> tuple[GaussianInt, ...]:
    return tuple(b.value for b in _TABLE)


def block_for_value(value) -> DigitBlock:
    value = GaussianInt.coerce(value)
    for block in _TABLE:
        if block.value == value:
            return block
    raise KeyError(f"{value} is not a base -4 digit")


def block_for_bits(bits: str | Sequence[int]) -> DigitBlock:
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    if len(bits) != 4:
        raise ValueError("a digit block has exactly four binary digits")
    return _TABLE[int("".join(map(str, bits)), 2)]


@contextlib.contextmanager
def digit_table_override(values: Sequence) -> Iterator[None]:
    """Temporarily replace the block values (bits keep their order).

    Only meant for negative-control tests; everything built inside the block
    sees the replaced table.
    """
    global _TABLE
    if len(values) != 16:
        raise ValueError("need 16 digit values")
    saved = _TABLE
    _TABLE = tuple(DigitBlock(GaussianInt.coerce(v), b.bits) for v, b in zip(values, saved))
    try:
        yield
    finally:
        _TABLE = saved


def alpha_expand(g) -> str:
    """Base ``-1+i`` expansion of a Gaussian integer, most significant digit first.

    Zero expands to the empty string.
    """
    g = GaussianInt.coerce(g)
    digits = []
    while g != GaussianInt(0, 0):
        d = (g.re + g.im) % 2
        digits.append(str(d))
        g = (g - d).exact_div(ALPHA)
    return "".join(reversed(digits))


def alpha_eval(word: str | Sequence[int]) -> GaussianInt:
    """Inverse of :func:`alpha_expand` (Horner evaluation in base ``-1+i``)."""
    return _block_value([int(c) for c in word])


def _point(values: Iterable) -> tuple[Fraction, Fraction]:
    x = y = Fraction(0)
    scale = Fraction(1)
    for v in values:
        v = GaussianInt.coerce(v)
        scale /= BASE
        x += v.re * scale
        y += v.im * scale
    return x, y


def eval_prefix(blocks: Iterable) -> tuple[Fraction, Fraction]:
    """Exact ``(x, y)`` for ``sum_{k=1..n} b_k (-4)**-k``."""
    return _point(blocks)


def eval_periodic(preperiod: Sequence, period: Sequence) -> tuple[Fraction, Fraction]:
    """Exact value of the eventually periodic expansion ``preperiod period period ...``."""
    if len(period) == 0:
        raise ValueError("period must be nonempty")
    x0, y0 = _point(preperiod)
    px, py = _point(period)
    shift = Fraction(1, BASE ** len(preperiod))
    ratio = 1 / (1 - Fraction(1, BASE ** len(period)))
    return x0 + shift * px * ratio, y0 + shift * py * ratio


def tail_bound(n: int) -> float:
    """Upper bound on ``|sum_{k>n} b_k (-4)**-k|`` over all digit sequences."""
    biggest = max(abs(complex(v)) for v in digit_values())
    return biggest / 3 * 4.0 ** (-n)
