"""Spectral radii, characteristic polynomials and Hausdorff dimensions of GIFS attractors.

Every map in the graph-directed systems here is ``z -> (z + b) / -4``, so the
dimension of an attractor is ``log(beta) / log(4)`` with ``beta`` the largest
Perron root among its strongly connected components.  Roots are isolated on
the exact integer characteristic polynomial (Sturm bisection over
``Fraction``) rather than with a floating-point eigensolver.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .buchi import BuchiAutomaton, Cardinality, classify_cardinality, scc_decompose, state_name

ROOT_TOL = float(os.environ.get("TWINDRAGON_TOL", "1e-12"))
COMPARE_TOL = 1e-9


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients from the highest degree down."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[0] == 0:
            coeffs = coeffs[1:]
        object.__setattr__(self, "coeffs", coeffs or (0,))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[0] == 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        n = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - k
            mag = abs(c)
            body = "" if (mag == 1 and e > 0) else str(mag)
            if e >= 1:
                body += "x" if e == 1 else f"x^{e}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def rational_roots(self) -> list[Fraction]:
        """All rational roots, by the rational root test."""
        coeffs = list(self.coeffs)
        roots = []
        while coeffs and coeffs[-1] == 0:
            roots.append(Fraction(0))
            coeffs.pop()
        if len(coeffs) <= 1:
            return roots
        lead, const = abs(coeffs[0]), abs(coeffs[-1])
        trimmed = IntPolynomial(tuple(coeffs))
        for num in _divisors(const):
            for den in _divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if trimmed(cand) == 0 and cand not in roots:
                        roots.append(cand)
        return sorted(roots)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def char_poly(M) -> IntPolynomial:
    """Exact ``det(xI - M)`` by Faddeev-LeVerrier over Python integers.

    The divisions by ``k`` are exact because every coefficient is an integer.
    """
    A = [[int(v) for v in row] for row in np.asarray(M)]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    coeffs = [1]
    Mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # Mk <- A @ Mk + c_prev * I
        Mk = [[sum(A[i][l] * Mk[l][j] for l in range(n)) + (c_prev if i == j else 0)
               for j in range(n)] for i in range(n)]
        trace = sum(A[i][l] * Mk[l][i] for i in range(n) for l in range(n))
        if trace % k:
            raise ArithmeticError("non-exact division in Faddeev-LeVerrier")
        coeffs.append(-trace // k)
    return IntPolynomial(tuple(coeffs))


# -- exact polynomial helpers over Fraction (coefficients highest first) --

def _strip(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _polyrem(a: Sequence, b: Sequence) -> list:
    a = [Fraction(x) for x in a]
    b = _strip([Fraction(x) for x in b])
    while len(a) >= len(b) and any(a):
        factor = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= factor * b[i]
        a = a[1:]
    return _strip(a) if a else [Fraction(0)]


def _polydiv(a: Sequence, b: Sequence) -> list:
    a = [Fraction(x) for x in a]
    b = _strip([Fraction(x) for x in b])
    quot = []
    while len(a) >= len(b):
        factor = a[0] / b[0]
        quot.append(factor)
        for i in range(len(b)):
            a[i] -= factor * b[i]
        a = a[1:]
    return quot or [Fraction(0)]


def _polymul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polygcd(a: Sequence, b: Sequence) -> list:
    a, b = _strip(list(map(Fraction, a))), _strip(list(map(Fraction, b)))
    while any(b):
        a, b = b, _polyrem(a, b)
    return [c / a[0] for c in a]


def _derivative(p: Sequence) -> list:
    n = len(p) - 1
    return [c * (n - k) for k, c in enumerate(p[:-1])] or [0]


def _horner(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def squarefree_part(p: IntPolynomial) -> list[Fraction]:
    coeffs = [Fraction(c) for c in p.coeffs]
    if p.degree < 1:
        return coeffs
    g = _polygcd(coeffs, _derivative(coeffs))
    return _polydiv(coeffs, g)


def sturm_sequence(p: Sequence) -> list[list[Fraction]]:
    seq = [_strip(list(map(Fraction, p)))]
    seq.append(_strip(_derivative(seq[0])))
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        rem = _polyrem(seq[-2], seq[-1])
        if len(rem) == 1 and rem[0] == 0:
            break
        seq.append([-c for c in rem])
    return seq


def _sign_changes(seq, x) -> int:
    signs = [v for v in (_horner(p, x) for p in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def largest_real_root(p: IntPolynomial, lo, hi, tol: float = ROOT_TOL) -> Fraction | None:
    """Largest real root of ``p`` in ``(lo, hi]`` to within ``tol``; ``None`` if there is none.

    Returns an exact value whenever the root is an integer.
    """
    if p.degree < 1:
        return None
    sq = squarefree_part(p)
    seq = sturm_sequence(sq)
    lo, hi = Fraction(lo), Fraction(hi)
    if _horner(sq, hi) == 0:
        return hi
    v_hi = _sign_changes(seq, hi)
    if _sign_changes(seq, lo) - v_hi == 0:
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _horner(sq, mid) == 0 and _sign_changes(seq, mid) == v_hi:
            return mid
        if _sign_changes(seq, mid) - v_hi > 0:
            lo = mid
        else:
            hi = mid
    for k in range(math.floor(lo), math.ceil(hi) + 1):
        if lo < k <= hi and p(k) == 0:
            return Fraction(k)
    return (lo + hi) / 2


def perron_root(M, tol: float = ROOT_TOL) -> float:
    """Perron-Frobenius eigenvalue of a nonnegative integer matrix."""
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0 or not M.any():
        return 0.0
    if (M < 0).any():
        raise ValueError("matrix must be nonnegative")
    top = int(M.sum(axis=1).max())
    root = largest_real_root(char_poly(M), Fraction(-1, 2), top, tol)
    return float(root)


def _cubic_root_bisect(f, lo: float, hi: float, tol: float) -> float:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (f(hi) > 0):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class LambdaConstants:
    lam: float
    s: float
    target: float  # lam**4 / 4, the Perron root a line section would need for dimension s - 1


def lambda_constants(tol: float = 1e-14) -> LambdaConstants:
    """Real root of ``x^3 - x^2 - 2``, the boundary dimension and ``lambda^4 / 4``."""
    lam = _cubic_root_bisect(lambda x: x ** 3 - x ** 2 - 2, 1.0, 2.0, tol)
    return LambdaConstants(lam, math.log(lam) / math.log(math.sqrt(2)), lam ** 4 / 4)


LAMBDA_POLY = IntPolynomial((1, -1, 0, -2))
TARGET_POLY = IntPolynomial((4, -9, 2, -1))


def _reduce_mod_lambda(p: Sequence) -> list[Fraction]:
    return _polyrem(p, LAMBDA_POLY.coeffs)


def target_satisfies(poly: IntPolynomial = TARGET_POLY) -> bool:
    """Exact check that ``lambda^4 / 4`` is a root of ``poly`` (reduction modulo ``x^3 - x^2 - 2``)."""
    # poly(y^4 / 4) as a polynomial in y, highest degree first
    n = poly.degree
    expanded = [Fraction(0)] * (4 * n + 1)
    for k, c in enumerate(poly.coeffs):
        e = n - k
        expanded[4 * n - 4 * e] += Fraction(c, 4 ** e)
    rem = _reduce_mod_lambda(expanded)
    return all(c == 0 for c in rem)


def minimal_polynomial_of_target() -> IntPolynomial:
    """Derive the primitive integer minimal polynomial of ``lambda^4 / 4`` from scratch.

    Powers of ``t = lambda^4/4`` are written in the basis ``1, lambda, lambda^2``
    of ``Q(lambda)``; the first linear dependency among ``1, t, ..., t^k`` gives
    the minimal polynomial.
    """
    t = _reduce_mod_lambda([Fraction(1, 4), 0, 0, 0, 0])

    def vec(p):
        p = [Fraction(0)] * (3 - len(p)) + list(p)
        return p[::-1]  # coefficients of 1, lambda, lambda^2

    powers = [vec([Fraction(1)])]
    current = [Fraction(1)]
    for k in range(1, 4):
        current = _reduce_mod_lambda(_polymul(current, t))
        powers.append(vec(current))
        sol = _nullspace_vector(powers)
        if sol is not None:
            den = math.lcm(*(c.denominator for c in sol))
            ints = [int(c * den) for c in sol]
            g = math.gcd(*ints)
            ints = [v // g for v in ints][::-1]
            if ints[0] < 0:
                ints = [-v for v in ints]
            return IntPolynomial(tuple(ints))
    raise ArithmeticError("no dependency found up to degree 3")


def _nullspace_vector(columns: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero rational vector ``a`` with ``sum a_i columns[i] == 0``, or ``None``."""
    m = len(columns)
    rows = [[columns[j][i] for j in range(m)] for i in range(3)]
    pivots = []
    r = 0
    for col in range(m):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return None
    f = free[0]
    sol = [Fraction(0)] * m
    sol[f] = Fraction(1)
    for i, col in enumerate(pivots):
        sol[col] = -rows[i][f]
    return sol


@dataclass
class ComponentSpectrum:
    states: tuple
    matrix: np.ndarray
    poly: IntPolynomial
    perron: float


@dataclass
class DimensionReport:
    automaton: BuchiAutomaton
    components: list[ComponentSpectrum]
    beta: float | None
    dimension: float | None
    cardinality: Cardinality
    line: object = None
    dominant: ComponentSpectrum | None = None
    certificate: "Certificate | None" = field(default=None, repr=False)

    @property
    def empty(self) -> bool:
        return self.automaton.is_empty()

    @property
    def dimension_equals_s_minus_1(self) -> bool:
        if self.empty:
            return False
        return abs(self.beta - lambda_constants().target) <= COMPARE_TOL

    def to_dict(self) -> dict:
        A = self.automaton
        doc = {
            "line": None if self.line is None else [self.line.p, self.line.q, self.line.r],
            "automaton": A.name,
            "states": len(A.states),
            "edges": len(A.edges),
            "scc_sizes": [len(c.states) for c in self.components],
            "char_polys": [list(c.poly.coeffs) for c in self.components],
            "beta": None if self.beta is None else round(self.beta, 12),
            "dimension": None if self.dimension is None else round(self.dimension, 12),
            "empty": self.empty,
            "cardinality": str(self.cardinality),
            "dimension_equals_s_minus_1": self.dimension_equals_s_minus_1,
        }
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_dict()
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def hausdorff_dimension(A: BuchiAutomaton, line=None) -> DimensionReport:
    """Dimension of the attractor described by a trimmed all-terminal base -4 automaton."""
    card = classify_cardinality(A)
    if A.is_empty():
        return DimensionReport(A, [], None, None, card, line)
    scc = scc_decompose(A)
    reachable = scc.reachable_from(A.initial)
    comps = []
    for i in sorted(reachable):
        if not scc.is_cyclic(i):
            continue
        M = scc.matrices[i]
        comps.append(ComponentSpectrum(scc.components[i], M, char_poly(M), perron_root(M)))
    dominant = max(comps, key=lambda c: c.perron)
    beta = dominant.perron
    return DimensionReport(A, comps, beta, math.log(beta) / math.log(4), card, line, dominant)


@dataclass
class Certificate:
    beta: float
    target: float
    gap: float
    beta_poly: IntPolynomial
    target_poly: IntPolynomial
    target_poly_exact: bool
    target_rational_roots: list
    passed: bool

    def to_dict(self) -> dict:
        return {
            "beta": round(self.beta, 12),
            "target": round(self.target, 12),
            "gap": round(self.gap, 12),
            "beta_poly": list(self.beta_poly.coeffs),
            "beta_poly_monic": self.beta_poly.is_monic,
            "target_poly": list(self.target_poly.coeffs),
            "target_poly_exact": self.target_poly_exact,
            "target_rational_roots": [str(r) for r in self.target_rational_roots],
            "passed": self.passed,
        }


def check_not_s_minus_1(report: DimensionReport) -> Certificate:
    """Certify that the section's dimension differs from ``s - 1``.

    Numerically, ``beta`` stays away from ``lambda^4/4``.  Exactly, ``beta``
    is a root of a monic integer polynomial while ``lambda^4/4`` has the
    non-monic irreducible minimal polynomial ``4x^3 - 9x^2 + 2x - 1``
    (a cubic without rational roots), so it is not an algebraic integer.
    """
    if report.empty:
        raise ValueError("the intersection is empty; there is no dimension to certify")
    consts = lambda_constants()
    gap = abs(report.beta - consts.target)
    roots = TARGET_POLY.rational_roots()
    exact = target_satisfies(TARGET_POLY)
    poly = report.dominant.poly
    passed = (gap > COMPARE_TOL and poly.is_monic and exact and not roots
              and not TARGET_POLY.is_monic and TARGET_POLY.degree == 3)
    cert = Certificate(report.beta, consts.target, gap, poly, TARGET_POLY, exact, roots, passed)
    report.certificate = cert
    return cert


def describe_components(report: DimensionReport) -> list[str]:
    out = []
    for c in report.components:
        names = ", ".join(state_name(s) for s in c.states)
        out.append(f"[{names}]  {c.poly}  perron={c.perron:.12f}")
    return out
