"""Exact univariate polynomials over the integers/rationals.

Coefficients are stored lowest power first as Python ``int`` or
``fractions.Fraction``, so nothing is ever rounded.  Real roots are located
with Sturm sequences and refined by bisection on exact sign evaluations,
which makes every bracket a certified one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[Rational]) -> tuple:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if not c:
        c = [0]
    # keep ints as ints so printed coefficients stay readable
    return tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in c)


@dataclass(frozen=True)
class IntegerPolynomial:
    """Polynomial ``sum(coefficients[k] * t**k)`` with exact coefficients."""

    coefficients: tuple

    def __post_init__(self):
        for c in self.coefficients:
            if not isinstance(c, Rational):
                raise TypeError(f"coefficients must be exact integers or rationals, got {c!r}")
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> IntegerPolynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Rational:
        return self.coefficients[-1]

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __getitem__(self, k: int) -> Rational:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        n = max(len(self.coefficients), len(other.coefficients))
        return IntegerPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> IntegerPolynomial:
        return IntegerPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return self + (-other)

    def __mul__(self, other) -> IntegerPolynomial:
        if isinstance(other, Rational):
            return IntegerPolynomial(tuple(other * c for c in self.coefficients))
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for k, b in enumerate(other.coefficients):
                out[i + k] += a * b
        return IntegerPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntegerPolynomial:
        return IntegerPolynomial(tuple(k * c for k, c in enumerate(self.coefficients))[1:] or (0,))

    def shift_down(self) -> tuple[int, IntegerPolynomial]:
        """Split off the largest power of t: returns ``(k, q)`` with ``self = t**k * q``."""
        k = 0
        while k < self.degree and self.coefficients[k] == 0:
            k += 1
        return k, IntegerPolynomial(self.coefficients[k:])

    def in_square(self) -> IntegerPolynomial:
        """For an even polynomial p(t), return q with p(t) = q(t**2)."""
        if any(c != 0 for c in self.coefficients[1::2]):
            raise ValueError("polynomial is not even")
        return IntegerPolynomial(self.coefficients[0::2])

    def divmod(self, other: IntegerPolynomial) -> tuple[IntegerPolynomial, IntegerPolynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coefficients]
        quot = [Fraction(0)] * max(1, self.degree - other.degree + 1)
        lead = Fraction(other.leading)
        for shift in range(self.degree - other.degree, -1, -1):
            q = rem[shift + other.degree] / lead
            quot[shift] = q
            if q:
                for k, c in enumerate(other.coefficients):
                    rem[shift + k] -= q * c
        return IntegerPolynomial(tuple(quot)), IntegerPolynomial(tuple(rem[: max(1, other.degree)]))

    def parity(self) -> int | None:
        """+1 if even, -1 if odd, None otherwise."""
        if all(c == 0 for c in self.coefficients[1::2]):
            return 1
        if all(c == 0 for c in self.coefficients[0::2]):
            return -1
        return None

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coefficients]

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0 and self.degree > 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c in (1, -1):
                s = mono if c == 1 else f"-{mono}"
            else:
                s = f"{c}{'*' + mono if mono else ''}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")


def sturm_sequence(p: IntegerPolynomial) -> list[IntegerPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _variations(values: Sequence) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_infinity(q: IntegerPolynomial, positive: bool) -> Rational:
    lead = q.leading
    return lead if positive or q.degree % 2 == 0 else -lead


def sign_variations(seq: Sequence[IntegerPolynomial], x=None, *, at_infinity: int = 0) -> int:
    """Sign changes of a Sturm chain at ``x`` (or at +-infinity)."""
    if at_infinity:
        return _variations([_sign_at_infinity(q, at_infinity > 0) for q in seq])
    x = Fraction(x)
    return _variations([q(x) for q in seq])


def count_real_roots(p: IntegerPolynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``; None means infinite."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p)
    v_lo = sign_variations(seq, at_infinity=-1) if lo is None else sign_variations(seq, lo)
    v_hi = sign_variations(seq, at_infinity=+1) if hi is None else sign_variations(seq, hi)
    return v_lo - v_hi


def root_bound(p: IntegerPolynomial) -> Fraction:
    """Cauchy bound: every root satisfies |x| < bound."""
    lead = abs(Fraction(p.leading))
    return 1 + max((abs(Fraction(c)) / lead for c in p.coefficients[:-1]), default=Fraction(0))


def isolate_real_roots(p: IntegerPolynomial, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]`` inside ``(lo, hi]``, each holding exactly one root.

    Assumes the roots of ``p`` are simple (true for every polynomial used here);
    the Sturm count then equals the number of roots.
    """
    seq = sturm_sequence(p)
    lo, hi = Fraction(lo), Fraction(hi)
    out = []
    stack = [(lo, hi, sign_variations(seq, lo), sign_variations(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        vm = sign_variations(seq, mid)
        stack.append((mid, b, vm, vb))
        stack.append((a, mid, va, vm))
    return sorted(out)


def refine_root(p: IntegerPolynomial, a, b, rel_tol: float = 1e-13) -> float:
    """Bisect a bracket ``(a, b]`` holding one simple root down to ``rel_tol``."""
    a, b = Fraction(a), Fraction(b)
    fb = p(b)
    if fb == 0:
        return float(b)
    fa = p(a)
    if fa == 0:
        # a neighbouring root sits on the open end: pull a inward, keeping the count at 1
        seq = sturm_sequence(p)
        v_b = sign_variations(seq, b)
        step = (b - a) / 2
        while sign_variations(seq, a + step) - v_b != 1 or p(a + step) == 0:
            step /= 2
        a = a + step
        fa = p(a)
    if (fa > 0) == (fb > 0):
        raise ArithmeticError("interval does not bracket a simple root")
    while b - a > Fraction(rel_tol) * max(abs(a), abs(b)) / 4:
        mid = (a + b) / 2
        fm = p(mid)
        if fm == 0:
            return float(mid)
        if (fm > 0) == (fb > 0):
            b, fb = mid, fm
        else:
            a = mid
    return float((a + b) / 2)


def real_roots(p: IntegerPolynomial, lo, hi, rel_tol: float = 1e-13) -> list[float]:
    """All (simple) real roots of ``p`` in ``(lo, hi]``, ascending."""
    return [refine_root(p, a, b, rel_tol) for a, b in isolate_real_roots(p, lo, hi)]
