"""Hidden sl(2) structure of the relative-motion problem.

The generators

    J+ = r^2 d/dr - j r,    J- = d/dr,    J0 = r d/dr - j/2

leave the polynomials of degree <= j invariant.  The combination

    T = -J- J0 - (4m + j)/2 J- + J+

(the oscillator factor hbar*omega is scaled into the spectral variable
t = lambda / sqrt(hbar*omega)) is tridiagonal on the monomial basis, and its
characteristic polynomial fixes the couplings t for which the Schrodinger
equation has a polynomial solution of degree j.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomial import IntegerPolynomial, root_bound, real_roots

Rational = int | Fraction

GENERATORS = ("J_plus", "J_minus", "J_zero")

_R = IntegerPolynomial((0, 1))
_R2 = IntegerPolynomial((0, 0, 1))


def _check_jm(j: int, m: int) -> None:
    if int(j) != j or j < 0:
        raise ValueError(f"j must be a nonnegative integer, got {j!r}")
    if int(m) != m or m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")


@dataclass(frozen=True)
class GeneratorAction:
    """One sl(2) generator realized as a first-order differential operator."""

    name: str
    j: int

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name!r}")
        if int(self.j) != self.j or self.j < 0:
            raise ValueError(f"j must be a nonnegative integer, got {self.j!r}")

    def __call__(self, p: IntegerPolynomial) -> IntegerPolynomial:
        dp = p.derivative()
        if self.name == "J_plus":
            return _R2 * dp - _R * p * self.j
        if self.name == "J_minus":
            return dp
        return _R * dp - p * Fraction(self.j, 2)

    def matrix(self) -> list[list[Fraction]]:
        return operator_matrix(self, self.j)


def operator_matrix(op, j: int) -> list[list]:
    """Matrix of a polynomial operator on the basis {1, r, ..., r^j}.

    Column k holds the image of r^k.  Raises if the image leaves the space.
    """
    n = j + 1
    mat = [[0] * n for _ in range(n)]
    for k in range(n):
        image = op(IntegerPolynomial.monomial(k))
        if image.degree > j and not image.is_zero():
            raise ArithmeticError(f"r^{k} is mapped outside the degree-{j} space")
        for row in range(n):
            mat[row][k] = image[row]
    return mat


def matmul(a: list[list], b: list[list]) -> list[list]:
    n, inner, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][c] for k in range(inner)) for c in range(p)] for i in range(n)]


def commutator(a: list[list], b: list[list]) -> list[list]:
    ab, ba = matmul(a, b), matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def qes_operator(j: int, m: int, omega: Rational = 1):
    """The operator T as a callable on polynomials in r."""
    jp, jm, j0 = (GeneratorAction(name, j) for name in GENERATORS)
    shift = Fraction(4 * m + j, 2)

    def apply(p: IntegerPolynomial) -> IntegerPolynomial:
        return -jm(j0(p)) - jm(p) * shift + jp(p) * omega

    return apply


def t_matrix(j: int, m: int) -> list[list[int]]:
    """Integer matrix of T on {1, r, ..., r^j} in the scaled variable."""
    _check_jm(j, m)
    mat = operator_matrix(qes_operator(j, m), j)
    return [[int(x) for x in row] for row in mat]


def characteristic_polynomial(mat: list[list[int]]) -> IntegerPolynomial:
    """det(t I - mat) by the Faddeev-LeVerrier recursion, in exact integers.

    Independent of the three-term recurrence on purpose: the two routes are
    compared against each other.
    """
    n = len(mat)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = [[int(i == c) for c in range(n)] for i in range(n)]
    aux = [row[:] for row in ident]  # M_1 = I
    for k in range(1, n + 1):
        am = matmul(mat, aux)
        trace = sum(am[i][i] for i in range(n))
        c = Fraction(-trace, k)
        if c.denominator != 1:
            raise ArithmeticError("non-integer characteristic coefficient")
        coeffs[n - k] = int(c)
        aux = [[am[i][col] + coeffs[n - k] * ident[i][col] for col in range(n)] for i in range(n)]
    return IntegerPolynomial(tuple(coeffs))


def critical_polynomial(j: int, m: int) -> IntegerPolynomial:
    """Degree-(j+1) polynomial whose roots are the admissible scaled couplings."""
    return characteristic_polynomial(t_matrix(j, m))


def recurrence_polynomials(j: int, m: int) -> list[IntegerPolynomial]:
    """P_0 .. P_{j+1} from P_{k+1} = t P_k - k (k+2m) (j+1-k) P_{k-1}."""
    _check_jm(j, m)
    t = _R
    polys = [IntegerPolynomial((1,)), t]
    for k in range(1, j + 1):
        polys.append(t * polys[k] - polys[k - 1] * (k * (k + 2 * m) * (j + 1 - k)))
    return polys[: j + 2]


@dataclass(frozen=True)
class EtaValue:
    """Squared scaled coupling eta = t^2 of one physical branch."""

    value: float
    n_r: int


def eta_values(j: int, m: int) -> list[EtaValue]:
    """Physical eta branches of (j, m), largest first; ``n_r`` is the position.

    Only strictly negative roots t are physical; each pair -+sqrt(eta) gives
    one eta, and the root t = 0 present for even j is dropped.
    """
    m = abs(m)
    poly = critical_polynomial(j, m)
    _, reduced = poly.shift_down()
    if reduced.degree == 0:
        return []
    in_s = reduced.in_square()
    roots = real_roots(in_s, 0, root_bound(in_s))
    expected = (j + 1) // 2
    # the similarity to a symmetric matrix guarantees real, simple roots
    assert len(roots) == expected == in_s.degree, (j, m, roots)
    roots.sort(reverse=True)
    return [EtaValue(s, n_r) for n_r, s in enumerate(roots)]


def eta_values_numeric(j: int, m: int) -> list[float]:
    """Cross-check path: eta from a floating-point eigensolve of T."""
    m = abs(m)
    mat = np.array(t_matrix(j, m), dtype=float)
    n = j + 1
    # symmetrize the tridiagonal: off-diagonal sqrt(M[k+1][k] * M[k][k+1])
    off = np.array([np.sqrt(mat[k + 1, k] * mat[k, k + 1]) for k in range(n - 1)])
    sym = np.diag(off, 1) + np.diag(off, -1)
    ts = np.linalg.eigvalsh(sym) if n > 1 else np.zeros(1)
    etas = sorted((t * t for t in ts if t < -1e-9 * max(1.0, np.abs(ts).max())), reverse=True)
    return etas
