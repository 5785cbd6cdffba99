from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qesdot.polynomial import (
    IntegerPolynomial,
    count_real_roots,
    isolate_real_roots,
    real_roots,
    root_bound,
)

P = IntegerPolynomial


def test_trim_and_degree():
    assert P((1, 2, 0, 0)).coefficients == (1, 2)
    assert P(()).is_zero()
    assert P((0,)).degree == 0
    assert P((Fraction(4, 2), 1)).coefficients == (2, 1)


def test_rejects_floats():
    with pytest.raises(TypeError):
        P((1.5, 2))


def test_arithmetic():
    a, b = P((1, 1)), P((-1, 1))
    assert (a * b).coefficients == (-1, 0, 1)
    assert (a + b).coefficients == (0, 2)
    assert (a - a).is_zero()
    assert (3 * a).coefficients == (3, 3)
    assert a(Fraction(1, 2)) == Fraction(3, 2)
    assert P((5, 3, 2)).derivative().coefficients == (3, 4)


def test_divmod():
    num = P((-1, 0, 0, 1))  # t^3 - 1
    q, r = num.divmod(P((-1, 1)))
    assert q.coefficients == (1, 1, 1) and r.is_zero()
    q, r = P((1, 0, 1)).divmod(P((0, 1)))
    assert q.coefficients == (0, 1) and r.coefficients == (1,)


def test_parity_and_square():
    assert P((0, -6, 0, 1)).parity() == -1
    assert P((27, 0, -20, 0, 1)).parity() == 1
    assert P((1, 1)).parity() is None
    assert P((27, 0, -20, 0, 1)).in_square().coefficients == (27, -20, 1)
    k, q = P((0, -6, 0, 1)).shift_down()
    assert k == 1 and q.coefficients == (-6, 0, 1)
    with pytest.raises(ValueError):
        P((1, 1)).in_square()


def test_str():
    assert str(P((27, 0, -20, 0, 1))) == "t^4 - 20*t^2 + 27"
    assert str(P((0, -6, 0, 1))) == "t^3 - 6*t"


def test_sturm_counts():
    p = P((-6, 11, -6, 1))  # (t-1)(t-2)(t-3)
    assert count_real_roots(p) == 3
    assert count_real_roots(p, 0, Fraction(5, 2)) == 2
    assert count_real_roots(p, 1, 2) == 1  # half-open (1, 2]
    assert count_real_roots(P((1, 0, 1))) == 0


def test_isolate_and_refine():
    p = P((27, -20, 1))  # s^2 - 20 s + 27
    brackets = isolate_real_roots(p, 0, root_bound(p))
    assert len(brackets) == 2
    roots = real_roots(p, 0, root_bound(p))
    assert roots == pytest.approx([10 - 73**0.5, 10 + 73**0.5], rel=1e-13)


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6, unique=True))
def test_roots_of_product_of_linear_factors(rts):
    p = P((1,))
    for r in rts:
        p = p * P((-r, 1))
    bound = root_bound(p)
    assert all(abs(r) < bound for r in rts)
    assert count_real_roots(p) == len(rts)
    found = real_roots(p, -bound, bound)
    assert np.allclose(found, sorted(rts), rtol=1e-12, atol=1e-12)
