from __future__ import annotations

import cmath

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, cyclotomic_poly, symbols

from fusionreps.cyclotomic import CyclotomicNumber, cyclotomic_polynomial, euler_phi, units

x = symbols("x")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 9, 12, 15, 16, 24])
def test_cyclotomic_polynomial_matches_sympy(n):
    assert list(cyclotomic_polynomial(n)) == Poly(cyclotomic_poly(n, x), x).all_coeffs()[::-1]


def numbers(n):
    return st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(
        lambda cs: CyclotomicNumber.from_exponent_counts(n, cs))


@settings(max_examples=150)
@given(st.sampled_from([3, 4, 5, 8, 12]).flatmap(lambda n: st.tuples(numbers(n), numbers(n), st.just(n))))
def test_arithmetic_matches_complex(data):
    a, b, n = data
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-8
    assert abs(complex(a + b) - complex(a) - complex(b)) < 1e-8
    for k in units(n):
        assert a.galois(k) * b.galois(k) == (a * b).galois(k)


@settings(max_examples=100)
@given(st.sampled_from([4, 8, 9]).flatmap(lambda n: st.tuples(numbers(n), st.just(n))))
def test_embedding_preserves_value(data):
    a, n = data
    assert abs(complex(a.embed(3 * n)) - complex(a)) < 1e-8
    assert a.embed(2 * n) == a


def test_conjugate_is_complex_conjugate():
    z = CyclotomicNumber.zeta_power(8, 1)
    assert abs(complex(z.conjugate()) - complex(z).conjugate()) < 1e-12
    assert (z * z.conjugate()).to_rational() == 1
    assert abs(complex(z) - cmath.exp(2j * cmath.pi / 8)) < 1e-12
    assert euler_phi(12) == 4
