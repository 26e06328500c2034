import pytest
from hypothesis import given, settings, strategies as st

from uqbar.cyclo import FieldError, cyclotomic_poly, field, qbinom, qfact, qint


@pytest.mark.parametrize(
    "N, coeffs",
    [
        (8, (1, 0, 0, 0, 1)),
        (12, (1, 0, -1, 0, 1)),
        (20, (1, 0, -1, 0, 1, 0, -1, 0, 1)),
    ],
)
def test_cyclotomic_poly(N, coeffs):
    assert cyclotomic_poly(N) == coeffs


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_root_orders(p):
    F = field(p)
    assert F.z ** (4 * p) == F.one
    assert F.z ** (2 * p) == -F.one
    assert F.q ** p == -F.one
    assert F.i * F.i == -F.one
    assert all(F.z ** k != F.one for k in range(1, 4 * p))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_quantum_integers(p):
    F = field(p)
    assert qint(F, p) == F.zero
    for n in range(1, p):
        assert qint(F, n) == qint(F, p - n)
        assert qint(F, n) != F.zero
    assert qfact(F, p) == F.zero
    assert qbinom(F, p - 1, 1) == qint(F, p - 1)


def test_qbinom_out_of_range():
    with pytest.raises(FieldError):
        qbinom(field(3), 3, 1)


def test_field_is_shared():
    assert field(5) is field(5)


def test_division_by_zero():
    F = field(3)
    with pytest.raises(FieldError):
        F.one / F.zero


def elems(p):
    F = field(p)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=F.d, max_size=F.d).map(
        lambda cs: sum((F.rational(c) * F.z ** k for k, c in enumerate(cs)), F.zero)
    )


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_field_axioms(p, data):
    F = field(p)
    a, b, c = (data.draw(elems(p)) for _ in range(3))
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if a:
        assert a * a.inverse() == F.one
        assert (b / a) * a == b


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_text_and_json_round_trip(p, data):
    F = field(p)
    a = data.draw(elems(p))
    assert F.parse(str(a)) == a
    assert F.from_json(a.to_json()) == a
    assert hash(F.parse(str(a))) == hash(a)
