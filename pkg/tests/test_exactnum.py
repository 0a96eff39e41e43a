import random
from fractions import Fraction as F

import pytest

from oscsolve.exactnum import (Dyadic, dyadic_in_interval, format_rational,
                               is_dyadic, parse_rational, to_dyadic)


def test_is_dyadic():
    assert is_dyadic(F(3, 4))
    assert is_dyadic(F(5, 1))
    assert is_dyadic(0)
    assert not is_dyadic(F(1, 3))
    assert not is_dyadic(F(5, 6))


def test_dyadic_canonical_form():
    d = Dyadic(4, 3)  # 4/8 = 1/2
    assert d.num == 1 and d.exp == 1
    assert d.as_fraction() == F(1, 2)
    assert Dyadic(3, 0).as_fraction() == 3


def test_dyadic_round_trip():
    for q in (F(0), F(1, 2), F(7, 8), F(13, 32), F(5)):
        assert to_dyadic(q).as_fraction() == q
    with pytest.raises(ValueError):
        to_dyadic(F(1, 3))


def test_dyadic_ordering_and_equality():
    assert Dyadic(1, 1) < Dyadic(3, 2)
    assert Dyadic(1, 1) <= F(1, 2)
    assert Dyadic(1, 1) == F(1, 2)
    assert hash(Dyadic(1, 1)) == hash(F(1, 2))


def test_parse_and_format_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational(" 7 ") == 7
    assert parse_rational("-1/2") == F(-1, 2)
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(5)) == "5"
    assert parse_rational(format_rational(F(22, 7))) == F(22, 7)


def test_dyadic_in_interval_smallest_exponent():
    # smallest exponent first, then smallest non-negative numerator
    assert dyadic_in_interval(0, 1) == F(1, 2)
    assert dyadic_in_interval(F(1, 2), 1) == F(3, 4)
    assert dyadic_in_interval(F(5, 8), F(11, 16)) == F(21, 32)
    assert dyadic_in_interval(0, 1, avoid=[F(1, 2)]) == F(1, 4)


def test_dyadic_in_interval_properties():
    rng = random.Random(20240817)
    for _ in range(300):
        a = F(rng.randrange(0, 500), 512)
        b = a + F(rng.randrange(1, 40), 512)
        avoid = {a + (b - a) * F(k, 7) for k in range(1, 7)}
        p = dyadic_in_interval(a, b, avoid)
        assert a < p < b
        assert is_dyadic(p)
        assert p not in avoid
        # determinism
        assert p == dyadic_in_interval(a, b, avoid)


def test_dyadic_in_interval_rejects_empty():
    with pytest.raises(ValueError):
        dyadic_in_interval(F(1, 2), F(1, 2))
