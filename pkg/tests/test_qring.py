"""The Laurent ring in q^(1/2): canonical form, arithmetic, bar,
quantum combinatorics, exact division, serialization, rendering."""

import random

import pytest

from qsl2.errors import NonDivisibleError
from qsl2.qring import (
    Laurent,
    ONE,
    Q,
    QINV,
    ZERO,
    exact_div,
    q_half,
    q_power,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
)


def _random_laurent(rng, span=8, size=5):
    return Laurent(
        {
            rng.randrange(-span, span + 1): rng.randrange(-9, 10)
            for _ in range(rng.randrange(0, size))
        }
    )


def test_canonical_form():
    assert Laurent({}) == ZERO
    assert Laurent({2: 0, -4: 0}) == ZERO
    assert Laurent({0: 1}) == ONE
    assert Laurent({2: 1}) == Q
    assert Laurent({-2: 1}) == QINV
    assert not ZERO
    assert Q
    assert Laurent({2: 3, 0: -1}) == Laurent({0: -1, 2: 3})
    assert hash(Laurent({2: 3, 0: -1})) == hash(Laurent({0: -1, 2: 3}))


def test_arithmetic():
    a = Laurent({2: 1, 0: -2})
    b = Laurent({-2: 3})
    assert a + b == Laurent({2: 1, 0: -2, -2: 3})
    assert a - a == ZERO
    assert -a == Laurent({2: -1, 0: 2})
    assert a * ZERO == ZERO
    assert a * ONE == a
    assert Q * QINV == ONE
    assert (Q + QINV) * (Q - QINV) == Laurent({4: 1, -4: -1})
    assert Q ** 0 == ONE
    assert Q ** 5 == q_power(5)
    assert (Q + ONE) ** 2 == Laurent({4: 1, 2: 2, 0: 1})
    with pytest.raises(ValueError):
        Q ** -1


def test_powers_of_q():
    assert q_power(1) == Q
    assert q_power(-1) == QINV
    assert q_power(3) == q_half(6)
    assert q_half(1) * q_half(1) == Q
    assert q_half(-3) * q_half(3) == ONE


def test_bar():
    rng = random.Random(7)
    assert Q.bar() == QINV
    assert q_half(3).bar() == q_half(-3)
    for _ in range(80):
        a = _random_laurent(rng)
        b = _random_laurent(rng)
        assert a.bar().bar() == a
        assert (a + b).bar() == a.bar() + b.bar()
        assert (a * b).bar() == a.bar() * b.bar()


def test_quantum_integers():
    assert quantum_integer(0) == ZERO
    assert quantum_integer(1) == ONE
    assert quantum_integer(2) == Q + QINV
    assert quantum_integer(3) == Laurent({4: 1, 0: 1, -4: 1})
    with pytest.raises(ValueError):
        quantum_integer(-1)
    for n in range(13):
        assert quantum_integer(n).bar() == quantum_integer(n)


def test_quantum_factorial():
    assert quantum_factorial(0) == ONE
    assert quantum_factorial(1) == ONE
    assert quantum_factorial(2) == Q + QINV
    assert quantum_factorial(3) == quantum_integer(3) * quantum_integer(2)
    assert quantum_factorial(5) == (
        quantum_integer(5) * quantum_factorial(4)
    )


def test_quantum_binomial_values():
    assert quantum_binomial(0, 0) == ONE
    assert quantum_binomial(4, 0) == ONE
    assert quantum_binomial(4, 4) == ONE
    assert quantum_binomial(2, 1) == Q + QINV
    assert quantum_binomial(4, 2) == Laurent(
        {8: 1, 4: 1, 0: 2, -4: 1, -8: 1}
    )
    with pytest.raises(ValueError):
        quantum_binomial(3, 4)
    with pytest.raises(ValueError):
        quantum_binomial(3, -1)


def test_quantum_binomial_identities():
    for n in range(13):
        for r in range(n + 1):
            b = quantum_binomial(n, r)
            assert b == quantum_binomial(n, n - r)
            assert b.bar() == b
            assert b == exact_div(
                quantum_factorial(n),
                quantum_factorial(r) * quantum_factorial(n - r),
            )
            # every coefficient of a quantum binomial is a positive count
            assert all(c > 0 for _, c in b.items())


def test_exact_div():
    assert exact_div(ZERO, Q) == ZERO
    assert exact_div(Laurent({4: 1, -4: -1}), Q - QINV) == Q + QINV
    rng = random.Random(11)
    for _ in range(100):
        a = _random_laurent(rng)
        b = _random_laurent(rng)
        if b.is_zero():
            continue
        assert exact_div(a * b, b) == a
    with pytest.raises(ZeroDivisionError):
        exact_div(ONE, ZERO)
    with pytest.raises(NonDivisibleError):
        exact_div(Q + ONE, Q - ONE)
    with pytest.raises(NonDivisibleError):
        exact_div(Q, Laurent({0: 2}))
    with pytest.raises(NonDivisibleError):
        exact_div(Q + ONE, Q + Q)


def test_serialization():
    a = Laurent({3: -2, -1: 10 ** 30, 0: 7})
    pairs = a.to_pairs()
    assert pairs == [[-1, str(10 ** 30)], [0, "7"], [3, "-2"]]
    assert Laurent.from_pairs(pairs) == a
    assert ZERO.to_pairs() == []
    assert Laurent.from_pairs([]) == ZERO
    rng = random.Random(13)
    for _ in range(50):
        x = _random_laurent(rng, span=20)
        assert Laurent.from_pairs(x.to_pairs()) == x


def test_membership_predicates():
    assert ONE.is_in_a()
    assert (Q + QINV).is_in_a()
    assert not q_half(1).is_in_a()
    assert ZERO.is_in_a()

    assert ZERO.is_in_qinv_z_nonneg()
    assert Laurent({-2: 1, -6: 1}).is_in_qinv_z_nonneg()
    assert not ONE.is_in_qinv_z_nonneg()
    assert not (ONE + QINV).is_in_qinv_z_nonneg()
    assert not Laurent({-2: -1}).is_in_qinv_z_nonneg()
    assert not Laurent({-1: 1}).is_in_qinv_z_nonneg()
    assert not Q.is_in_qinv_z_nonneg()

    assert (Q - QINV).is_bar_antisymmetric()
    assert ZERO.is_bar_antisymmetric()
    assert not (Q + QINV).is_bar_antisymmetric()
    assert (Q - QINV).has_zero_constant_term()
    assert not ONE.has_zero_constant_term()


def test_negative_half_solves_bar_equation():
    # for bar-antisymmetric g with zero constant term, p = negative half
    # satisfies bar(p) - p = -g, the correction used by the canonical
    # basis algorithm
    rng = random.Random(17)
    for _ in range(60):
        a = Laurent(
            {
                rng.randrange(1, 9): rng.randrange(-9, 10)
                for _ in range(rng.randrange(0, 5))
            }
        )
        g = a - a.bar()
        assert g.is_bar_antisymmetric()
        assert g.has_zero_constant_term()
        p = g.negative_half()
        assert p.bar() - p == -g


def test_rendering():
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(Q) == "q"
    assert str(QINV) == "q^-1"
    assert str(Laurent({4: 1})) == "q^2"
    assert str(q_half(3)) == "q^(3/2)"
    assert str(q_half(-1)) == "q^(-1/2)"
    assert str(Laurent({2: -1, -2: 1})) == "-q + q^-1"
    assert str(Laurent({0: 2, -8: -3})) == "2 - 3q^-4"
    assert (
        str(quantum_binomial(4, 2)) == "q^4 + q^2 + 2 + q^-2 + q^-4"
    )


def test_constant_term_and_extremes():
    a = Laurent({4: 2, 0: -5, -6: 1})
    assert a.constant_term() == -5
    assert a.coefficient(4) == 2
    assert a.coefficient(2) == 0
    assert a.min_half_exponent() == -6
    assert a.max_half_exponent() == 4
