"""Module vectors, the tensor action through the comultiplication,
divided powers, the bilinear form, and exact column maps."""

import math
import random

import pytest

from qsl2.errors import AmbientMismatchError
from qsl2.modules import (
    LinMap,
    ModuleVector,
    act_divided,
    act_E,
    act_F,
    act_K,
    enumerate_basis,
    format_index,
    gram_entry,
    inner_product,
    operator_linmap,
    rho_twist,
    tensor,
)
from qsl2.qring import (
    Laurent,
    ONE,
    Q,
    QINV,
    ZERO,
    exact_div,
    q_power,
    quantum_binomial,
    quantum_integer,
)


def v(d, *idx):
    return ModuleVector.basis(tuple(d), tuple(idx))


def test_vector_basics():
    u = v((2, 2), 1, 1)
    assert u.d == (2, 2)
    assert u.coeff((1, 1)) == ONE
    assert u.coeff((2, 0)) == ZERO
    assert u.support() == {(1, 1)}
    assert not u.is_zero()
    assert ModuleVector.zero((2, 2)).is_zero()
    with pytest.raises(ValueError):
        ModuleVector.basis((2, 2), (3, 0))
    with pytest.raises(AmbientMismatchError):
        v((2, 2), 1, 1) + v((2, 1), 1, 1)


def test_vector_arithmetic_and_levels():
    a = v((2, 2), 1, 1).scale(Q) + v((2, 2), 2, 0).scale(3)
    assert a.coeff((1, 1)) == Q
    assert a.coeff((2, 0)) == Laurent({0: 3})
    assert (a - a).is_zero()
    assert (-a) + a == ModuleVector.zero((2, 2))
    assert a.levels() == {2}
    assert a.level() == 2
    b = a + v((2, 2), 0, 0)
    assert b.levels() == {0, 2}
    assert b.level() is None
    assert a.scale(ZERO).is_zero()


def test_enumerate_basis_matches_linear_extension():
    assert enumerate_basis((2, 2), 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_basis((3,), 1) == [(1,)]
    assert enumerate_basis((3,), 5) == []


def test_single_factor_action():
    # K v_r = q^(d - 2r) v_r on the (d+1)-dimensional module
    assert act_K(v((3,), 2)) == v((3,), 2).scale(q_power(-1))
    assert act_K(v((3,), 2), -1) == v((3,), 2).scale(q_power(1))
    with pytest.raises(ValueError):
        act_K(v((3,), 2), 2)
    # E v_r = [d - r + 1] v_(r-1), F v_r = [r + 1] v_(r+1)
    assert act_E(v((3,), 2)) == v((3,), 1).scale(quantum_integer(2))
    assert act_E(v((3,), 0)).is_zero()
    assert act_F(v((3,), 1)) == v((3,), 2).scale(quantum_integer(2))
    assert act_F(v((3,), 3)).is_zero()


def test_tensor_action():
    # E carries a K weight past the factors to its left
    assert act_E(v((1, 1), 1, 1)) == v((1, 1), 0, 1) + v(
        (1, 1), 1, 0
    ).scale(QINV)
    # F carries an inverse K weight past the factors to its right
    assert act_F(v((1, 1), 0, 0)) == v((1, 1), 0, 1) + v(
        (1, 1), 1, 0
    ).scale(QINV)
    assert act_K(v((2, 3), 1, 1)) == v((2, 3), 1, 1).scale(q_power(1))


def test_tensor_of_vectors():
    a = v((2,), 1).scale(Q)
    b = v((3,), 0) + v((3,), 2).scale(-1)
    t = tensor(a, b)
    assert t.d == (2, 3)
    assert t.coeff((1, 0)) == Q
    assert t.coeff((1, 2)) == -Q
    assert len(t.support()) == 2


def test_divided_powers():
    for d in range(5):
        for r in range(d + 1):
            assert act_divided(v((d,), 0), "F", r) == v((d,), r)
    assert act_divided(v((1, 1), 0, 0), "F", 2) == v((1, 1), 1, 1)
    assert act_divided(v((2, 2), 0, 0), "F", 4) == v((2, 2), 2, 2)
    assert act_divided(v((2,), 0), "F", 3).is_zero()
    assert act_divided(v((2,), 0), "E", 0) == v((2,), 0)
    with pytest.raises(ValueError):
        act_divided(v((2,), 0), "G", 1)
    with pytest.raises(ValueError):
        act_divided(v((2,), 0), "F", -1)


def test_divided_power_composition_identity():
    for d in [(3,), (1, 2)]:
        for r in range(sum(d) + 1):
            for idx in enumerate_basis(d, r):
                u = ModuleVector.basis(d, idx)
                for gen in ("E", "F"):
                    for n in range(3):
                        for m in range(3):
                            lhs = act_divided(act_divided(u, gen, m), gen, n)
                            rhs = act_divided(u, gen, n + m).scale(
                                quantum_binomial(n + m, n)
                            )
                            assert lhs == rhs


def test_algebra_relations():
    qm = Q - QINV
    for d in [(4,), (2, 1), (1, 1, 2)]:
        total = sum(d)
        for r in range(total + 1):
            for idx in enumerate_basis(d, r):
                u = ModuleVector.basis(d, idx)
                assert act_K(act_E(u)) == act_E(act_K(u)).scale(q_power(2))
                assert act_K(act_F(u)) == act_F(act_K(u)).scale(q_power(-2))
                w = total - 2 * r
                scalar = (
                    exact_div(q_power(w) - q_power(-w), qm) if w else ZERO
                )
                assert act_E(act_F(u)) - act_F(act_E(u)) == u.scale(scalar)


def test_gram_entries():
    assert gram_entry((2,), (0,)) == ONE
    assert gram_entry((2,), (1,)) == ONE + q_power(-2)
    assert gram_entry((4,), (2,)) == Laurent(
        {0: 1, -4: 1, -8: 2, -12: 1, -16: 1}
    )
    assert gram_entry((2, 2), (1, 1)) == (ONE + q_power(-2)) ** 2


def test_inner_product():
    a, b = v((2, 2), 1, 1), v((2, 2), 2, 0)
    assert inner_product(a, b) == ZERO
    assert inner_product(a, a) == gram_entry((2, 2), (1, 1))
    assert inner_product(a + b, a) == gram_entry((2, 2), (1, 1))
    assert inner_product(a.scale(Q), b + a) == gram_entry(
        (2, 2), (1, 1)
    ) * Q
    assert inner_product(a, b) == inner_product(b, a)
    with pytest.raises(AmbientMismatchError):
        inner_product(a, v((2, 1), 1, 1))


def test_adjointness_example():
    # (E v_1, v_0) = (v_1, rho(E) v_0) on the three-dimensional module;
    # the common value is [2] = q + q^-1
    lhs = inner_product(act_E(v((2,), 1)), v((2,), 0))
    rhs = inner_product(v((2,), 1), rho_twist("E")(v((2,), 0)))
    assert lhs == rhs == Q + QINV


def test_adjointness_sweep():
    rng = random.Random(5)
    for d in [(3,), (2, 1), (1, 1, 1)]:
        total = sum(d)
        for x, op, shift in (
            ("K", act_K, 0),
            ("E", act_E, -1),
            ("F", act_F, 1),
        ):
            rho = rho_twist(x)
            for r in range(total + 1):
                if not 0 <= r + shift <= total:
                    continue
                for idx in enumerate_basis(d, r):
                    for jdx in enumerate_basis(d, r + shift):
                        u = ModuleVector.basis(d, idx)
                        w = ModuleVector.basis(d, jdx)
                        assert inner_product(op(u), w) == inner_product(
                            u, rho(w)
                        )
    with pytest.raises(ValueError):
        rho_twist("X")


def test_zero_part_compositions_act_trivially_on_zero_slots():
    u = v((2, 0), 1, 0)
    assert act_F(u) == v((2, 0), 2, 0).scale(quantum_integer(2))
    assert act_E(v((0, 3), 0, 1)) == v((0, 3), 0, 0).scale(
        quantum_integer(3)
    )
    w = v((1, 0, 1), 0, 0, 0)
    img = act_F(w)
    assert img == v((1, 0, 1), 0, 0, 1) + v((1, 0, 1), 1, 0, 0).scale(QINV)
    assert gram_entry((0,), (0,)) == ONE


def test_dimension_count():
    for d in [(2, 2), (1, 2, 1), (3,)]:
        dim = sum(len(enumerate_basis(d, r)) for r in range(sum(d) + 1))
        assert dim == math.prod(dk + 1 for dk in d)


def test_linmap():
    ident = LinMap.identity((1, 1))
    u = v((1, 1), 0, 1).scale(Q)
    assert ident.apply(u) == u
    e_map = operator_linmap(act_E, (1, 1))
    assert e_map.apply(v((1, 1), 1, 1)) == act_E(v((1, 1), 1, 1))
    composed = e_map.compose(e_map)
    assert composed.apply(v((1, 1), 1, 1)) == act_E(
        act_E(v((1, 1), 1, 1))
    )
    with pytest.raises(AmbientMismatchError):
        ident.apply(v((2,), 1))
    with pytest.raises(AmbientMismatchError):
        ident.compose(LinMap.identity((2, 1)))


def test_serialization_roundtrip():
    u = v((2, 2), 1, 1).scale(Laurent({-2: 1, -6: 1})) + v((2, 2), 2, 0)
    obj = u.to_json_obj()
    assert obj["d"] == [2, 2]
    assert ModuleVector.from_json_obj(obj) == u
    z = ModuleVector.zero((3,))
    assert ModuleVector.from_json_obj(z.to_json_obj()) == z


def test_rendering():
    assert format_index((2, 0)) == "(2,0)"
    assert str(v((2, 2), 1, 1)) == "v(1,1)"
    assert str(ModuleVector.zero((2, 2))) == "0"
    shown = str(v((2, 2), 0, 2) + v((2, 2), 1, 1).scale(QINV))
    assert shown == "v(0,2) + q^-1 v(1,1)"
    multi = str(v((2, 2), 1, 1) + v((2, 2), 2, 0).scale(QINV + q_power(-3)))
    assert multi == "v(1,1) + (q^-1 + q^-3) v(2,0)"
    negative = str(v((1, 1), 0, 1) - v((1, 1), 1, 0).scale(Q))
    assert negative == "v(0,1) - q v(1,0)"
