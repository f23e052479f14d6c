"""GR(4, n) pair arithmetic against the independent Z4 polynomial model."""

import random

import numpy as np
import pytest

from pseudoplanar.exact import GaussInt
from pseudoplanar.field import GF2n
from pseudoplanar.galois_ring import GR4, Z4Model


@pytest.mark.parametrize("n", [1, 2, 3])
def test_oracle_agreement_exhaustive(n):
    ring = GR4(GF2n(n))
    model = ring.oracle
    elems = [ring.pair(i) for i in range(ring.size)]
    vecs = {x: model.from_pair(x) for x in elems}
    for x in elems:
        assert model.to_pair(vecs[x]) == x
        assert vecs[ring.neg(x)] == model.neg(vecs[x])
    for x in elems:
        for y in elems:
            assert vecs[ring.add(x, y)] == model.add(vecs[x], vecs[y])
            assert vecs[ring.mul(x, y)] == model.mul(vecs[x], vecs[y])


def test_oracle_agreement_random_n4():
    ring = GR4(GF2n(4))
    model = ring.oracle
    rng = random.Random(11)
    for _ in range(2000):
        x = ring.pair(rng.randrange(ring.size))
        y = ring.pair(rng.randrange(ring.size))
        assert model.from_pair(ring.add(x, y)) == model.add(
            model.from_pair(x), model.from_pair(y)
        )
        assert model.from_pair(ring.mul(x, y)) == model.mul(
            model.from_pair(x), model.from_pair(y)
        )
        assert model.from_pair(ring.neg(x)) == model.neg(model.from_pair(x))


def test_oracle_lift_is_unit_root():
    for n in (2, 3, 4, 6):
        model = Z4Model(GF2n(n))
        group = (1 << n) - 1
        y = tuple(1 if j == 1 else 0 for j in range(n))
        assert model.pow(y, group) == model.one()


def test_frobenius_generates_galois_group():
    ring = GR4(GF2n(4))
    for i in range(ring.size):
        x = ring.pair(i)
        v = x
        for _ in range(ring.n):
            v = ring.frobenius(v)
        assert v == x
    # Frobenius is a ring homomorphism
    rng = random.Random(3)
    for _ in range(200):
        x = ring.pair(rng.randrange(ring.size))
        y = ring.pair(rng.randrange(ring.size))
        assert ring.frobenius(ring.add(x, y)) == ring.add(
            ring.frobenius(x), ring.frobenius(y)
        )
        assert ring.frobenius(ring.mul(x, y)) == ring.mul(
            ring.frobenius(x), ring.frobenius(y)
        )


def test_trace_properties():
    ring = GR4(GF2n(3))
    for i in range(ring.size):
        x = ring.pair(i)
        assert ring.trace(ring.frobenius(x)) == ring.trace(x)
    # trace is additive into Z4
    for i in range(0, ring.size, 7):
        for j in range(0, ring.size, 5):
            x, y = ring.pair(i), ring.pair(j)
            assert ring.trace(ring.add(x, y)) == (ring.trace(x) + ring.trace(y)) % 4


def test_trace_balance_small():
    ring = GR4(GF2n(2))
    counts = [0, 0, 0, 0]
    for i in range(ring.size):
        counts[ring.trace(ring.pair(i))] += 1
    assert counts == [4, 4, 4, 4]


def test_character_orthogonality():
    ring = GR4(GF2n(2))
    for a_idx in range(ring.size):
        a = ring.pair(a_idx)
        total = GaussInt()
        for x_idx in range(ring.size):
            total = total + ring.character(a, ring.pair(x_idx))
        assert total == (GaussInt(ring.size) if a_idx == 0 else GaussInt())


def test_negation_and_two_torsion():
    ring = GR4(GF2n(4))
    for i in range(ring.size):
        x = ring.pair(i)
        assert ring.add(x, ring.neg(x)) == ring.zero
        assert ring.in_two_torsion(ring.add(x, x))
    assert int(ring.two_torsion_mask.sum()) == 1 << ring.n


def test_dual_pairing():
    for n in (2, 3):
        ring = GR4(GF2n(n))
        coord = ring.coord_of
        dual = ring.dual_perm
        for a_idx in range(ring.size):
            u = int(dual[a_idx])
            a = ring.pair(a_idx)
            for x_idx in range(0, ring.size, 3):
                x = ring.pair(x_idx)
                v = int(coord[x_idx])
                dot = sum(
                    ((u >> (2 * j)) & 3) * ((v >> (2 * j)) & 3) for j in range(n)
                ) % 4
                assert dot == ring.trace(ring.mul(a, x))


def test_elem_literals():
    ring = GR4(GF2n(4))
    assert ring.parse_elem("3+2*a") == (3, 10)
    assert ring.elem_string((3, 10)) == "3+2*a"
    with pytest.raises(ValueError):
        ring.parse_elem("3")
    with pytest.raises(ValueError):
        ring.parse_elem("ff+2*0")


def test_capacity_guard():
    with pytest.raises(ValueError):
        GR4(GF2n(11))
