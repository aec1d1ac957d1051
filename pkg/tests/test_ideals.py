"""
Tests for ideal generation, ideal algebra and lattice enumeration
"""

import time

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from conftest import divisor_count, make_ring
from src.core.config import Settings
from src.core.exceptions import InvalidElement, RingMismatch, SizeCapExceeded
from src.services.ideals import (
    all_ideals,
    colon,
    generate,
    ideal_product,
    ideal_sum,
    intersect,
    is_ideal_set,
    nilradical,
    principal,
    radical,
    unit_ideal,
    zero_ideal,
)


class TestGenerate:
    @pytest.mark.parametrize("text, gens, members", [
        ("Z12", [8], (0, 4, 8)),
        ("Z12", [], (0,)),
        ("Z32", [16], (0, 16)),
        ("Z12", [8, 6], (0, 2, 4, 6, 8, 10)),
        ("Z2 x Z3", [3], tuple(range(6))),
    ])
    def test_generate(self, text, gens, members):
        assert generate(make_ring(text), gens).members == members

    def test_generator_out_of_range(self):
        with pytest.raises(InvalidElement):
            generate(make_ring("Z8"), [9])

    def test_generators_regenerate_the_ideal(self):
        ring = make_ring("Z2 x Z2 x Z4")
        for ideal in all_ideals(ring):
            assert generate(ring, ideal.generators()) == ideal

    def test_generators_of_zero_ideal(self):
        assert zero_ideal(make_ring("Z8")).generators() == (0,)
        assert generate(make_ring("Z12"), [8]).generators() == (4,)

    @given(st.lists(st.integers(min_value=0, max_value=23), max_size=4))
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_generate_is_idempotent(self, gens):
        ring = make_ring("Z24")
        ideal = generate(ring, gens)
        assert generate(ring, ideal.members) == ideal

    @given(st.lists(st.integers(min_value=0, max_value=15), max_size=3))
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_generated_sets_are_ideals(self, gens):
        ring = make_ring("Z4[x]^2")
        assert is_ideal_set(ring, generate(ring, gens).flags)


class TestAlgebra:
    def test_sum(self):
        ring = make_ring("Z8")
        assert ideal_sum(generate(ring, [4]), generate(ring, [2])) == generate(ring, [2])

    @pytest.mark.parametrize("text", ["Z24", "Z2 x Z2 x Z4", "Z4[x]^2", "Z8(+)Z2", "Z4 x Z6"])
    def test_sum_matches_sumset(self, text):
        ring = make_ring(text)
        ideals = list(all_ideals(ring))
        for first in ideals:
            for second in ideals:
                sumset = {ring.add(a, b) for a in first for b in second}
                assert ideal_sum(first, second).members == tuple(sorted(sumset))

    def test_product(self):
        ring = make_ring("Z12")
        assert ideal_product(generate(ring, [2]), generate(ring, [3])).members == (0, 6)

    def test_intersect_with_whole_ring(self):
        ring = make_ring("Z12")
        ideal = generate(ring, [4])
        assert intersect(ideal, unit_ideal(ring)) == ideal

    @pytest.mark.parametrize("text, target, divisor, members", [
        ("Z12", [6], [4], (0, 3, 6, 9)),
        ("Z8", [0], [2], (0, 4)),
    ])
    def test_colon(self, text, target, divisor, members):
        ring = make_ring(text)
        assert colon(generate(ring, target), generate(ring, divisor)).members == members

    def test_colon_by_zero_is_whole_ring(self):
        ring = make_ring("Z12")
        assert colon(generate(ring, [4]), zero_ideal(ring)) == unit_ideal(ring)

    def test_colon_of_nilradical(self):
        ring = make_ring("Z12")
        assert colon(nilradical(ring), generate(ring, [4])) == generate(ring, [3])

    @pytest.mark.parametrize("text, gens, members", [
        ("Z8", [0], (0, 2, 4, 6)),
        ("Z12", [4], (0, 2, 4, 6, 8, 10)),
        ("Z12", [1], tuple(range(12))),
    ])
    def test_radical(self, text, gens, members):
        assert radical(generate(make_ring(text), gens)).members == members

    def test_mixed_rings(self):
        first, second = make_ring("Z8"), make_ring("Z4")
        with pytest.raises(RingMismatch):
            ideal_sum(zero_ideal(first), zero_ideal(second))
        with pytest.raises(RingMismatch):
            zero_ideal(first).contains(zero_ideal(second))

    def test_containment(self):
        ring = make_ring("Z8")
        two, four = generate(ring, [2]), generate(ring, [4])
        assert two.is_proper()
        assert two.contains(four)
        assert not four.contains(two)
        assert generate(ring, [0]).equals(zero_ideal(ring))
        assert not unit_ideal(ring).is_proper()

    def test_catalog_algebra_invariants(self, small_catalog_rings):
        for ring in small_catalog_rings:
            ideals = list(all_ideals(ring))
            for first in ideals:
                root = radical(first)
                assert is_ideal_set(ring, root.flags)
                assert root.contains(first)
                assert radical(root) == root
                for second in ideals:
                    prod = ideal_product(first, second)
                    meet = intersect(first, second)
                    assert meet.contains(prod)
                    assert first.contains(meet)
                    assert is_ideal_set(ring, prod.flags)
                    assert is_ideal_set(ring, colon(first, second).flags)


class TestLattice:
    @pytest.mark.parametrize("n", range(2, 65))
    def test_ideal_count_is_divisor_count(self, n):
        assert len(all_ideals(make_ring(f"Z{n}"))) == divisor_count(n)

    def test_z8_lattice_order(self):
        lattice = all_ideals(make_ring("Z8"))
        assert [ideal.members for ideal in lattice] == [
            (0,), (0, 4), (0, 2, 4, 6), tuple(range(8)),
        ]

    def test_field_has_two_ideals(self):
        assert len(all_ideals(make_ring("Z5"))) == 2

    def test_lattice_closure(self):
        ring = make_ring("Z2 x Z2 x Z4")
        lattice = all_ideals(ring)
        assert lattice.zero == zero_ideal(ring)
        assert lattice.unit == unit_ideal(ring)
        assert all(principal(ring, a) in lattice for a in ring.elements())
        assert all(ideal_sum(a, b) in lattice for a in lattice for b in lattice)
        assert len(set(lattice)) == len(lattice)

    def test_product_lattice_size(self):
        assert len(all_ideals(make_ring("Z8 x Z3"))) == 4 * 2

    @pytest.mark.parametrize("text, count", [
        ("Z2 x Z2 x Z2 x Z2 x Z2 x Z2 x Z2 x Z2", 256),
        ("Z4096", 13),
        ("Z64(+)Z64", None),
    ])
    def test_large_rings_enumerate_quickly(self, text, count):
        ring = make_ring(text)
        start = time.perf_counter()
        lattice = all_ideals(ring)
        elapsed = time.perf_counter() - start
        if count is not None:
            assert len(lattice) == count
        assert elapsed < 15.0, f"{text}: {len(lattice)} ideals in {elapsed:.1f}s"

    def test_boolean_ring_ideals_are_principal(self):
        ring = make_ring("Z2 x Z2 x Z2 x Z2 x Z2")
        lattice = all_ideals(ring)
        assert len(lattice) == 32
        assert {principal(ring, a) for a in ring.elements()} == set(lattice)

    def test_size_cap(self):
        with pytest.raises(SizeCapExceeded):
            all_ideals(make_ring("Z12"), Settings(size_cap=10))
