import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genuskit.cosets import (
    FiniteGroup,
    direct_product,
    double_coset_count,
    double_coset_partition,
    subgroup_closure,
)
from genuskit.rings import unit_group


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(frozenset(range(n)), lambda a, b: (a + b) % n, 0, name=f"Z/{n}")


def brute_double_cosets(group, h, k):
    # independent oracle: repeatedly saturate orbits with the full triple loop
    remaining = set(group.carrier)
    count = 0
    while remaining:
        g = next(iter(remaining))
        orbit = {g}
        changed = True
        while changed:
            changed = False
            for x in list(orbit):
                for a in h:
                    for b in k:
                        y = group.op(group.op(a, x), b)
                        if y not in orbit:
                            orbit.add(y)
                            changed = True
        remaining -= orbit
        count += 1
    return count


class TestFiniteGroup:
    def test_identity_must_be_in_carrier(self):
        with pytest.raises(ValueError):
            FiniteGroup(frozenset({1, 2}), lambda a, b: a, 0)

    def test_axiom_check_flags_broken_groups(self):
        broken = FiniteGroup(frozenset({0, 1}), lambda a, b: (a * b) % 2, 0)
        with pytest.raises(ValueError):
            broken.check_axioms()

    def test_direct_product(self):
        g = direct_product(unit_group(5), unit_group(3))
        assert len(g) == 8
        g.check_axioms()


class TestSubgroupClosure:
    def test_empty_generators_give_identity(self):
        g = unit_group(7)
        assert subgroup_closure(g, []) == frozenset({1})

    def test_full_carrier_fixed(self):
        g = unit_group(12)
        assert subgroup_closure(g, g.carrier) == g.carrier

    def test_units8_from_three(self):
        g = unit_group(8)
        assert subgroup_closure(g, [3]) == frozenset({1, 3})

    def test_foreign_generator_rejected(self):
        with pytest.raises(ValueError):
            subgroup_closure(unit_group(8), [2])

    @given(n=st.integers(2, 60), g=st.integers(0, 59))
    @settings(max_examples=50, deadline=None)
    def test_cyclic_closure_order_divides(self, n, g):
        group = cyclic(n)
        sub = subgroup_closure(group, [g % n])
        assert len(group) % len(sub) == 0
        assert 0 in sub


def pm_one(m: int) -> frozenset:
    return frozenset({1 % m, (m - 1) % m})


class TestDoubleCosets:
    def test_whole_group_single_block(self):
        g = unit_group(12)
        parts = double_coset_partition(g, g.carrier, g.carrier)
        assert len(parts) == 1
        assert parts[0] == g.carrier

    def test_trivial_subgroups_give_singletons(self):
        g = unit_group(12)
        e = frozenset({g.identity})
        parts = double_coset_partition(g, e, e)
        assert len(parts) == len(g)
        assert all(len(b) == 1 for b in parts)

    def test_pullback_shape_mod5(self):
        # two blocks: the count phi(5)/2 = 2 for the diagonal unit pair group
        g = direct_product(unit_group(5), unit_group(5))
        h = frozenset((a, b) for a in pm_one(5) for b in pm_one(5))
        k = frozenset((u, u) for u in unit_group(5).carrier)
        parts = double_coset_partition(g, h, k)
        assert len(parts) == 2
        assert len(parts) == brute_double_cosets(g, h, k)

    def test_pullback_shape_mod7(self):
        g = direct_product(unit_group(7), unit_group(7))
        h = frozenset((a, b) for a in pm_one(7) for b in pm_one(7))
        k = frozenset((u, u) for u in unit_group(7).carrier)
        assert double_coset_count(g, h, k) == 3 == brute_double_cosets(g, h, k)

    def test_count_one_iff_product_covers(self):
        rng = random.Random(11)
        for _ in range(25):
            m = rng.choice([5, 8, 12, 15, 16])
            g = unit_group(m)
            h = subgroup_closure(g, rng.sample(sorted(g.carrier), 1))
            k = subgroup_closure(g, rng.sample(sorted(g.carrier), 1))
            count = double_coset_count(g, h, k)
            covers = {g.op(a, b) for a in h for b in k} == set(g.carrier)
            assert (count == 1) == covers

    def test_matches_brute_oracle_randomized(self):
        rng = random.Random(23)
        for _ in range(20):
            m1, m2 = rng.randint(2, 12), rng.randint(2, 12)
            g = direct_product(unit_group(m1), unit_group(m2))
            elements = sorted(g.carrier)
            h = subgroup_closure(g, rng.sample(elements, rng.randint(0, 2)))
            k = subgroup_closure(g, rng.sample(elements, rng.randint(0, 2)))
            assert double_coset_count(g, h, k) == brute_double_cosets(g, h, k)

    def test_generator_action_equals_full_action(self):
        g = direct_product(unit_group(16), unit_group(16))
        gens = [(3, 1), (1, 5)]
        h = subgroup_closure(g, gens)
        k = frozenset((u, u) for u in unit_group(16).carrier)
        k_gens = [(u, u) for u in (3, 5)]
        full = double_coset_partition(g, h, k)
        fast = double_coset_partition(g, h, k, h_gens=gens, k_gens=k_gens)
        assert set(full) == set(fast)

    def test_partition_properties(self):
        g = direct_product(unit_group(9), unit_group(8))
        h = subgroup_closure(g, [(8, 1)])
        k = subgroup_closure(g, [(1, 3), (2, 1)])
        parts = double_coset_partition(g, h, k)
        union = set()
        for block in parts:
            assert not (union & block)
            union |= block
        assert union == set(g.carrier)
        assert sum(map(len, parts)) == len(g)
        # orbit closure: h*x*k stays inside the block of x
        for block in parts:
            x = next(iter(block))
            for a in h:
                for b in k:
                    assert g.op(g.op(a, x), b) in block

    def test_scan_order_changes_nothing(self):
        g = direct_product(unit_group(11), unit_group(4))
        h = subgroup_closure(g, [(10, 1)])
        k = subgroup_closure(g, [(3, 3)])
        base = double_coset_partition(g, h, k)
        rng = random.Random(5)
        for _ in range(3):
            order = list(g.carrier)
            rng.shuffle(order)
            shuffled = double_coset_partition(g, h, k, scan_order=order)
            assert len(shuffled) == len(base)
            assert set(shuffled) == set(base)

    def test_partial_scan_order_still_covers(self):
        g = unit_group(16)
        e = frozenset({1})
        parts = double_coset_partition(g, e, e, scan_order=[3, 5])
        assert sum(map(len, parts)) == len(g)

    def test_foreign_scan_order_rejected(self):
        g = unit_group(8)
        e = frozenset({1})
        with pytest.raises(ValueError):
            double_coset_partition(g, e, e, scan_order=[2])


class TestSubgroupVerification:
    def test_non_subgroup_rejected(self):
        g = unit_group(8)
        with pytest.raises(ValueError):
            double_coset_count(g, frozenset({1, 5, 7}), frozenset({1}))

    def test_missing_identity_rejected(self):
        g = unit_group(8)
        with pytest.raises(ValueError):
            double_coset_count(g, frozenset({3}), frozenset({1}))

    def test_outside_carrier_rejected(self):
        g = unit_group(8)
        with pytest.raises(ValueError):
            double_coset_count(g, frozenset({1, 2}), frozenset({1}))

    def test_wrong_generators_rejected(self):
        g = unit_group(16)
        h = subgroup_closure(g, [3])
        with pytest.raises(ValueError):
            double_coset_count(g, h, frozenset({1}), h_gens=[5])

    def test_oversized_subgroup_needs_trusted_or_gens(self, monkeypatch):
        import genuskit.cosets as cosets

        monkeypatch.setattr(cosets, "SUBGROUP_VERIFY_LIMIT", 4)
        g = unit_group(16)
        with pytest.raises(ValueError, match="verification cap"):
            double_coset_count(g, g.carrier, frozenset({1}))
        assert (
            double_coset_count(g, g.carrier, frozenset({1}), trusted=True) == 1
        )
        assert (
            double_coset_count(
                g, g.carrier, frozenset({1}), h_gens=[3, 5, 15]
            )
            == 1
        )

    def test_trusted_still_checks_containment(self):
        g = unit_group(8)
        with pytest.raises(ValueError):
            double_coset_count(g, frozenset({1, 2}), frozenset({1}), trusted=True)


class TestAxiomCheckBranches:
    def test_monoid_without_inverses_flagged(self):
        mono = FiniteGroup(frozenset({0, 1}), lambda a, b: (a * b) % 2, 1)
        with pytest.raises(ValueError, match="inverse"):
            mono.check_axioms()
