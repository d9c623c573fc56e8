import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genuskit.errors import ResourceLimitError
from genuskit.matrices import (
    MatModM,
    det,
    elementary_generators,
    enumerate_gl,
    mat_mul,
    stable_image,
)
from genuskit.rings import Residue, totient


def leibniz_det(mat: MatModM) -> int:
    # independent oracle: permutation-sum determinant
    r, m = mat.size, mat.modulus
    total = 0
    for perm in itertools.permutations(range(r)):
        inversions = sum(
            1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j]
        )
        sign = -1 if inversions % 2 else 1
        term = sign
        for i in range(r):
            term *= mat.entries[i * r + perm[i]]
        total += term
    return total % m


def brute_gl_order(r: int, m: int) -> int:
    # independent oracle: scan every matrix, test invertibility by searching
    # for a det inverse
    count = 0
    unit_vals = {a for a in range(m) if math.gcd(a, m) == 1}
    for entries in itertools.product(range(m), repeat=r * r):
        if leibniz_det(MatModM(m, r, entries)) in unit_vals:
            count += 1
    return count


def E(i, j, m, r=2):
    flat = [1 if p == q else 0 for p in range(r) for q in range(r)]
    flat[i * r + j] = 1
    return MatModM(m, r, tuple(flat))


class TestMatModM:
    def test_entries_reduced(self):
        a = MatModM(5, 2, (7, -1, 10, 3))
        assert a.entries == (2, 4, 0, 3)

    def test_from_rows_and_rows(self):
        a = MatModM.from_rows([[1, 2], [3, 4]], 5)
        assert a.rows == ((1, 2), (3, 4))

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            MatModM(5, 2, (1, 2, 3))
        with pytest.raises(ValueError):
            MatModM.from_rows([[1, 2], [3]], 5)
        with pytest.raises(ValueError):
            MatModM(0, 1, (1,))


class TestMatMul:
    def test_identity_neutral(self):
        a = MatModM.from_rows([[1, 2], [3, 4]], 7)
        i = MatModM.identity(2, 7)
        assert mat_mul(i, a) == a == mat_mul(a, i)

    def test_involution(self):
        d = MatModM.from_rows([[-1, 0], [0, 1]], 5)
        assert mat_mul(d, d) == MatModM.identity(2, 5)

    def test_transvection_square(self):
        assert mat_mul(E(0, 1, 3), E(0, 1, 3)) == MatModM.from_rows(
            [[1, 2], [0, 1]], 3
        )

    def test_mismatch_rejected(self):
        a = MatModM.identity(2, 5)
        with pytest.raises(ValueError):
            mat_mul(a, MatModM.identity(2, 7))
        with pytest.raises(ValueError):
            mat_mul(a, MatModM.identity(3, 5))


def random_mats(r, m):
    return st.tuples(*[st.integers(0, m - 1)] * (r * r)).map(
        lambda t: MatModM(m, r, t)
    )


class TestDet:
    def test_identity(self):
        for r in (1, 2, 3, 4):
            assert det(MatModM.identity(r, 6)) == Residue(1, 6)

    def test_spec_values(self):
        assert det(MatModM.from_rows([[-1, 0], [0, 1]], 7)) == Residue(6, 7)
        assert det(MatModM.from_rows([[1, 1], [0, 1]], 6)) == Residue(1, 6)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            det(MatModM.identity(5, 3))

    @given(a=random_mats(3, 12), b=random_mats(3, 12))
    @settings(max_examples=60, deadline=None)
    def test_multiplicative(self, a, b):
        assert det(mat_mul(a, b)) == det(a) * det(b)

    @given(
        data=st.integers(0, 11 ** 16 - 1),
        r=st.integers(1, 4),
        m=st.integers(2, 11),
    )
    @settings(max_examples=100, deadline=None)
    def test_matches_leibniz_oracle(self, data, r, m):
        entries = tuple((data // m**k) % m for k in range(r * r))
        mat = MatModM(m, r, entries)
        assert det(mat).value == leibniz_det(mat)


class TestElementaryGenerators:
    def test_r2_set(self):
        gens = set(elementary_generators(2, 7))
        assert gens == {
            E(0, 1, 7),
            E(1, 0, 7),
            MatModM.from_rows([[-1, 0], [0, 1]], 7),
        }

    def test_r1_is_minus_one(self):
        assert elementary_generators(1, 5) == [MatModM(5, 1, (4,))]

    def test_r3_mod2_has_seven_with_trivial_diag(self):
        gens = elementary_generators(3, 2)
        assert len(gens) == 7
        assert gens[-1] == MatModM.identity(3, 2)  # -1 == 1 mod 2


class TestEnumerateGl:
    def test_rank_one_is_unit_group(self):
        for m in range(1, 13):
            assert len(enumerate_gl(1, m)) == totient(m)

    @pytest.mark.parametrize("r, m, order", [(2, 2, 6), (2, 3, 48)])
    def test_small_orders_frozen(self, r, m, order):
        # orders frozen from the brute_gl_order scan below
        group = enumerate_gl(r, m)
        assert len(group) == order == brute_gl_order(r, m)

    def test_group_axioms_small(self):
        enumerate_gl(2, 3).check_axioms()

    def test_orders_match_sieve_formula(self):
        # Euler-product oracle: |GL(r, Z/m)| multiplicative in m, with
        # |GL(r, Z/p^k)| = p^((k-1) r^2) * |GL(r, Z/p)|
        def formula(r, m):
            total = 1
            mm = m
            p = 2
            while mm > 1:
                if mm % p == 0:
                    k = 0
                    while mm % p == 0:
                        mm //= p
                        k += 1
                    glp = 1
                    for i in range(r):
                        glp *= p**r - p**i
                    total *= p ** ((k - 1) * r * r) * glp
                p += 1
            return total

        for m in range(1, 11):
            assert len(enumerate_gl(2, m)) == formula(2, m)
        for m in (2, 3, 4):
            assert len(enumerate_gl(3, m)) == formula(3, m)

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            enumerate_gl(3, 24)
        with pytest.raises(ResourceLimitError):
            enumerate_gl(2, 5, cap=100)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            enumerate_gl(0, 5)
        with pytest.raises(ValueError):
            enumerate_gl(2, 0)


class TestStableImage:
    def test_rank_one_is_plus_minus_one(self):
        carrier = stable_image(1, 12).carrier
        assert {a.entries[0] for a in carrier} == {1, 11}

    def test_mod2_is_whole_gl(self):
        assert stable_image(2, 2).carrier == enumerate_gl(2, 2).carrier
        assert len(stable_image(2, 2)) == 6

    def test_mod5_order(self):
        # |GL(2,5)| = 480; determinant classes {1, -1} out of 4 units
        assert len(enumerate_gl(2, 5)) == 480
        assert len(stable_image(2, 5)) == 240

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_characterization_small(self, m):
        image = stable_image(2, m).carrier
        signs = {1 % m, (m - 1) % m}
        expected = {a for a in enumerate_gl(2, m).carrier if a.det().value in signs}
        assert image == expected

    def test_characterization_rank_one(self):
        for m in range(1, 13):
            image = stable_image(1, m).carrier
            signs = {1 % m, (m - 1) % m}
            expected = {
                a for a in enumerate_gl(1, m).carrier if a.det().value in signs
            }
            assert image == expected

    @pytest.mark.parametrize("r", [1, 2])
    def test_determinant_fibration(self, r):
        for m in range(1, 11):
            signs = 1 if m <= 2 else 2
            lhs = len(stable_image(r, m)) * totient(m)
            rhs = len(enumerate_gl(r, m)) * signs
            assert lhs == rhs

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            stable_image(3, 24)


class TestArgumentValidation:
    def test_elementary_generators_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            elementary_generators(0, 5)
        with pytest.raises(ValueError):
            elementary_generators(2, 0)
