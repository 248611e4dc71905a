import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftkit.errors import DomainError, OutOfTableError
from cftkit.fusion import (
    minimal_fuse,
    s_matrix,
    su2_fusion_admissible,
    verlinde_dim,
    verlinde_three_point,
)


class TestSu2:
    def test_examples(self):
        assert su2_fusion_admissible(0, 0, 0, 1)
        assert not su2_fusion_admissible(1, 1, 1, 1)
        assert su2_fusion_admissible(1, 1, 2, 2)

    def test_level_bound(self):
        # parity and triangle hold; the sum exceeds 2k
        assert not su2_fusion_admissible(2, 2, 2, 2)
        assert su2_fusion_admissible(2, 2, 2, 3)

    def test_symmetric(self):
        for k in range(1, 7):
            for trip in itertools.product(range(k + 1), repeat=3):
                vals = {su2_fusion_admissible(*p, k) for p in itertools.permutations(trip)}
                assert len(vals) == 1

    def test_out_of_range(self):
        with pytest.raises(OutOfTableError):
            su2_fusion_admissible(0, 0, 3, 2)


class TestSMatrix:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_orthogonal_symmetric(self, k):
        S = s_matrix(k)
        assert np.allclose(S, S.T, atol=1e-12)
        assert np.max(np.abs(S @ S.T - np.eye(k + 1))) < 1e-9

    @pytest.mark.parametrize("k", range(1, 9))
    def test_squares_to_identity(self, k):
        S = s_matrix(k)
        assert np.max(np.abs(S @ S - np.eye(k + 1))) < 1e-9

    def test_bad_level(self):
        with pytest.raises(DomainError):
            s_matrix(0)


class TestVerlinde:
    def test_k1_trivial(self):
        r = verlinde_dim(1, 0, [0, 0, 0])
        assert r.nearest == 1 and r.residual < 1e-9

    @pytest.mark.parametrize("k", range(1, 7))
    def test_three_point_is_admissibility(self, k):
        for trip in itertools.product(range(k + 1), repeat=3):
            v = verlinde_three_point(*trip, k)
            expected = 1 if su2_fusion_admissible(*trip, k) else 0
            assert abs(v - expected) < 1e-9

    @pytest.mark.parametrize("k", range(1, 5))
    def test_torus_counts_modules(self, k):
        r = verlinde_dim(k, 1, [])
        assert r.nearest == k + 1 and r.residual < 1e-6

    def test_k1_torus_is_two(self):
        assert verlinde_dim(1, 1, []).nearest == 2

    def test_higher_genus_positive_integers(self):
        rng = random.Random(2)
        for k in range(1, 5):
            for g in range(0, 4):
                for n in range(0, 5):
                    w = [rng.randint(0, k) for _ in range(n)]
                    r = verlinde_dim(k, g, w)
                    assert r.residual < 1e-6
                    assert r.nearest >= 0

    def test_sewing(self):
        # genus-0 four-point = sum over intermediate channels of three-point products
        k = 4
        for a, b, c, d in itertools.product(range(k + 1), repeat=4):
            four = verlinde_dim(k, 0, [a, b, c, d]).nearest
            sewn = sum(
                su2_fusion_admissible(a, b, x, k) * su2_fusion_admissible(x, c, d, k) for x in range(k + 1)
            )
            assert four == sewn

    def test_bad_genus(self):
        with pytest.raises(DomainError):
            verlinde_dim(2, -1, [])


class TestMinimalFusion:
    def test_sigma_sigma(self):
        assert minimal_fuse("Phi12", 1, 2, 3, 4) == [(1, 1), (1, 3)]

    def test_epsilon_epsilon(self):
        assert minimal_fuse("Phi21", 2, 1, 3, 4) == [(1, 1)]

    def test_identity(self):
        for p, q in [(1, 1), (1, 2), (2, 1), (1, 3)]:
            assert minimal_fuse("Phi11", p, q, 3, 4) == [min((p, q), (3 - p, 4 - q))]

    def test_sigma_epsilon(self):
        # [sigma] x [eps] = [sigma], with eps = Phi_{2,1}
        assert minimal_fuse("Phi21", 1, 2, 3, 4) == [(1, 2)]

    def test_lee_yang(self):
        # M(2,5): Phi_{1,2} x Phi_{1,2} = 1 + Phi_{1,2}
        assert minimal_fuse("Phi12", 1, 2, 2, 5) == [(1, 1), (1, 2)]

    def test_invalid(self):
        with pytest.raises(OutOfTableError):
            minimal_fuse("Phi12", 3, 1, 3, 4)
        with pytest.raises(DomainError):
            minimal_fuse("Phi33", 1, 1, 3, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.data())
def test_verlinde_three_point_property(k, data):
    trip = [data.draw(st.integers(0, k)) for _ in range(3)]
    v = verlinde_three_point(*trip, k)
    assert min(abs(v), abs(v - 1)) < 1e-9
