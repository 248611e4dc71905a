import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cftkit.errors import DomainError, InsufficientCutoffError
from cftkit.fock import (
    BosonModule,
    FermionModule,
    boson_basis,
    boson_norm,
    boson_virasoro,
    fermion_basis,
    fermion_virasoro,
    hermiticity_defect,
    pseudovacuum_weights,
    virasoro_defect,
    zero_mode_charges,
)

H = F(1, 2)


def diag(op, state):
    col = op.column(state)
    return col.get(tuple(state), 0)


class TestBoson:
    def test_l0_on_vacuum(self):
        for alpha in (F(0), F(1), F(3, 2), F(-2, 7)):
            L0 = boson_virasoro(0, alpha, 3)
            assert L0.column(()) == ({(): alpha**2 / 2} if alpha else {})

    def test_l1_kills_vacuum(self):
        assert boson_virasoro(1, F(3, 2), 3).column(()) == {}

    def test_l_minus_1_entry_by_hand(self):
        # L_{-1} = a_{-1} a_0 + a_{-2} a_1 + ...; on a_{-1}|alpha>:
        # alpha a_{-1}^2 |alpha> + a_{-2} [a_1, a_{-1}] |alpha> = alpha (1,1) + (2,)
        alpha = F(2, 3)
        col = boson_virasoro(-1, alpha, 3).column((1,))
        assert col == {(1, 1): alpha, (2,): 1}
        # <a_{-2} vac | L_{-1} | a_{-1} vac> with <a_{-2}, a_{-2}> = 2
        assert boson_norm((2,)) * col[(2,)] == 2

    def test_norms(self):
        assert boson_norm(()) == 1
        assert boson_norm((2,)) == 2
        assert boson_norm((1, 1)) == 2
        assert boson_norm((3, 1, 1)) == 3 * 2

    def test_grading(self):
        for n in range(-3, 4):
            op = boson_virasoro(n, F(1), 6)
            for (i, j) in op.entries:
                assert op.levels[j] - op.levels[i] == n

    def test_cutoff_too_small(self):
        with pytest.raises(InsufficientCutoffError):
            boson_virasoro(4, F(0), 3)


class TestFermion:
    def test_ns_vacuum_zero_energy(self):
        assert fermion_virasoro(0, "NS", 3).column(()) == {}

    def test_r_vacuum(self):
        L0 = fermion_virasoro(0, "R", 3)
        assert L0.column(()) == {(): F(1, 16)}
        assert L0.column((F(0),)) == {(F(0),): F(1, 16)}

    def test_ns_two_fermion_state(self):
        L0 = fermion_virasoro(0, "NS", 3)
        s = (F(1, 2), F(3, 2))
        assert L0.column(s) == {s: 2}

    def test_l0_counts_level(self):
        for sector, shift in (("NS", 0), ("R", F(1, 16))):
            L0 = fermion_virasoro(0, sector, 4)
            for s, lv in zip(L0.basis, L0.levels):
                assert L0.column(s) == ({s: lv + shift} if lv + shift else {})

    @staticmethod
    def _gen_count(parts, cutoff):
        # number of distinct-part sums <= cutoff, from prod (1 + q^part)
        poly = {F(0): 1}
        for p in parts:
            for e, c in list(poly.items()):
                poly[e + p] = poly.get(e + p, 0) + c
        return sum(c for e, c in poly.items() if e <= cutoff)

    def test_basis_sizes(self):
        for cut in range(5):
            ns_parts = [F(2 * k + 1, 2) for k in range(cut + 1)]
            assert len(fermion_basis("NS", cut)) == self._gen_count(ns_parts, cut)
            r_parts = [F(k) for k in range(1, cut + 1)]
            assert len(fermion_basis("R", cut)) == 2 * self._gen_count(r_parts, cut)

    def test_bad_sector(self):
        with pytest.raises(DomainError):
            fermion_basis("X", 2)


class TestDefect:
    @pytest.mark.parametrize("alpha", [F(0), F(1), F(3, 2)])
    def test_boson(self, alpha):
        mod = BosonModule(alpha)
        for n in range(-3, 4):
            for m in range(-3, 4):
                assert virasoro_defect(n, m, mod, 8).is_zero()

    @pytest.mark.parametrize("sector", ["NS", "R"])
    def test_fermion(self, sector):
        mod = FermionModule(sector)
        for n in range(-3, 4):
            for m in range(-3, 4):
                assert virasoro_defect(n, m, mod, 8).is_zero()

    def test_wrong_central_charge_detected(self):
        # pretending the boson has c = 1/2 leaves a nonzero defect at (2, -2)
        class Wrong(BosonModule):
            central_charge = F(1, 2)

        assert not virasoro_defect(2, -2, Wrong(F(0)), 8).is_zero()

    def test_cutoff_too_small(self):
        with pytest.raises(InsufficientCutoffError):
            virasoro_defect(3, 3, BosonModule(), 5)


class TestHermiticity:
    @pytest.mark.parametrize(
        "mod", [BosonModule(F(0)), BosonModule(F(3, 2)), FermionModule("NS"), FermionModule("R")]
    )
    def test_adjoint(self, mod):
        for n in range(1, 4):
            assert hermiticity_defect(n, mod, 7) == []


class TestPseudovacuum:
    def test_vacuum(self):
        assert pseudovacuum_weights(0, 0, 1.3) == (0, 0, 0, 0)

    def test_spin_is_integer(self):
        rng = random.Random(4)
        for _ in range(50):
            e, m = rng.randint(-5, 5), rng.randint(-5, 5)
            r = rng.uniform(0.3, 4)
            h, hb, H_, P = pseudovacuum_weights(e, m, r)
            assert abs((h - hb) - e * m) < 1e-10
            assert P == e * m
            assert abs(h + hb - H_) < 1e-10

    def test_self_dual_current(self):
        h, hb, _, _ = pseudovacuum_weights(1, 1, math.sqrt(2))
        assert abs(h - 1) < 1e-14 and abs(hb) < 1e-14

    def test_charges_square_to_weights(self):
        a, ab = zero_mode_charges(2, -1, 1.7)
        h, hb, _, _ = pseudovacuum_weights(2, -1, 1.7)
        assert abs(a * a / 2 - h) < 1e-14 and abs(ab * ab / 2 - hb) < 1e-14

    def test_bad_radius(self):
        with pytest.raises(DomainError):
            pseudovacuum_weights(1, 1, 0)


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=5), st.integers(-2, 2), st.integers(-2, 2))
def test_boson_virasoro_property(alpha, n, m):
    assert virasoro_defect(n, m, BosonModule(alpha), 6).is_zero()


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3), st.integers(0, 5))
def test_fermion_grading_property(n, level_cut):
    op = fermion_virasoro(n, "NS", max(abs(n), level_cut))
    for (i, j) in op.entries:
        assert op.levels[j] - op.levels[i] == n
