"""Tests for trace differences, Hankel determinants, and recurrence detection."""

import random
from fractions import Fraction

import pytest

from doldkit import seqkit
from doldkit.errors import ShortWindowError
from doldkit.lefschetz import (
    Recurrence,
    cyclic_block,
    generating_hankel_test,
    hankel_dets,
    lefschetz_sequence,
    periodic_to_matrices,
    recurrence_detect,
)
from doldkit.seqkit import PeriodicCombination, inverse_C, periodic_expansion

THREE_CYCLE = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
TWO_CYCLE = [[0, 1], [1, 0]]


class TestLefschetzSequence:
    def test_mersenne(self):
        assert lefschetz_sequence([[2]], [[1]], 4) == [1, 3, 7, 15]

    def test_cycle_difference(self):
        assert lefschetz_sequence(THREE_CYCLE, TWO_CYCLE, 6) == [0, -2, 3, -2, 0, 1]

    def test_equal_matrices_cancel(self):
        A = [[3, 1], [2, -2]]
        assert lefschetz_sequence(A, A, 5) == [0] * 5

    def test_empty_second_matrix(self):
        assert lefschetz_sequence([[2]], [], 3) == [2, 4, 8]

    def test_windows_are_dold_and_hankel_vanishes(self):
        rng = random.Random(9)
        for _ in range(100):
            A = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            B = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            window = lefschetz_sequence(A, B, 48)
            assert seqkit.congruence_test(window).ok
            assert generating_hankel_test(window, 3, 5).ok

    def test_diagonal_matrices_give_signed_power_sums(self):
        A = [[2, 0], [0, 3]]
        B = [[5]]
        window = lefschetz_sequence(A, B, 6)
        assert window == [2**n + 3**n - 5**n for n in range(1, 7)]


class TestHankelDets:
    def test_golden_minus_256(self):
        dets = hankel_dets([1, 3, 2, 4, 5, 7, 6, 8, 9], 4)
        assert dets[4] == -256

    def test_all_ones_rank_one(self):
        dets = hankel_dets([1] * 9, 4)
        assert dets[0] == 1
        assert dets[1:] == [0, 0, 0, 0]

    def test_geometric_rank_one(self):
        dets = hankel_dets([1, 2, 4, 8, 16], 2)
        assert dets == [1, 0, 0]

    def test_rational_entries(self):
        dets = hankel_dets([Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], 1)
        assert dets[0] == Fraction(1, 2)
        assert dets[1] == Fraction(1, 2) * Fraction(1, 4) - Fraction(1, 3) ** 2

    def test_short_window_rejected(self):
        with pytest.raises(ShortWindowError):
            hankel_dets([1, 2, 3], 2)


class TestGeneratingHankelTest:
    def test_lucas_minus_scalar_holds(self):
        a = lefschetz_sequence([[1, 1], [1, 0]], [[1]], 13)
        v = generating_hankel_test(a, 2, 4)
        assert v.ok

    def test_raw_window_example_fails_at_four(self):
        # build the window whose generating sequence is the golden list
        c = [1, 3, 2, 4, 5, 7, 6, 8, 9]
        a = [int(x) for x in inverse_C(c)]
        v = generating_hankel_test(a, 4, 0)
        assert (v.ok, v.index, v.witness) == (False, 4, -256)

    def test_zero_window_holds(self):
        v = generating_hankel_test([0] * 13, 2, 4)
        assert v.ok

    def test_short_window_rejected(self):
        with pytest.raises(ShortWindowError):
            generating_hankel_test([1] * 10, 3, 2)

    def test_vanishing_bound_for_random_pairs(self):
        rng = random.Random(10)
        for _ in range(30):
            A = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            B = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            a = lefschetz_sequence(A, B, 17)
            assert generating_hankel_test(a, 3, 5).ok


class TestRecurrenceDetect:
    def test_all_ones(self):
        rec = recurrence_detect([1] * 8, 2)
        assert rec == Recurrence((Fraction(1),))

    def test_fibonacci(self):
        rec = recurrence_detect([1, 1, 2, 3, 5, 8, 13, 21, 34, 55], 3)
        assert rec is not None
        assert rec.coefficients == (1, 1)

    def test_golden_window_has_no_short_recurrence(self):
        assert recurrence_detect([1, 3, 2, 4, 5, 7, 6, 8, 9, 11, 13], 4) is None

    def test_zero_window(self):
        rec = recurrence_detect([0] * 8, 2)
        assert rec is not None and rec.order == 1
        assert rec.coefficients[0] != 0

    def test_minimal_order_reported(self):
        # geometric windows satisfy order 1, so order 2 must not be returned
        rec = recurrence_detect([3**n for n in range(10)], 4)
        assert rec is not None
        assert rec.order == 1
        assert rec.coefficients == (3,)

    def test_validates_on_full_window(self):
        # recurrence holds only from the second term on; the strict
        # convention must reject order 1 and move up
        window = [5, 1, 2, 4, 8, 16, 32, 64, 128, 256]
        rec = recurrence_detect(window, 4)
        if rec is not None:
            assert rec.validates(window)
            assert rec.order > 1

    def test_requires_window_margin(self):
        with pytest.raises(ShortWindowError):
            recurrence_detect([1, 2, 3], 1)

    def test_detected_order_forces_hankel_vanishing(self):
        # the solver route and the determinant route must agree: a window
        # satisfying an order-q recurrence has vanishing determinants m >= q
        rng = random.Random(31)
        for _ in range(25):
            p = rng.randint(1, 3)
            alphas = [Fraction(rng.randint(-3, 3)) for _ in range(p)]
            if alphas[0] == 0:
                alphas[0] = Fraction(1)
            w = [Fraction(rng.randint(-4, 4)) for _ in range(p)]
            while len(w) < 16:
                w.append(sum(alphas[j] * w[len(w) - p + j] for j in range(p)))
            rec = recurrence_detect(w, 5)
            assert rec is not None and rec.order <= p
            dets = hankel_dets(w, 5)
            assert all(dets[m] == 0 for m in range(rec.order, 6))


class TestPeriodicToMatrices:
    def test_single_block(self):
        A, B = periodic_to_matrices(PeriodicCombination({3: 1}))
        assert A == cyclic_block(3)
        assert B == ()

    def test_mixed_signs(self):
        comb = PeriodicCombination({2: -1, 3: 1})
        A, B = periodic_to_matrices(comb)
        assert lefschetz_sequence(A, B, 6) == [0, -2, 3, -2, 0, 1]

    def test_doubled_fixed_point(self):
        A, B = periodic_to_matrices(PeriodicCombination({1: 2}))
        assert A == ((1, 0), (0, 1))
        assert B == ()
        assert lefschetz_sequence(A, B, 4) == [2, 2, 2, 2]

    def test_cyclic_block_trace_is_reg(self):
        for k in range(1, 7):
            A = cyclic_block(k)
            assert lefschetz_sequence(A, [], 2 * k) == seqkit.reg(k, 2 * k)

    def test_round_trip_through_expansion(self):
        rng = random.Random(11)
        for _ in range(25):
            support = rng.sample(range(1, 9), rng.randint(1, 3))
            comb = PeriodicCombination(
                {d: rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]) for d in support}
            )
            A, B = periodic_to_matrices(comb)
            window = lefschetz_sequence(A, B, 16)
            assert periodic_expansion(window, 8) == comb


class TestAbsoluteValuesAreNotDold:
    def test_golden_counterexample(self):
        comb = PeriodicCombination({2: -1, 3: 1})
        window = [abs(x) for x in comb.evaluate(12)]
        assert window[:6] == [0, 2, 3, 2, 0, 1]
        v = seqkit.congruence_test(window)
        assert (v.ok, v.index, v.witness) == (False, 6, -4)
