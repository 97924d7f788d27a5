import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxseg import (
    Gaussian,
    Interval,
    ParamPair,
    glr_statistic,
    max_subarray,
    max_subarray_constrained,
    max_subarray_penalized,
)
from oracles import brute_max_subarray

finite_weights = st.lists(
    st.one_of(
        st.integers(min_value=-9, max_value=9).map(float),
        st.floats(min_value=-10, max_value=10, allow_nan=False),
    ),
    min_size=1,
    max_size=24,
)


class TestMaxSubarray:
    def test_mixed_signs(self):
        sol = max_subarray([1, -2, 3, 4, -1])
        assert (sol.interval.lo, sol.interval.hi) == (2, 3)
        assert sol.raw_weight == 7
        assert sol.penalized_weight == 7

    def test_single_element(self):
        sol = max_subarray([5])
        assert (sol.interval.lo, sol.interval.hi) == (0, 0)
        assert sol.raw_weight == 5

    def test_all_negative_picks_max_element(self):
        sol = max_subarray([-3, -1, -2])
        assert (sol.interval.lo, sol.interval.hi) == (1, 1)
        assert sol.raw_weight == -1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            max_subarray([])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            max_subarray([1.0, float("nan")])

    def test_tie_breaks_to_shortest_then_leftmost(self):
        sol = max_subarray([2.0, -2.0, 2.0])
        assert (sol.interval.lo, sol.interval.hi) == (0, 0)

    @given(finite_weights)
    def test_matches_brute_force(self, values):
        sol = max_subarray(values)
        lo, hi, exact = brute_max_subarray(values)
        assert (sol.interval.lo, sol.interval.hi) == (lo, hi)
        assert sol.raw_weight == exact


class TestMaxSubarrayPenalized:
    def test_small_penalty_keeps_whole_array(self):
        sol = max_subarray_penalized([2, 0, 2], 0.5)
        assert (sol.interval.lo, sol.interval.hi) == (0, 2)
        assert sol.penalized_weight == pytest.approx(2.5, abs=1e-12)
        assert sol.raw_weight == pytest.approx(4.0, abs=1e-12)

    def test_zero_penalty_equals_plain(self):
        values = [3.5, -1.0, 2.0, -4.0, 1.0]
        assert max_subarray_penalized(values, 0.0) == max_subarray(values)

    def test_large_penalty_forces_leftmost_singleton(self):
        sol = max_subarray_penalized([2, 0, 2], 3)
        assert (sol.interval.lo, sol.interval.hi) == (0, 0)
        assert sol.penalized_weight == pytest.approx(-1.0, abs=1e-12)

    def test_non_finite_delta_rejected(self):
        with pytest.raises(ValueError):
            max_subarray_penalized([1.0], float("inf"))

    @given(finite_weights, st.floats(min_value=-5, max_value=5, allow_nan=False))
    def test_matches_brute_force(self, values, delta):
        sol = max_subarray_penalized(values, delta)
        lo, hi, exact = brute_max_subarray(values, delta=delta)
        assert (sol.interval.lo, sol.interval.hi) == (lo, hi)
        assert sol.penalized_weight == exact

    @given(finite_weights, st.floats(min_value=-5, max_value=5, allow_nan=False))
    def test_shift_identity_is_exact(self, values, delta):
        shifted = np.asarray(values, dtype=float) - delta
        assert (
            max_subarray_penalized(values, delta).penalized_weight
            == max_subarray(shifted).raw_weight
        )

    @given(finite_weights)
    def test_value_and_length_monotone_in_delta(self, values):
        deltas = np.linspace(-2.0, max(max(values), -2.0) + 1.0, 12)
        sols = [max_subarray_penalized(values, d) for d in deltas]
        for a, b in zip(sols, sols[1:]):
            assert b.penalized_weight <= a.penalized_weight + 1e-9
            assert b.interval.length <= a.interval.length

    def test_penalized_raw_consistency(self):
        values = [0.3, -1.2, 2.5, 0.7, -0.4, 1.1]
        for delta in (0.0, 0.3, 1.0, 2.7):
            sol = max_subarray_penalized(values, delta)
            n = sol.interval.length
            assert sol.penalized_weight == pytest.approx(
                sol.raw_weight - delta * n, abs=1e-9 * n
            )


class TestMaxSubarrayConstrained:
    def test_budget_two(self):
        sol = max_subarray_constrained([1, -2, 3, 4, -1, 5], 2)
        assert (sol.interval.lo, sol.interval.hi) == (2, 3)
        assert sol.raw_weight == 7

    def test_budget_full_length(self):
        sol = max_subarray_constrained([1, -2, 3, 4, -1, 5], 6)
        assert (sol.interval.lo, sol.interval.hi) == (2, 5)
        assert sol.raw_weight == 11

    def test_budget_one_picks_max_element(self):
        sol = max_subarray_constrained([1, -2, 3, 4, -1, 5], 1)
        assert (sol.interval.lo, sol.interval.hi) == (5, 5)
        assert sol.raw_weight == 5

    @pytest.mark.parametrize("k", [0, 7, -1])
    def test_budget_out_of_range_rejected(self, k):
        with pytest.raises(ValueError):
            max_subarray_constrained([1, -2, 3, 4, -1, 5], k)

    @given(finite_weights, st.data())
    def test_matches_brute_force(self, values, data):
        k = data.draw(st.integers(min_value=1, max_value=len(values)))
        sol = max_subarray_constrained(values, k)
        lo, hi, exact = brute_max_subarray(values, max_len=k)
        assert (sol.interval.lo, sol.interval.hi) == (lo, hi)
        assert sol.raw_weight == exact
        assert sol.interval.length <= k

    @given(finite_weights)
    @settings(max_examples=50)
    def test_value_monotone_in_budget(self, values):
        n = len(values)
        best = [max_subarray_constrained(values, k).raw_weight for k in range(1, n + 1)]
        for a, b in zip(best, best[1:]):
            assert b >= a - 1e-12
        free_len = max_subarray(values).interval.length
        for k in range(free_len, n + 1):
            assert best[k - 1] == best[n - 1]


class TestGlrStatistic:
    def test_gaussian_unit_shift(self):
        pair = ParamPair.from_means(Gaussian(1.0), 0.0, 1.0)
        assert glr_statistic([2, 0, 2], pair) == pytest.approx(2.5, abs=1e-12)

    def test_background_only_scores_zero(self):
        pair = ParamPair.from_means(Gaussian(1.0), 0.0, 1.0)
        assert glr_statistic([0.0, 0.0, 0.0, 0.0], pair) == 0.0

    def test_linear_in_parameter_gap_at_fixed_delta(self):
        values = [0.4, -0.3, 1.2, 0.1]
        narrow = ParamPair.from_means(Gaussian(1.0), -1.0, 1.0)  # delta = 0
        wide = ParamPair.from_means(Gaussian(1.0), -2.0, 2.0)  # delta = 0
        assert narrow.delta == wide.delta == 0.0
        assert glr_statistic(values, wide) == 2.0 * glr_statistic(values, narrow)

    def test_reversed_parameters_rejected(self):
        class FakePair:
            eta0, eta1, delta = 1.0, 0.5, 0.75

        with pytest.raises(ValueError):
            glr_statistic([1.0, 2.0], FakePair())


class TestInterval:
    def test_length(self):
        assert Interval(2, 5).length == 4

    @pytest.mark.parametrize("lo,hi", [(-1, 2), (3, 2)])
    def test_invalid_rejected(self, lo, hi):
        with pytest.raises(ValueError):
            Interval(lo, hi)
