import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cips import (
    CipsImage,
    CipsParams,
    Volume4D,
    amplify_saturation,
    compute_cips,
    compute_cips_volume,
    hue_from_index,
    pixel_stats,
)

from conftest import make_stack


class TestPixelStats:
    def test_first_occurrence_argmax(self):
        stats = pixel_stats([3, 7, 7, 2])
        assert (stats.max_ip, stats.min_ip, stats.argmax_index) == (7, 2, 1)

    def test_singleton(self):
        stats = pixel_stats([5])
        assert (stats.max_ip, stats.min_ip, stats.argmax_index) == (5, 5, 0)

    def test_constant_zero(self):
        stats = pixel_stats([0, 0, 0])
        assert (stats.max_ip, stats.min_ip, stats.argmax_index) == (0, 0, 0)

    def test_empty_series(self):
        with pytest.raises(ValueError, match="empty series"):
            pixel_stats([])


class TestHueFromIndex:
    def test_index_zero_is_red(self):
        assert hue_from_index(0, 22) == 0.0
        assert hue_from_index(0, 99) == 0.0

    def test_half_period(self):
        assert hue_from_index(11, 22) == 0.5

    def test_wraps_to_red(self):
        assert hue_from_index(22, 22) == 0.0

    def test_bad_period(self):
        with pytest.raises(ValueError):
            hue_from_index(1, 0)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 500), st.integers(1, 200), st.integers(1, 5))
    def test_periodicity_within_quotient_ulp(self, index, period, n):
        a = hue_from_index(index, period)
        b = hue_from_index(index + n * period, period)
        # The only rounding is in the larger quotient before the wrap.
        assert abs(a - b) <= np.spacing((index + n * period) / period)


class TestComputeCips:
    def test_single_bright_pixel(self):
        # One pixel [0, 10, 0] in a stack whose global MaxIP is 10.
        data = np.zeros((3, 1, 2))
        data[1, 0, 0] = 10.0
        img = compute_cips(make_stack(data), CipsParams(period=99))
        assert img.brightness[0, 0] == 1.0
        assert img.saturation[0, 0] == 1.0
        assert img.hue[0, 0] == 1 / 99

    def test_constant_series_is_gray(self):
        data = np.full((3, 1, 1), 7.0)
        img = compute_cips(make_stack(data), CipsParams(period=3))
        assert img.saturation[0, 0] == 0.0
        assert img.brightness[0, 0] == 1.0

    def test_all_zero_series(self):
        data = np.zeros((4, 2, 2))
        data[2, 1, 1] = 5.0  # keep the global max positive
        img = compute_cips(make_stack(data), CipsParams(period=4))
        assert img.brightness[0, 0] == 0.0
        assert img.saturation[0, 0] == 0.0
        assert img.hue[0, 0] == 0.0

    def test_all_zero_stack_black(self):
        img = compute_cips(make_stack(np.zeros((3, 2, 2))), CipsParams(period=3))
        assert np.all(img.brightness == 0.0)

    def test_no_cycle_uses_frame_count(self):
        data = np.zeros((5, 1, 5))
        for i in range(5):
            data[i, 0, i] = 10.0
        img = compute_cips(make_stack(data), CipsParams(cycling=False))
        np.testing.assert_array_equal(img.hue[0], np.arange(5) / 5)

    def test_non_cycling_injectivity(self):
        n = 113
        data = np.zeros((n, 1, n))
        for i in range(n):
            data[i, 0, i] = 1.0
        img = compute_cips(make_stack(data), CipsParams(cycling=False))
        assert len(set(img.hue[0])) == n

    def test_scaling_invariance_power_of_two(self, rng):
        data = rng.integers(0, 4096, (6, 8, 8)).astype(float)
        params = CipsParams(period=6)
        base = compute_cips(make_stack(data), params)
        for c in (0.25, 2.0, 64.0):
            scaled = compute_cips(make_stack(c * data), params)
            np.testing.assert_array_equal(scaled.hue, base.hue)
            np.testing.assert_array_equal(scaled.saturation, base.saturation)
            np.testing.assert_array_equal(scaled.brightness, base.brightness)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 65535), min_size=1, max_size=8), min_size=1, max_size=8))
    def test_ranges_always_hold(self, rows):
        width = max(len(r) for r in rows)
        data = np.zeros((len(rows), 1, width))
        for i, r in enumerate(rows):
            data[i, 0, : len(r)] = r
        img = compute_cips(make_stack(data), CipsParams(period=3.5))
        assert np.all((img.brightness >= 0) & (img.brightness <= 1))
        assert np.all((img.saturation >= 0) & (img.saturation <= 1))
        assert np.all((img.hue >= 0) & (img.hue < 1))
        assert np.all(img.saturation[img.brightness == 0] == 0)


class TestComputeCipsVolume:
    def test_single_timepoint(self, rng):
        data = rng.integers(1, 100, (1, 3, 4, 4)).astype(float)
        out = compute_cips_volume(Volume4D(data), CipsParams(period=1))
        assert np.all(out.saturation == 0.0)
        assert np.all(out.hue == 0.0)
        np.testing.assert_array_equal(out.brightness, data[0] / data.max())

    def test_voxel_series(self):
        data = np.zeros((3, 1, 1, 2))
        data[:, 0, 0, 0] = [0, 8, 4]
        data[:, 0, 0, 1] = [0, 8, 4]
        out = compute_cips_volume(Volume4D(data), CipsParams(period=3))
        assert out.hue[0, 0, 0] == 1 / 3
        assert out.saturation[0, 0, 0] == 1.0

    def test_identical_series_identical_output(self):
        data = np.zeros((3, 1, 2, 1))
        data[:, 0, 0, 0] = [1, 9, 2]
        data[:, 0, 1, 0] = [1, 9, 2]
        out = compute_cips_volume(Volume4D(data), CipsParams(period=3))
        assert out.brightness[0, 0, 0] == out.brightness[0, 1, 0]
        assert out.hue[0, 0, 0] == out.hue[0, 1, 0]
        assert out.saturation[0, 0, 0] == out.saturation[0, 1, 0]


class TestAmplifySaturation:
    def _image(self, s):
        shape = np.shape(s) or (1, 1)
        return CipsImage(np.ones(shape), np.zeros(shape), np.asarray(s, float).reshape(shape))

    def test_doubling(self):
        out = amplify_saturation(self._image([[0.3]]), 2.0)
        assert out.saturation[0, 0] == 0.6

    def test_clamped_at_one(self):
        out = amplify_saturation(self._image([[0.8]]), 2.0)
        assert out.saturation[0, 0] == 1.0

    def test_gain_one_identity(self):
        img = self._image([[0.4, 0.9]])
        out = amplify_saturation(img, 1.0)
        np.testing.assert_array_equal(out.saturation, img.saturation)
        np.testing.assert_array_equal(out.brightness, img.brightness)
        np.testing.assert_array_equal(out.hue, img.hue)

    def test_negative_gain(self):
        with pytest.raises(ValueError, match="invalid gain"):
            amplify_saturation(self._image([[0.5]]), -1.0)


class TestCipsParams:
    def test_rejects_bad_period(self):
        with pytest.raises(ValueError):
            CipsParams(period=0)

    def test_rejects_negative_gain(self):
        with pytest.raises(ValueError, match="invalid gain"):
            CipsParams(period=22, saturation_gain=-0.5)

    def test_cycling_requires_period(self):
        with pytest.raises(ValueError):
            CipsParams().effective_period(10)

    def test_fractional_period_allowed(self):
        assert CipsParams(period=22.5).effective_period(113) == 22.5
