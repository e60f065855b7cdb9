import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stereo_vqa.domain.errors import DimensionMismatchError, PreconditionError
from stereo_vqa.domain.models import Plane
from stereo_vqa.metrics.disparity import (
    block_disparity_variance,
    estimate_disparity,
    normalize_disparity,
    variance_field,
    variance_term,
)
from synthetic import ramp_disparity, stereo_frame, textured


def window_variance_oracle(samples, block_index, window):
    """Plain double loop over the clamped window."""
    height, width = samples.shape
    cols = width // 4
    row, col = divmod(block_index, cols)
    offset = (window - 4) // 2
    values = []
    for dy in range(window):
        for dx in range(window):
            y = min(max(row * 4 - offset + dy, 0), height - 1)
            x = min(max(col * 4 - offset + dx, 0), width - 1)
            values.append(samples[y, x])
    mean = sum(values) / len(values)
    return sum((value - mean) ** 2 for value in values) / (len(values) - 1)


def test_normalize_divides_by_frame_max():
    nd = normalize_disparity(np.array([[0.0, 64.0], [128.0, 255.0]]))
    np.testing.assert_allclose(nd.plane.samples, [[0.0, 0.2510], [0.5020, 1.0]], atol=1e-4)
    assert nd.source_max == 255.0


def test_normalize_zero_map():
    nd = normalize_disparity(np.zeros((4, 4)))
    assert nd.source_max == 0.0
    assert not nd.plane.samples.any()


def test_normalize_constant_map():
    np.testing.assert_array_equal(normalize_disparity(np.full((4, 8), 9.0)).plane.samples, np.ones((4, 8)))


@settings(deadline=None, max_examples=40)
@given(st.integers(-6, 6))
def test_normalize_ignores_power_of_two_scale(exponent):
    raw = ramp_disparity(32)
    scaled = raw * 2.0**exponent
    np.testing.assert_array_equal(normalize_disparity(scaled).plane.samples, normalize_disparity(raw).plane.samples)
    assert variance_term(normalize_disparity(scaled)) == variance_term(normalize_disparity(raw))


def test_normalize_scale_invariance_for_any_factor():
    raw = ramp_disparity(32)
    assert variance_term(normalize_disparity(raw * 3.7)) == pytest.approx(variance_term(normalize_disparity(raw)), abs=1e-12)


def test_block_counts():
    nd = normalize_disparity(np.ones((18, 26)))
    assert (nd.block_rows, nd.block_cols, nd.block_count) == (4, 6, 24)


def test_block_variance_of_constant_region():
    nd = normalize_disparity(np.full((32, 32), 5.0))
    assert block_disparity_variance(nd, 10) == 0.0


def test_block_variance_two_point_window():
    samples = np.zeros((28, 28))
    samples[:, 14:] = 1.0
    nd = normalize_disparity(samples)
    # Block (3, 3) sits at the centre, so its window covers the whole map.
    assert block_disparity_variance(nd, 3 * 7 + 3) == pytest.approx(392 * 0.5 / 783, abs=1e-15)


def test_block_variance_matches_loop_oracle(rng):
    nd = normalize_disparity(rng.integers(0, 256, size=(800, 480)).astype(float))
    for block_index in rng.integers(0, nd.block_count, size=100):
        expected = window_variance_oracle(nd.plane.samples, int(block_index), 28)
        assert block_disparity_variance(nd, int(block_index)) == pytest.approx(expected, abs=1e-12)


def test_block_variance_rejects_bad_arguments():
    nd = normalize_disparity(np.ones((8, 8)))
    with pytest.raises(PreconditionError):
        block_disparity_variance(nd, 4)
    with pytest.raises(PreconditionError):
        block_disparity_variance(nd, 0, window=3)


@pytest.mark.parametrize("window", [4, 6, 28, 55])
def test_variance_field_agrees_with_single_blocks(rng, window):
    nd = normalize_disparity(rng.uniform(0, 40, size=(36, 44)))
    field = variance_field(nd, window)
    assert field.sigma2.shape == (nd.block_rows, nd.block_cols)
    for index in range(nd.block_count):
        row, col = divmod(index, nd.block_cols)
        assert field.sigma2[row, col] == pytest.approx(block_disparity_variance(nd, index, window), abs=1e-12)
    assert field.max_sigma2 == field.sigma2.max()


def test_variance_term_of_constant_map_is_zero():
    assert variance_term(normalize_disparity(np.full((64, 64), 3.0))) == 0.0


def test_variance_term_with_equal_block_variances():
    tile = np.array([[0.0, 1.0, 2.0, 3.0], [3.0, 2.0, 1.0, 0.0], [1.0, 3.0, 0.0, 2.0], [2.0, 0.0, 3.0, 1.0]])
    nd = normalize_disparity(np.tile(tile, (5, 7)))
    assert variance_term(nd, window=4) == pytest.approx(1.0, abs=1e-12)


def test_variance_term_on_random_map(rng):
    nd = normalize_disparity(textured(rng, 48, 64, 0.0, 60.0))
    sigma2 = [block_disparity_variance(nd, index) for index in range(nd.block_count)]
    expected = sum(sigma2) / (len(sigma2) * max(sigma2))
    value = variance_term(nd)
    assert 0.0 < value < 1.0
    assert value == pytest.approx(expected, abs=1e-12)


def test_estimate_identical_views_gives_zero(rng):
    luma = textured(rng, 32, 48)
    assert not estimate_disparity(luma, luma, 16).samples.any()


def test_estimate_recovers_shift(rng):
    frame = stereo_frame(rng, size=64, shift=7)
    disparity = estimate_disparity(frame.left.y, frame.right.y, 16)
    assert disparity.shape == (64, 64)
    np.testing.assert_array_equal(disparity.samples[:, 8:], np.full((64, 56), 7.0))


def test_estimate_flat_views_ties_to_zero():
    flat = np.full((24, 24), 90.0)
    assert not estimate_disparity(flat, flat, 32).samples.any()


def test_estimate_covers_partial_blocks(rng):
    luma = textured(rng, 20, 30)
    assert estimate_disparity(luma, luma, 4).shape == (20, 30)


def test_estimate_rejects_bad_arguments():
    with pytest.raises(PreconditionError):
        estimate_disparity(np.zeros((8, 8)), np.zeros((8, 8)), 0)
    with pytest.raises(PreconditionError):
        estimate_disparity(np.zeros((8, 8)), np.zeros((8, 8)), 129)
    with pytest.raises(DimensionMismatchError):
        estimate_disparity(np.zeros((8, 8)), np.zeros((8, 16)), 4)


def test_estimated_map_is_a_plane(rng):
    luma = textured(rng, 16, 16)
    assert isinstance(estimate_disparity(luma, luma, 2), Plane)
