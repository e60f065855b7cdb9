import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from stereo_vqa.config.models import SsimConstants, VifParams
from stereo_vqa.domain.errors import ConfigurationError, DimensionMismatchError
from stereo_vqa.metrics.ssim import ssim_block, ssim_blocks
from stereo_vqa.metrics.vif import clamp_unit, effective_scale_count, vif
from synthetic import textured

blocks = arrays(np.float64, (4, 4), elements=st.floats(0, 255, allow_nan=False, allow_infinity=False))


def test_ssim_constants():
    constants = SsimConstants()
    assert constants.c1 == pytest.approx(6.5025)
    assert constants.c2 == pytest.approx(58.5225)


def test_ssim_identity(rng):
    block = rng.uniform(0, 255, size=(4, 4))
    assert ssim_block(block, block) == 1.0


def test_ssim_constant_blocks_match_closed_form():
    c1 = SsimConstants().c1
    expected = (2 * 100 * 110 + c1) / (100**2 + 110**2 + c1)
    assert ssim_block(np.full((4, 4), 100.0), np.full((4, 4), 110.0)) == pytest.approx(expected, abs=1e-6)
    assert expected == pytest.approx(0.995476, abs=1e-6)


@settings(deadline=None, max_examples=50)
@given(st.floats(0, 200), st.floats(-50, 50))
def test_ssim_constant_shift_closed_form(level, delta):
    c1 = SsimConstants().c1
    shifted = level + delta
    expected = (2 * level * shifted + c1) / (level**2 + shifted**2 + c1)
    assert ssim_block(np.full((4, 4), level), np.full((4, 4), shifted)) == pytest.approx(expected, rel=1e-12)


@settings(deadline=None, max_examples=100)
@given(blocks, blocks)
def test_ssim_is_symmetric(a, b):
    assert ssim_block(a, b) == ssim_block(b, a)


def test_ssim_noise_scores_below_one(rng):
    block = rng.uniform(50, 200, size=(4, 4))
    noisy = block + rng.normal(0, 8, size=(4, 4))
    assert ssim_block(block, noisy) < 1.0


def test_ssim_rejects_other_shapes():
    with pytest.raises(DimensionMismatchError):
        ssim_block(np.zeros((4, 4)), np.zeros((4, 5)))
    with pytest.raises(DimensionMismatchError):
        ssim_block(np.zeros((8, 8)), np.zeros((8, 8)))


def test_ssim_blocks_vectorises_over_leading_axes(rng):
    a = rng.uniform(0, 255, size=(3, 5, 4, 4))
    b = rng.uniform(0, 255, size=(3, 5, 4, 4))
    scores = ssim_blocks(a, b)
    assert scores.shape == (3, 5)
    assert scores[2, 4] == ssim_block(a[2, 4], b[2, 4])


def test_vif_params_validate():
    with pytest.raises(ConfigurationError):
        VifParams(scale_count=0)
    with pytest.raises(ConfigurationError):
        VifParams(noise_variance=0.0)


@pytest.mark.parametrize(
    "shape, requested, expected",
    [((64, 64), 4, 4), ((8, 8), 4, 3), ((2, 2), 4, 1), ((1, 5), 4, 1), ((32, 400), 4, 4)],
)
def test_effective_scale_count(shape, requested, expected):
    assert effective_scale_count(shape, requested) == expected


def test_vif_identity(rng):
    plane = textured(rng, 64, 64)
    assert vif(plane, plane) == pytest.approx(1.0, abs=1e-9)


def test_vif_identity_on_small_plane(rng):
    plane = textured(rng, 12, 20)
    assert vif(plane, plane) == pytest.approx(1.0, abs=1e-9)


def test_vif_drops_with_heavier_noise(rng):
    plane = textured(rng, 64, 64)
    mild = plane + rng.normal(0, 5, plane.shape)
    heavy = plane + rng.normal(0, 50, plane.shape)
    assert vif(plane, heavy) < vif(plane, mild) < 1.0


def test_vif_flat_planes():
    flat = np.full((32, 32), 128.0)
    assert vif(flat, flat) == 1.0
    assert vif(flat, np.full((32, 32), 90.0)) == 1.0


def test_vif_flat_reference_against_texture(rng):
    flat = np.full((32, 32), 128.0)
    assert vif(flat, textured(rng, 32, 32)) == 0.0


def test_vif_ignores_common_offset(rng):
    reference = textured(rng, 64, 64)
    distorted = reference + rng.normal(0, 10, reference.shape)
    assert vif(reference + 25.0, distorted + 25.0) == pytest.approx(vif(reference, distorted), abs=1e-6)


def test_vif_is_pure(rng):
    reference = textured(rng, 48, 48)
    distorted = reference + rng.normal(0, 10, reference.shape)
    assert vif(reference, distorted) == vif(reference.copy(), distorted.copy())


def test_vif_rejects_mismatched_planes():
    with pytest.raises(DimensionMismatchError):
        vif(np.zeros((8, 8)), np.zeros((8, 10)))


def test_clamp_unit():
    assert clamp_unit(1.2) == 1.0
    assert clamp_unit(-0.1) == 0.0
    assert clamp_unit(0.4) == 0.4
