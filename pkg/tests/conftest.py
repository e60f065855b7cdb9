from __future__ import annotations

import numpy as np
import pytest

from stereo_vqa.domain.models import StereoFrame
from synthetic import stereo_frame


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20130521)


@pytest.fixture()
def textured_stereo(rng: np.random.Generator) -> StereoFrame:
    return stereo_frame(rng)
