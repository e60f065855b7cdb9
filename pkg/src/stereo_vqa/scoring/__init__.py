from stereo_vqa.scoring.hv3d import hv3d_frame, hv3d_max, hv3d_normalize, hv3d_sequence, weighted_contributions
from stereo_vqa.scoring.pipeline import load_stereo_sequence, score_specs

__all__ = [
    "hv3d_frame",
    "hv3d_max",
    "hv3d_normalize",
    "hv3d_sequence",
    "load_stereo_sequence",
    "score_specs",
    "weighted_contributions",
]
