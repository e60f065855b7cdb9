from stereo_vqa.media.blocks import block_at, block_grid, gather_blocks
from stereo_vqa.media.pgm import decode_pgm, encode_pgm, load_disparity_pgm, load_disparity_sequence, write_pgm
from stereo_vqa.media.yuv import load_yuv_sequence, read_yuv_frames, write_yuv_sequence

__all__ = [
    "block_at",
    "block_grid",
    "decode_pgm",
    "encode_pgm",
    "gather_blocks",
    "load_disparity_pgm",
    "load_disparity_sequence",
    "load_yuv_sequence",
    "read_yuv_frames",
    "write_pgm",
    "write_yuv_sequence",
]
