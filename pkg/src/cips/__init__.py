"""Color intensity projections: arrival-time color fusion of grayscale time series."""

from .colorspace import hsb_array_to_rgb, hsb_to_rgb, render_rgb
from .core import (
    CipsImage,
    CipsParams,
    CipsVolume,
    PixelStats,
    amplify_saturation,
    compute_cips,
    compute_cips_volume,
    hue_from_index,
    pixel_stats,
)
from .phantom import ArrivalMap, HueFidelityReport, PhantomSpec, generate, score_hue_fidelity
from .preprocess import interpolate_stack, interpolate_volume, invert_stack, invert_volume
from .stack_io import (
    FrameStack,
    RgbImage,
    Volume4D,
    load_stack,
    load_volume4d,
    read_rgb,
    write_rgb,
)
from .volume_render import ViewSpec, mip_axis, mip_oblique, rotation_sequence

__version__ = "0.1.0"

__all__ = [
    "ArrivalMap",
    "CipsImage",
    "CipsParams",
    "CipsVolume",
    "FrameStack",
    "HueFidelityReport",
    "PhantomSpec",
    "PixelStats",
    "RgbImage",
    "ViewSpec",
    "Volume4D",
    "amplify_saturation",
    "compute_cips",
    "compute_cips_volume",
    "generate",
    "hsb_array_to_rgb",
    "hsb_to_rgb",
    "hue_from_index",
    "interpolate_stack",
    "interpolate_volume",
    "invert_stack",
    "invert_volume",
    "load_stack",
    "load_volume4d",
    "mip_axis",
    "mip_oblique",
    "pixel_stats",
    "read_rgb",
    "render_rgb",
    "rotation_sequence",
    "score_hue_fidelity",
    "write_rgb",
]
