import numpy as np
import pytest

from cips import FrameStack


def write_pgm(path, data, maxval=255):
    """Minimal binary PGM writer for test fixtures (big-endian 16-bit)."""
    data = np.asarray(data)
    height, width = data.shape
    dtype = ">u2" if maxval > 255 else np.uint8
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    path.write_bytes(header + data.astype(dtype).tobytes())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_stack(frames) -> FrameStack:
    return FrameStack(np.asarray(frames, dtype=np.float64))
