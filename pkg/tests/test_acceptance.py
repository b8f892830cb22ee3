"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.
"""

import math
import time

import numpy as np
import pytest

from cips import (
    CipsParams,
    CipsVolume,
    FrameStack,
    PhantomSpec,
    ViewSpec,
    amplify_saturation,
    compute_cips,
    generate,
    hsb_to_rgb,
    interpolate_stack,
    invert_stack,
    mip_axis,
    mip_oblique,
    render_rgb,
    score_hue_fidelity,
    write_rgb,
)

from test_colorspace import load_table, oracle_hsb_to_rgb
from test_volume_render import brute_force_axis_mip


def report(n, text):
    print(f"PASS criterion {n}: {text}")


def test_criterion_1_frame_count_anchor(rng):
    start = time.perf_counter()
    stack = FrameStack(rng.integers(0, 256, (29, 64, 64)).astype(float))
    out = interpolate_stack(stack, 4)
    elapsed = time.perf_counter() - start
    assert out.frame_count == 113
    assert elapsed < 1.0
    report(1, f"29 frames at factor 4 -> {out.frame_count} frames in {elapsed:.3f}s")


def test_criterion_2_eq1_oracle_equivalence(rng):
    start = time.perf_counter()
    period = 22.0
    checked = 0
    for length in rng.integers(1, 17, size=40):
        length = int(length)
        n_series = 25
        data = rng.integers(0, 65536, (length, 1, n_series)).astype(float)
        img = compute_cips(FrameStack(data), CipsParams(period=period))

        # Independent brute-force loop over the raw series.
        maxes = [max(data[:, 0, j]) for j in range(n_series)]
        g = max(maxes)
        for j in range(n_series):
            series = [data[t, 0, j] for t in range(length)]
            mx, mn = max(series), min(series)
            arg = series.index(mx)
            brightness = mx / g if g > 0 else 0.0
            saturation = (mx - mn) / mx if mx > 0 else 0.0
            hue = arg / period
            hue -= math.floor(hue)
            assert img.hue[0, j] == hue
            assert abs(img.brightness[0, j] - brightness) <= math.ulp(1.0)
            assert abs(img.saturation[0, j] - saturation) <= math.ulp(1.0)
            checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 1000
    assert elapsed < 5.0
    report(2, f"{checked} random series match brute-force Eq.(1) in {elapsed:.2f}s")


def test_criterion_3_grayscale_preservation(rng):
    constants = rng.integers(1, 65536, 64).astype(float)
    g = constants.max()
    data = np.tile(constants.reshape(1, 1, -1), (7, 1, 1))
    img = compute_cips(FrameStack(data), CipsParams(period=7))
    pixels = render_rgb(img).pixels
    for j, c in enumerate(constants):
        q = int(np.floor((c / g) * 255.0 + 0.5))
        assert pixels[0, j].tolist() == [q, q, q]
    report(3, f"{len(constants)} constant series render r=g=b=q(value) exactly")


def test_criterion_4_periodicity_and_injectivity():
    n = 113
    data = np.zeros((n, 1, n))
    for i in range(n):
        data[i, 0, i] = 10.0
    stack = FrameStack(data)

    cycled = render_rgb(compute_cips(stack, CipsParams(period=22.0))).pixels
    for i in range(n - 22):
        assert cycled[0, i].tolist() == cycled[0, i + 22].tolist()

    plain = compute_cips(stack, CipsParams(cycling=False))
    assert len(set(plain.hue[0])) == n
    report(4, "period-22 hue bytes repeat every 22 frames; non-cycling hues all distinct")


def test_criterion_5_colorspace_oracle(rng):
    rows = load_table()
    assert len(rows) == 12 * 11 * 11
    for h, s, b, r, g, bl in rows:
        assert hsb_to_rgb(h, s, b) == (r, g, bl)
    for _ in range(1000):
        h = float(rng.uniform(-2, 2))
        s = float(rng.uniform(0, 1))
        b = float(rng.uniform(0, 1))
        assert hsb_to_rgb(h, s, b) == oracle_hsb_to_rgb(h, s, b)
    report(5, "byte-exact on the 12x11x11 reference grid and 1000 random triples")


def _phantom_spec(**overrides):
    base = dict(
        width=256,
        height=256,
        n_frames=64,
        vessel=((8.0, 8.0), (248.0, 8.0), (248.0, 248.0), (8.0, 248.0)),
        radius=3.0,
        velocity=12.0,
        pulse_width=4,
        peak_intensity=1000,
        background=0,
    )
    base.update(overrides)
    return PhantomSpec(**base)


def test_criterion_6_phantom_hue_fidelity():
    start = time.perf_counter()
    stack, truth = generate(_phantom_spec())
    for period in (22.0, 99.0):
        params = CipsParams(period=period)
        rep = score_hue_fidelity(compute_cips(stack, params), truth, params)
        assert rep.pixels_scored > 1000
        assert rep.max_error == 0.0
        assert rep.exact_matches == rep.pixels_scored
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(6, f"max circular hue error 0 at periods 22 and 99 in {elapsed:.2f}s")


def test_criterion_7_inversion_complement():
    dark, _ = generate(_phantom_spec())
    white, _ = generate(_phantom_spec(white_background=True))
    g = white.frames.max()
    np.testing.assert_array_equal(invert_stack(white).frames + white.frames,
                                  np.full_like(white.frames, g))
    params = CipsParams(period=22.0)
    a = compute_cips(invert_stack(white), params)
    b = compute_cips(dark, params)
    np.testing.assert_array_equal(a.brightness, b.brightness)
    np.testing.assert_array_equal(a.hue, b.hue)
    np.testing.assert_array_equal(a.saturation, b.saturation)
    report(7, "inverted + original = global max; white twin's CIPs bit-identical to dark's")


def test_criterion_8_mip_equivalence(rng):
    for trial in range(3):
        volume = CipsVolume(
            rng.uniform(0.01, 1.0, (32, 32, 32)),
            rng.uniform(0.0, 1.0, (32, 32, 32)),
            rng.uniform(0.0, 1.0, (32, 32, 32)),
        )
        out = mip_axis(volume, "z")
        b, h, s = brute_force_axis_mip(volume, "z")
        np.testing.assert_array_equal(
            render_rgb(out).pixels, render_rgb(type(out)(b, h, s)).pixels
        )
        oblique = mip_oblique(volume, ViewSpec())
        np.testing.assert_array_equal(oblique.brightness, out.brightness)
        np.testing.assert_array_equal(oblique.hue, out.hue)
        np.testing.assert_array_equal(oblique.saturation, out.saturation)
    report(8, "mip_axis matches brute force; identity mip_oblique bit-identical to mip_axis(z)")


def test_criterion_9_determinism_and_performance(rng, tmp_path):
    data = rng.integers(0, 65536, (113, 512, 512)).astype(float)
    params = CipsParams(period=22.0, saturation_gain=1.5, invert=True)

    def run(path):
        stack = invert_stack(FrameStack(data))
        image = amplify_saturation(compute_cips(stack, params), params.saturation_gain)
        write_rgb(render_rgb(image), path)

    start = time.perf_counter()
    run(tmp_path / "a.png")
    elapsed = time.perf_counter() - start
    run(tmp_path / "b.png")
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()
    assert elapsed < 5.0
    report(9, f"113-frame 512x512 pipeline in {elapsed:.2f}s, byte-identical across runs")
