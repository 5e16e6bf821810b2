# Copyright 2026 The nrhdr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""End-to-end smoke tests of the python module."""
import math

import numpy as np
import pytest

import nrhdr


def mid_camera():
    cam = nrhdr.CameraModel()
    cam.enable_noise = False
    return cam


def test_layout_roundtrip(tmp_path):
    layout = nrhdr.make_layout("nonregular", 16, 16, seed=42)
    again = nrhdr.make_layout("nonregular", 16, 16, seed=42)
    assert np.array_equal(layout.corners, again.corners)
    assert layout.corners.shape == (8, 8)
    assert set(np.unique(layout.corners)) <= {0, 1, 2, 3}

    path = tmp_path / "layout.txt"
    layout.save(path)
    loaded = nrhdr.SensorLayout.load(path)
    assert np.array_equal(loaded.corners, layout.corners)

    small, block = nrhdr.classify_pixels(layout)
    assert small.sum() == 16 * 16 // 4
    assert block.max() == 8 * 8 - 1


def test_acquisition_and_reconstruction():
    img = nrhdr.zoneplate(size=32, lum_max=0.3, gradient=(1.0, 1.0))
    layout = nrhdr.make_layout("nonregular", 32, 32, seed=7)
    cam = mid_camera()
    frame = nrhdr.classify(nrhdr.apply_camera(nrhdr.sample(img, layout), cam), layout, cam)
    assert frame.small.shape == (16, 16)
    assert (frame.small_validity <= 4).all()

    cfg = nrhdr.ReconstructionConfig()
    rec = nrhdr.reconstruct(frame, cfg)
    assert rec.shape == (32, 32)
    assert np.isfinite(rec).all()
    assert nrhdr.psnr(img, rec) > 25.0


def test_constant_image_pipeline():
    img = np.full((16, 16), 0.2)
    layout = nrhdr.make_layout("regular", 16, 16)
    cam = mid_camera()
    frame = nrhdr.classify(nrhdr.apply_camera(nrhdr.sample(img, layout), cam), layout, cam)
    assert (frame.small_validity == int(nrhdr.Validity.VALID)).all()
    rec = nrhdr.reconstruct(frame)
    assert np.abs(rec - 0.2).max() < 1e-6
    assert math.isinf(nrhdr.psnr(img, img))


def test_validity_regimes():
    layout = nrhdr.make_layout("regular", 8, 8)
    cam = mid_camera()
    dark = nrhdr.classify(nrhdr.sample(np.full((8, 8), 0.004), layout), layout, cam)
    assert (dark.small_validity == int(nrhdr.Validity.DISCARDED_UNDEREXPOSED)).all()
    assert (dark.large_validity == int(nrhdr.Validity.VALID)).all()
    mask = nrhdr.clipping_mask(dark)
    assert mask.shape == (8, 8, 3)


def test_stripes_and_coherence():
    img = nrhdr.stripes(64, 2, "vertical", low=0.1, high=0.3)
    assert img[0, 0] == 0.1 and img[0, 1] == 0.3
    layout = nrhdr.make_layout("regular", 64, 64)
    cam = mid_camera()
    frame = nrhdr.classify(nrhdr.sample(img, layout), layout, cam)
    report = nrhdr.coherence_report(nrhdr.naive_zero_fill(frame), 32, 0)
    assert report["max_spurious"] >= 0.5 * report["peak_at_true"]


def test_metrics():
    a = np.full((8, 8), 0.5)
    b = np.full((8, 8), 0.6)
    assert nrhdr.psnr(a, b, peak=1.0) == pytest.approx(20.0, abs=1e-6)
    assert nrhdr.pu21_encode(100.0) == pytest.approx(256.38, abs=0.01)
    tm = nrhdr.reinhard_tonemap(np.full((4, 4), 1.0))
    assert tm[0, 0] == pytest.approx(0.18 / 1.18, abs=1e-5)
    assert nrhdr.pu21_psnr(a, b) > 0


def test_pfm_roundtrip(tmp_path):
    img = np.array([[0.0, 0.5], [1.0, 2.0]])
    path = tmp_path / "img.pfm"
    nrhdr.write_pfm(img, path)
    back = nrhdr.read_pfm(path)
    assert np.array_equal(back, img)
    with pytest.raises(Exception):
        nrhdr.read_pfm(tmp_path / "missing.pfm")


def test_oracle_matches_truth():
    x = np.arange(16)
    img = 0.1 + 0.05 * np.cos(2 * np.pi * x / 8.0)[None, :] * np.ones((16, 1))
    layout = nrhdr.make_layout("nonregular", 16, 16, seed=6)
    cam = mid_camera()
    frame = nrhdr.classify(nrhdr.sample(img, layout), layout, cam)
    patch = nrhdr.oracle_least_squares(frame, (0, 0, 16, 16), k_limit=2)
    assert np.abs(patch - img).max() < 1e-6
