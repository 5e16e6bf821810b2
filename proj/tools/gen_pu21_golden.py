#!/usr/bin/env python3
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
"""Regenerate tests/data/pu21_golden.csv from the PU21 reference constants.

The encoding follows the public PU21 reference implementation
(https://github.com/gfxdisp/pu21, pu21_encoder.m), variant "banding_glare":

    V(Y) = p7 * (((p1 + p2*Y^p4) / (1 + p3*Y^p4))^p5 - p6)

with Y clamped to [0.005, 10000] cd/m^2.
"""
import math
import pathlib

P = [0.353487901, 0.3734658629, 8.277049286e-05, 0.9062562627,
     0.09150303166, 0.9099517204, 596.3148142]
L_MIN, L_MAX = 0.005, 10000.0


def encode(y: float) -> float:
    y = min(max(y, L_MIN), L_MAX)
    t = y ** P[3]
    return P[6] * (((P[0] + P[1] * t) / (1.0 + P[2] * t)) ** P[4] - P[5])


def main() -> None:
    # 60 log-spaced probes over the clamp range plus anchor luminances
    probes = [L_MIN * (L_MAX / L_MIN) ** (i / 59.0) for i in range(60)]
    probes += [L_MIN, 1.0, 100.0, L_MAX]
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "pu21_golden.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w") as f:
        f.write("luminance_cd_m2,pu\n")
        for y in probes:
            f.write(f"{y!r},{encode(y)!r}\n")
    print(f"wrote {out} ({len(probes)} rows)")
    for y in (L_MIN, 100.0, L_MAX):
        print(f"  encode({y}) = {encode(y)}")
    assert encode(100.0) - 256.0 < 1.0 and math.isfinite(encode(L_MAX))


if __name__ == "__main__":
    main()
