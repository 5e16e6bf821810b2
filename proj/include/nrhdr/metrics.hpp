// Copyright 2026 The nrhdr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "nrhdr/image.hpp"
#include "nrhdr/sensor.hpp"

namespace nrhdr {

/// Mapping between relative radiance and absolute display luminance:
/// relative 0 -> black_cd_m2, relative 1 -> peak_cd_m2, linear in between.
struct DisplayModel {
    double peak_cd_m2 = 1e4;
    double black_cd_m2 = 0.005;

    void validate() const;
    double to_luminance(double relative) const {
        return black_cd_m2 + relative * (peak_cd_m2 - black_cd_m2);
    }
};

/// 10*log10(peak^2 / MSE); +infinity when the images are identical.
double psnr(const HdrImage& reference, const HdrImage& test, double peak);

/// PU21 perceptually uniform encoding parameters. Constants follow the
/// published reference implementation (https://github.com/gfxdisp/pu21);
/// see data/pu21_banding_glare.conf for the shipped coefficient file.
struct Pu21Coeffs {
    std::string variant;
    std::array<double, 7> p{};
    double l_min = 0.005;   // cd/m^2, clamp range of the fit
    double l_max = 10000.0;
};

/// Built-in "banding_glare" variant, the default for PSNR-style use.
const Pu21Coeffs& pu21_banding_glare();

/// Load a coefficient set from a key-value file (variant, p1..p7, l_min, l_max).
Pu21Coeffs load_pu21_coeffs(const std::filesystem::path& path);

/// Monotone luminance (cd/m^2) -> PU units encoding; input is clamped to
/// [l_min, l_max].
double pu21_encode(double luminance_cd_m2, const Pu21Coeffs& coeffs = pu21_banding_glare());

/// PSNR in the PU21 domain: both images are mapped to luminance through the
/// display model and encoded; peak = encode(peak_cd_m2) - encode(black_cd_m2).
double pu21_psnr(const HdrImage& reference, const HdrImage& test,
                 const DisplayModel& display,
                 const Pu21Coeffs& coeffs = pu21_banding_glare());

/// Global Reinhard operator: L_d = L' / (1 + L') with L' = a*L/L_avg,
/// key a = 0.18 and L_avg the log-average luminance. Output in [0,1].
HdrImage reinhard_tonemap(const HdrImage& image);

/// Exposure-state visualization: small-pixel cell red/green when its reading
/// is over/under-exposed, large-pixel cells yellow/blue, neutral gray
/// elsewhere.
ColorImage clipping_mask(const SampledFrame& frame);

}  // namespace nrhdr
