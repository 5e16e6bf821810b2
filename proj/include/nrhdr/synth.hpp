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

#include <vector>

#include "nrhdr/image.hpp"

namespace nrhdr {

/// Radial chirp test pattern with a horizontal luminance ramp. The chirp
/// phase is alpha * r^2 around the center pixel (size/2, size/2), with alpha
/// chosen so the instantaneous frequency at the corner radius reaches
/// chirp_rate x Nyquist.
struct ZoneplateSpec {
    int size = 512;
    double lum_max = 1.0;      // relative peak, maps to the display peak
    double gradient_lo = 0.01; // ramp start at x = 0
    double gradient_hi = 1.0;  // ramp end at x = size-1
    double chirp_rate = 1.0;   // fraction of Nyquist at the corner

    void validate() const;
};

HdrImage zoneplate(const ZoneplateSpec& spec);

enum class StripeOrientation { Vertical, Horizontal };

/// Square wave alternating low/high along the axis perpendicular to the
/// stripes. `size` must be a multiple of `period` (>= 2, even).
HdrImage stripes(int size, int period, StripeOrientation orientation,
                 double low, double high);

/// Spectral coherence measurements around an expected dominant frequency.
/// Energies are |DFT|^2 sums over 3x3 neighborhoods (wrapping); the true
/// peak covers the given frequency and its conjugate, spurious search
/// excludes those neighborhoods and a 3x3 patch around DC.
struct CoherenceReport {
    double peak_at_true = 0.0;
    double max_spurious = 0.0;
    double noise_floor = 0.0;  // median single-bin energy outside all peaks
};

CoherenceReport coherence_report(const HdrImage& image, int freq_x, int freq_y);

/// |DFT|^2 per bin, row-major (ku rows, kv columns), unnormalized.
std::vector<double> power_spectrum(const HdrImage& image);

}  // namespace nrhdr
