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
#include <cstdint>
#include <vector>

#include "nrhdr/image.hpp"
#include "nrhdr/layout.hpp"

namespace nrhdr {

/// Saturation / noise thresholds and noise generation parameters, all in
/// relative units where full scale is 1.0.
struct CameraModel {
    double sat_rel = 0.97;          // upper clipping boundary
    double noise_floor_rel = 0.005; // lower validity threshold
    double photon_scale = 10000.0;  // expected photons at relative radiance 1.0
    double read_sigma_rel = 0.002;  // additive Gaussian sigma
    bool enable_noise = true;

    void validate() const;
};

/// Classification of one pixel reading after the camera model.
enum class Validity : std::uint8_t {
    Valid,
    DiscardedOverexposed,
    DiscardedUnderexposed,
    KeptDespiteClip,   // clipped reading retained as fallback
    KeptDespiteNoise,  // noise-dominated reading retained as fallback
};

const char* to_string(Validity v);

/// A reading takes part in reconstruction unless it was discarded.
inline bool is_retained(Validity v) {
    return v != Validity::DiscardedOverexposed &&
           v != Validity::DiscardedUnderexposed;
}

/// Per-block photometric readings: small = radiance at the corner cell,
/// large = sum over the three cells of the L-shaped pixel.
struct RawMeasurements {
    int block_cols = 0;
    int block_rows = 0;
    std::vector<double> small;
    std::vector<double> large;

    int block_count() const { return block_cols * block_rows; }
};

/// Camera-processed readings with per-reading validity. All readings are
/// clipped to [0, sat_rel]; every block retains at least one reading.
struct SampledFrame {
    SensorLayout layout;
    std::vector<double> small;
    std::vector<double> large;
    std::vector<Validity> small_validity;
    std::vector<Validity> large_validity;

    int block_count() const { return layout.block_count(); }
};

/// Ideal (noiseless, unclipped) measurement of an image through a layout.
RawMeasurements sample(const HdrImage& image, const SensorLayout& layout);

/// Apply shot noise (Poisson), readout noise (Gaussian) and saturation
/// clipping. Each block's draws derive deterministically from
/// (noise_seed, block index); with enable_noise off only the clip applies.
RawMeasurements apply_camera(const RawMeasurements& meas, const CameraModel& cam,
                             std::uint64_t noise_seed);

/// Validity classification per Table-I-style intensity regimes, with the
/// fallback rules for blocks where both readings fail.
SampledFrame classify(const RawMeasurements& meas, const SensorLayout& layout,
                      const CameraModel& cam);

/// One linear constraint on the HR grid: the (unit-weight) sum of the
/// member cells equals `value`.
struct GridConstraint {
    std::array<std::array<int, 2>, 3> cells;  // (x, y) pairs
    int cell_count = 0;                       // 1 (small) or 3 (large)
    double value = 0.0;
    bool fallback = false;  // from a Kept* reading
    std::int32_t block = 0;
};

/// Expand retained readings into grid constraints; discarded readings
/// contribute nothing.
std::vector<GridConstraint> expand_to_grid(const SampledFrame& frame);

/// Paint retained readings back onto the HR grid: small readings at their
/// cell, large readings spread as value/3 over their three cells, zeros at
/// cells of discarded readings. This is the spectrum-analysis view of the
/// sampled signal, not a reconstruction.
HdrImage naive_zero_fill(const SampledFrame& frame);

}  // namespace nrhdr
