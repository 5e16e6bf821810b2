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

#include "nrhdr/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nrhdr {

void CameraModel::validate() const {
    if (!(noise_floor_rel > 0.0) || !(noise_floor_rel < sat_rel) ||
        !(sat_rel <= 1.0)) {
        throw std::invalid_argument(
            "camera model requires 0 < noise_floor_rel < sat_rel <= 1");
    }
    if (!(photon_scale > 0.0)) {
        throw std::invalid_argument("photon_scale must be > 0");
    }
    if (!(read_sigma_rel >= 0.0)) {
        throw std::invalid_argument("read_sigma_rel must be >= 0");
    }
}

const char* to_string(Validity v) {
    switch (v) {
        case Validity::Valid: return "valid";
        case Validity::DiscardedOverexposed: return "discarded-overexposed";
        case Validity::DiscardedUnderexposed: return "discarded-underexposed";
        case Validity::KeptDespiteClip: return "kept-despite-clip";
        case Validity::KeptDespiteNoise: return "kept-despite-noise";
    }
    return "?";
}

RawMeasurements sample(const HdrImage& image, const SensorLayout& layout) {
    if (image.width() != layout.width() || image.height() != layout.height()) {
        throw std::invalid_argument(
            "image size " + std::to_string(image.width()) + "x" +
            std::to_string(image.height()) + " does not match layout " +
            std::to_string(layout.width()) + "x" +
            std::to_string(layout.height()));
    }
    RawMeasurements meas;
    meas.block_cols = layout.block_cols;
    meas.block_rows = layout.block_rows;
    meas.small.resize(layout.block_count());
    meas.large.resize(layout.block_count());
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            const CellOffset off = corner_offset(layout.corner_at(bx, by));
            const int x0 = 2 * bx;
            const int y0 = 2 * by;
            double sum = 0.0;
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    sum += image(x0 + dx, y0 + dy);
                }
            }
            const double small = image(x0 + off.dx, y0 + off.dy);
            const int b = layout.block_index(bx, by);
            meas.small[b] = small;
            meas.large[b] = sum - small;
        }
    }
    return meas;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RawMeasurements apply_camera(const RawMeasurements& meas, const CameraModel& cam,
                             std::uint64_t noise_seed) {
    cam.validate();
    RawMeasurements out = meas;
    const int n = meas.block_count();
    for (int b = 0; b < n; ++b) {
        double small = meas.small[b];
        double large = meas.large[b];
        if (cam.enable_noise) {
            // One stream per block so blocks can be processed in any order.
            std::mt19937_64 rng(
                splitmix64(noise_seed ^ splitmix64(std::uint64_t(b))));
            auto shoot = [&](double r) {
                std::poisson_distribution<long long> shot(r * cam.photon_scale);
                double v = double(shot(rng)) / cam.photon_scale;
                if (cam.read_sigma_rel > 0.0) {
                    std::normal_distribution<double> read(0.0, cam.read_sigma_rel);
                    v += read(rng);
                }
                return v;
            };
            small = shoot(small);
            large = shoot(large);
        }
        out.small[b] = std::clamp(small, 0.0, cam.sat_rel);
        out.large[b] = std::clamp(large, 0.0, cam.sat_rel);
    }
    return out;
}

namespace {

enum class Exposure { Ok, Under, Over };

Exposure exposure_of(double reading, const CameraModel& cam) {
    if (reading >= cam.sat_rel) return Exposure::Over;
    if (reading < cam.noise_floor_rel) return Exposure::Under;
    return Exposure::Ok;
}

}  // namespace

SampledFrame classify(const RawMeasurements& meas, const SensorLayout& layout,
                      const CameraModel& cam) {
    cam.validate();
    if (meas.block_cols != layout.block_cols ||
        meas.block_rows != layout.block_rows) {
        throw std::invalid_argument("measurements do not match layout geometry");
    }
    SampledFrame frame;
    frame.layout = layout;
    frame.small = meas.small;
    frame.large = meas.large;
    const int n = meas.block_count();
    frame.small_validity.resize(n);
    frame.large_validity.resize(n);
    for (int b = 0; b < n; ++b) {
        const Exposure se = exposure_of(meas.small[b], cam);
        const Exposure le = exposure_of(meas.large[b], cam);
        Validity sv = Validity::Valid;
        Validity lv = Validity::Valid;
        if (se == Exposure::Ok && le == Exposure::Ok) {
            // mid intensity, both usable
        } else if (se == Exposure::Under && le == Exposure::Under) {
            // deep shadow: the large pixel's noisy reading is still the best
            // available information, the small one carries none
            sv = Validity::DiscardedUnderexposed;
            lv = Validity::KeptDespiteNoise;
        } else if (se == Exposure::Over && le == Exposure::Over) {
            // blown highlight: the small pixel clips last, keep it
            sv = Validity::KeptDespiteClip;
            lv = Validity::DiscardedOverexposed;
        } else if (se != Exposure::Ok && le != Exposure::Ok) {
            // opposite extremes within one block (hard edge); both readings
            // constrain different cells, keep both as fallbacks
            sv = se == Exposure::Under ? Validity::KeptDespiteNoise
                                       : Validity::KeptDespiteClip;
            lv = le == Exposure::Under ? Validity::KeptDespiteNoise
                                       : Validity::KeptDespiteClip;
        } else if (se != Exposure::Ok) {
            sv = se == Exposure::Under ? Validity::DiscardedUnderexposed
                                       : Validity::DiscardedOverexposed;
        } else {
            lv = le == Exposure::Under ? Validity::DiscardedUnderexposed
                                       : Validity::DiscardedOverexposed;
        }
        frame.small_validity[b] = sv;
        frame.large_validity[b] = lv;
    }
    return frame;
}

std::vector<GridConstraint> expand_to_grid(const SampledFrame& frame) {
    const SensorLayout& layout = frame.layout;
    std::vector<GridConstraint> constraints;
    constraints.reserve(std::size_t(layout.block_count()) * 2);
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            const int b = layout.block_index(bx, by);
            const CellOffset off = corner_offset(layout.corner_at(bx, by));
            const int x0 = 2 * bx;
            const int y0 = 2 * by;
            if (is_retained(frame.small_validity[b])) {
                GridConstraint c;
                c.cells[0] = {x0 + off.dx, y0 + off.dy};
                c.cell_count = 1;
                c.value = frame.small[b];
                c.fallback = frame.small_validity[b] != Validity::Valid;
                c.block = b;
                constraints.push_back(c);
            }
            if (is_retained(frame.large_validity[b])) {
                GridConstraint c;
                c.cell_count = 0;
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        if (dx == off.dx && dy == off.dy) continue;
                        c.cells[c.cell_count++] = {x0 + dx, y0 + dy};
                    }
                }
                c.value = frame.large[b];
                c.fallback = frame.large_validity[b] != Validity::Valid;
                c.block = b;
                constraints.push_back(c);
            }
        }
    }
    return constraints;
}

HdrImage naive_zero_fill(const SampledFrame& frame) {
    const SensorLayout& layout = frame.layout;
    HdrImage out(layout.width(), layout.height(), 0.0);
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            const int b = layout.block_index(bx, by);
            const CellOffset off = corner_offset(layout.corner_at(bx, by));
            const int x0 = 2 * bx;
            const int y0 = 2 * by;
            if (is_retained(frame.small_validity[b])) {
                out(x0 + off.dx, y0 + off.dy) = frame.small[b];
            }
            if (is_retained(frame.large_validity[b])) {
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        if (dx == off.dx && dy == off.dy) continue;
                        out(x0 + dx, y0 + dy) = frame.large[b] / 3.0;
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace nrhdr
