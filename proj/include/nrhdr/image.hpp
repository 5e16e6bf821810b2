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

#include <cstddef>
#include <span>
#include <vector>

namespace nrhdr {

/// Single-channel raster of linear radiance in relative units, row-major.
/// Values are finite and >= 0; the validating constructor rejects anything else.
class HdrImage {
public:
    HdrImage() = default;
    HdrImage(int width, int height, double fill = 0.0);
    HdrImage(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double operator()(int x, int y) const {
        return data_[std::size_t(y) * width_ + x];
    }
    double& operator()(int x, int y) {
        return data_[std::size_t(y) * width_ + x];
    }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    /// Re-check the radiance invariant (finite, non-negative everywhere).
    void validate() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Interleaved RGB raster with channel values in [0,1], for visualization.
class ColorImage {
public:
    ColorImage() = default;
    ColorImage(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    double& at(int x, int y, int channel) {
        return rgb_[(std::size_t(y) * width_ + x) * 3 + channel];
    }
    double at(int x, int y, int channel) const {
        return rgb_[(std::size_t(y) * width_ + x) * 3 + channel];
    }
    void set(int x, int y, double r, double g, double b);

    std::span<const double> data() const { return rgb_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> rgb_;
};

}  // namespace nrhdr
