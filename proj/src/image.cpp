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

#include "nrhdr/image.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nrhdr {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

}  // namespace

HdrImage::HdrImage(int width, int height, double fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    if (!std::isfinite(fill) || fill < 0.0) {
        throw std::invalid_argument("radiance must be finite and >= 0");
    }
    data_.assign(std::size_t(width) * height, fill);
}

HdrImage::HdrImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != std::size_t(width) * height) {
        throw std::invalid_argument("image data length " +
                                    std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) +
                                    "x" + std::to_string(height));
    }
    validate();
}

void HdrImage::validate() const {
    for (double v : data_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument(
                "radiance must be finite and >= 0, got " + std::to_string(v));
        }
    }
}

ColorImage::ColorImage(int width, int height)
    : width_(width), height_(height) {
    check_dims(width, height);
    rgb_.assign(std::size_t(width) * height * 3, 0.0);
}

void ColorImage::set(int x, int y, double r, double g, double b) {
    std::size_t base = (std::size_t(y) * width_ + x) * 3;
    rgb_[base] = r;
    rgb_[base + 1] = g;
    rgb_[base + 2] = b;
}

}  // namespace nrhdr
