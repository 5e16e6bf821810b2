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

#include "nrhdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nrhdr {

void DisplayModel::validate() const {
    if (!(black_cd_m2 >= 0.0) || !(black_cd_m2 < peak_cd_m2)) {
        throw std::invalid_argument("display requires 0 <= black < peak");
    }
}

namespace {

void check_same_dims(const HdrImage& a, const HdrImage& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("image dimensions differ");
    }
}

double mse(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / double(a.size());
}

}  // namespace

double psnr(const HdrImage& reference, const HdrImage& test, double peak) {
    check_same_dims(reference, test);
    if (!(peak > 0.0)) throw std::invalid_argument("psnr peak must be > 0");
    const double err = mse(reference.data(), test.data());
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / err);
}

const Pu21Coeffs& pu21_banding_glare() {
    // Fitted constants of the PU21 reference implementation
    // (https://github.com/gfxdisp/pu21), variant "banding_glare"; the
    // encoding maps 0.005 cd/m^2 to ~0 and 100 cd/m^2 to ~256.
    static const Pu21Coeffs coeffs{
        "banding_glare",
        {0.353487901, 0.3734658629, 8.277049286e-05, 0.9062562627,
         0.09150303166, 0.9099517204, 596.3148142},
        0.005,
        10000.0,
    };
    return coeffs;
}

Pu21Coeffs load_pu21_coeffs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open PU21 coefficient file: " +
                                 path.string());
    }
    Pu21Coeffs coeffs;
    std::map<std::string, double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq;
        if (key == "variant") {
            if (!(ls >> eq >> coeffs.variant) || eq != "=") {
                throw std::runtime_error("malformed PU21 coefficient line: " + line);
            }
            continue;
        }
        double value;
        if (!(ls >> eq >> value) || eq != "=") {
            throw std::runtime_error("malformed PU21 coefficient line: " + line);
        }
        values[key] = value;
    }
    for (int i = 0; i < 7; ++i) {
        const std::string key = "p" + std::to_string(i + 1);
        auto it = values.find(key);
        if (it == values.end()) {
            throw std::runtime_error("PU21 coefficient file missing " + key);
        }
        coeffs.p[i] = it->second;
    }
    if (auto it = values.find("l_min"); it != values.end()) coeffs.l_min = it->second;
    if (auto it = values.find("l_max"); it != values.end()) coeffs.l_max = it->second;
    if (coeffs.variant.empty()) {
        throw std::runtime_error("PU21 coefficient file missing variant");
    }
    if (!(coeffs.l_min > 0.0) || !(coeffs.l_min < coeffs.l_max)) {
        throw std::runtime_error("PU21 coefficient file has invalid clamp range");
    }
    return coeffs;
}

double pu21_encode(double luminance_cd_m2, const Pu21Coeffs& c) {
    const double y = std::clamp(luminance_cd_m2, c.l_min, c.l_max);
    const double t = std::pow(y, c.p[3]);
    return c.p[6] *
           (std::pow((c.p[0] + c.p[1] * t) / (1.0 + c.p[2] * t), c.p[4]) -
            c.p[5]);
}

double pu21_psnr(const HdrImage& reference, const HdrImage& test,
                 const DisplayModel& display, const Pu21Coeffs& coeffs) {
    check_same_dims(reference, test);
    display.validate();
    double acc = 0.0;
    const auto ref = reference.data();
    const auto tst = test.data();
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double d = pu21_encode(display.to_luminance(ref[i]), coeffs) -
                         pu21_encode(display.to_luminance(tst[i]), coeffs);
        acc += d * d;
    }
    const double err = acc / double(ref.size());
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    const double peak = pu21_encode(display.peak_cd_m2, coeffs) -
                        pu21_encode(display.black_cd_m2, coeffs);
    return 10.0 * std::log10(peak * peak / err);
}

HdrImage reinhard_tonemap(const HdrImage& image) {
    constexpr double key = 0.18;
    constexpr double eps = 1e-6;
    double log_sum = 0.0;
    for (double v : image.data()) log_sum += std::log(eps + v);
    const double log_avg = std::exp(log_sum / double(image.pixel_count()));
    HdrImage out(image.width(), image.height(), 0.0);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const double scaled = key * image.data()[i] / log_avg;
        out.data()[i] = std::clamp(scaled / (1.0 + scaled), 0.0, 1.0);
    }
    return out;
}

ColorImage clipping_mask(const SampledFrame& frame) {
    const SensorLayout& layout = frame.layout;
    ColorImage mask(layout.width(), layout.height());
    constexpr double kGray = 0.5;
    auto paint = [&](int x, int y, Validity v, bool small) {
        const bool over =
            v == Validity::DiscardedOverexposed || v == Validity::KeptDespiteClip;
        const bool under = v == Validity::DiscardedUnderexposed ||
                           v == Validity::KeptDespiteNoise;
        if (small) {
            if (over) mask.set(x, y, 1.0, 0.0, 0.0);         // red
            else if (under) mask.set(x, y, 0.0, 1.0, 0.0);   // green
            else mask.set(x, y, kGray, kGray, kGray);
        } else {
            if (over) mask.set(x, y, 1.0, 1.0, 0.0);         // yellow
            else if (under) mask.set(x, y, 0.0, 0.0, 1.0);   // blue
            else mask.set(x, y, kGray, kGray, kGray);
        }
    };
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            const int b = layout.block_index(bx, by);
            const CellOffset off = corner_offset(layout.corner_at(bx, by));
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    const bool small = (dx == off.dx && dy == off.dy);
                    paint(2 * bx + dx, 2 * by + dy,
                          small ? frame.small_validity[b] : frame.large_validity[b],
                          small);
                }
            }
        }
    }
    return mask;
}

}  // namespace nrhdr
