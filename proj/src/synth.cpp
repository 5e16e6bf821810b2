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

#include "nrhdr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nrhdr/fft.hpp"

namespace nrhdr {

void ZoneplateSpec::validate() const {
    if (size < 2 || size % 2 != 0) {
        throw std::invalid_argument("zoneplate size must be even and >= 2");
    }
    if (!(lum_max > 0.0)) {
        throw std::invalid_argument("lum_max must be > 0");
    }
    if (!(gradient_lo >= 0.0) || !(gradient_lo <= gradient_hi) ||
        !(gradient_hi > 0.0)) {
        throw std::invalid_argument("gradient must satisfy 0 <= lo <= hi, hi > 0");
    }
    if (!(chirp_rate > 0.0) || !(chirp_rate <= 1.0)) {
        throw std::invalid_argument("chirp_rate must be in (0, 1]");
    }
}

HdrImage zoneplate(const ZoneplateSpec& spec) {
    spec.validate();
    const int n = spec.size;
    const int cx = n / 2;
    const int cy = n / 2;
    // instantaneous radial frequency alpha*r/pi reaches chirp_rate * Nyquist
    // (0.5 cyc/px) at the corner radius
    const double corner_r = std::hypot(double(cx), double(cy));
    const double alpha = std::numbers::pi * spec.chirp_rate / (2.0 * corner_r);
    HdrImage img(n, n, 0.0);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double r2 = double(x - cx) * (x - cx) + double(y - cy) * (y - cy);
            const double ramp =
                spec.gradient_lo +
                (spec.gradient_hi - spec.gradient_lo) * x / double(n - 1);
            img(x, y) =
                ramp * spec.lum_max * 0.5 * (1.0 + std::cos(alpha * r2));
        }
    }
    return img;
}

HdrImage stripes(int size, int period, StripeOrientation orientation,
                 double low, double high) {
    if (period < 2 || period % 2 != 0) {
        throw std::invalid_argument("stripe period must be even and >= 2");
    }
    if (size < period || size % period != 0) {
        throw std::invalid_argument("size must be a positive multiple of period");
    }
    if (!(low >= 0.0) || !(high >= 0.0)) {
        throw std::invalid_argument("stripe levels must be >= 0");
    }
    HdrImage img(size, size, 0.0);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const int along = orientation == StripeOrientation::Vertical ? x : y;
            img(x, y) = (along % period) < period / 2 ? low : high;
        }
    }
    return img;
}

std::vector<double> power_spectrum(const HdrImage& image) {
    const int w = image.width();
    const int h = image.height();
    std::vector<std::complex<double>> in(std::size_t(w) * h);
    std::vector<std::complex<double>> out(std::size_t(w) * h);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = image.data()[i];
    Fft2d fft(h, w);
    fft.forward(in.data(), out.data());
    std::vector<double> power(in.size());
    for (std::size_t i = 0; i < out.size(); ++i) power[i] = std::norm(out[i]);
    return power;
}

CoherenceReport coherence_report(const HdrImage& image, int freq_x, int freq_y) {
    const int w = image.width();
    const int h = image.height();
    if (w != h) {
        throw std::invalid_argument("coherence_report expects a square image");
    }
    if (std::abs(freq_x) > w / 2 || std::abs(freq_y) > h / 2) {
        throw std::invalid_argument("true frequency beyond Nyquist");
    }
    const std::vector<double> power = power_spectrum(image);
    auto bin = [&](int ky, int kx) {
        ky = ((ky % h) + h) % h;
        kx = ((kx % w) + w) % w;
        return std::size_t(ky) * w + kx;
    };

    // masked = true peak neighborhoods and the DC neighborhood
    std::vector<char> masked(power.size(), 0);
    std::vector<char> true_nb(power.size(), 0);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            true_nb[bin(freq_y + dy, freq_x + dx)] = 1;
            true_nb[bin(-freq_y + dy, -freq_x + dx)] = 1;
            masked[bin(dy, dx)] = 1;
        }
    }
    CoherenceReport report;
    for (std::size_t i = 0; i < power.size(); ++i) {
        if (true_nb[i]) {
            report.peak_at_true += power[i];
            masked[i] = 1;
        }
    }

    std::vector<double> rest;
    rest.reserve(power.size());
    for (int ky = 0; ky < h; ++ky) {
        for (int kx = 0; kx < w; ++kx) {
            if (masked[bin(ky, kx)]) continue;
            double e = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const std::size_t i = bin(ky + dy, kx + dx);
                    if (!masked[i]) e += power[i];
                }
            }
            report.max_spurious = std::max(report.max_spurious, e);
            rest.push_back(power[bin(ky, kx)]);
        }
    }
    if (!rest.empty()) {
        auto mid = rest.begin() + rest.size() / 2;
        std::nth_element(rest.begin(), mid, rest.end());
        report.noise_floor = *mid;
    }
    return report;
}

}  // namespace nrhdr
