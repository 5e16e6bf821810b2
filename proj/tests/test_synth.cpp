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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nrhdr/synth.hpp"

using namespace nrhdr;

TEST_CASE("zoneplate center and bounds") {
    ZoneplateSpec spec;
    spec.size = 128;
    const HdrImage img = zoneplate(spec);
    const int c = spec.size / 2;
    const double ramp_c =
        spec.gradient_lo + (spec.gradient_hi - spec.gradient_lo) * c / (spec.size - 1.0);
    CHECK(img(c, c) == doctest::Approx(ramp_c * spec.lum_max).epsilon(1e-12));
    const auto [lo, hi] = std::minmax_element(img.data().begin(), img.data().end());
    CHECK(*lo >= 0.0);
    CHECK(*hi <= spec.lum_max);
}

TEST_CASE("zoneplate is radially symmetric without the gradient") {
    ZoneplateSpec spec;
    spec.size = 64;
    spec.gradient_lo = 1.0;
    spec.gradient_hi = 1.0;
    const HdrImage img = zoneplate(spec);
    const int c = spec.size / 2;
    for (int a = 1; a < 20; ++a) {
        for (int b = 0; b < 20; ++b) {
            // 90-degree rotations about the center pixel
            CHECK(img(c + a, c + b) == doctest::Approx(img(c - b, c + a)).epsilon(1e-12));
            CHECK(img(c + a, c + b) == doctest::Approx(img(c - a, c - b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("zoneplate frequency grows with radius") {
    ZoneplateSpec spec;
    spec.size = 256;
    spec.gradient_lo = 1.0;
    spec.gradient_hi = 1.0;
    const HdrImage img = zoneplate(spec);
    const int c = spec.size / 2;
    // oscillations along a ray: outer half must cross the midline more often
    auto crossings = [&](int from, int to) {
        int count = 0;
        for (int x = from + 1; x < to; ++x) {
            const double a = img(x - 1, c) - 0.5;
            const double b = img(x, c) - 0.5;
            if (a * b < 0.0) ++count;
        }
        return count;
    };
    const int inner = crossings(c, c + 60);
    const int outer = crossings(c + 60, c + 120);
    CHECK(outer > inner);
}

TEST_CASE("zoneplate gradient can be flat but not inverted") {
    ZoneplateSpec spec;
    spec.gradient_lo = 0.5;
    spec.gradient_hi = 0.2;
    CHECK_THROWS_AS(zoneplate(spec), std::invalid_argument);
    spec.gradient_hi = 0.5;
    spec.size = 16;
    CHECK_NOTHROW(zoneplate(spec));  // flat ramp disables the gradient
}

TEST_CASE("stripes alternate along the requested axis") {
    const HdrImage v = stripes(8, 2, StripeOrientation::Vertical, 0.1, 0.5);
    for (int x = 0; x < 8; ++x) {
        CHECK(v(x, 3) == (x % 2 == 0 ? 0.1 : 0.5));
    }
    const HdrImage h = stripes(8, 2, StripeOrientation::Horizontal, 0.1, 0.5);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
            CHECK(h(x, y) == v(y, x));  // transpose relation
        }
    }
    CHECK_THROWS_AS(stripes(8, 3, StripeOrientation::Vertical, 0.1, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(stripes(9, 2, StripeOrientation::Vertical, 0.1, 0.5),
                    std::invalid_argument);
}

TEST_CASE("stripe spectrum peaks at the stripe frequency") {
    const int n = 32;
    const int period = 4;
    const HdrImage img = stripes(n, period, StripeOrientation::Vertical, 0.1, 0.5);
    const auto power = power_spectrum(img);
    // strongest non-DC bin must be (kx = n/period, ky = 0) or its conjugate
    std::size_t best = 1;
    for (std::size_t i = 1; i < power.size(); ++i) {
        if (power[i] > power[best]) best = i;
    }
    const int ky = int(best) / n;
    const int kx = int(best) % n;
    CHECK(ky == 0);
    CHECK((kx == n / period || kx == n - n / period));
}

TEST_CASE("coherence report flags a pure cosine as clean") {
    const int n = 64;
    HdrImage img(n, n, 0.0);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            img(x, y) = 0.5 + 0.25 * std::cos(2.0 * std::numbers::pi * 5 * x / n);
        }
    }
    const CoherenceReport report = coherence_report(img, 5, 0);
    CHECK(report.peak_at_true > 0.0);
    CHECK(report.max_spurious < 1e-6 * report.peak_at_true);
}

TEST_CASE("parseval energy balance") {
    const int n = 48;
    HdrImage img(n, n, 0.0);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            img(x, y) = 0.3 + 0.2 * std::sin(0.4 * x) * std::cos(0.9 * y + 0.3);
        }
    }
    double spatial = 0.0;
    for (double v : img.data()) spatial += v * v;
    const auto power = power_spectrum(img);
    double spectral = 0.0;
    for (double p : power) spectral += p;
    spectral /= double(n) * n;
    CHECK(spectral == doctest::Approx(spatial).epsilon(1e-9));
}
