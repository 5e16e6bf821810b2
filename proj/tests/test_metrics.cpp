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

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nrhdr/metrics.hpp"

using namespace nrhdr;

#ifndef NRHDR_SOURCE_DIR
#define NRHDR_SOURCE_DIR "."
#endif

TEST_CASE("psnr closed forms") {
    const HdrImage a(4, 4, 0.5);
    CHECK(std::isinf(psnr(a, a, 1.0)));
    HdrImage b(4, 4, 0.6);  // constant error 0.1 against peak 1
    CHECK(psnr(a, b, 1.0) == doctest::Approx(20.0).epsilon(1e-6));
    CHECK_THROWS_AS(psnr(a, HdrImage(4, 2, 0.5), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(psnr(a, b, 0.0), std::invalid_argument);
}

TEST_CASE("psnr ignores a common offset") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    HdrImage a(8, 8, 0.0), b(8, 8, 0.0), a2(8, 8, 0.0), b2(8, 8, 0.0);
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        a.data()[i] = dist(rng);
        b.data()[i] = dist(rng);
        a2.data()[i] = a.data()[i] + 0.125;  // exactly representable shift
        b2.data()[i] = b.data()[i] + 0.125;
    }
    CHECK(psnr(a, b, 1.0) == doctest::Approx(psnr(a2, b2, 1.0)).epsilon(1e-9));
}

TEST_CASE("pu21 encoding matches the reference golden table") {
    std::ifstream golden(std::string(NRHDR_SOURCE_DIR) +
                         "/tests/data/pu21_golden.csv");
    REQUIRE(golden.good());
    std::string header;
    std::getline(golden, header);
    std::string line;
    int rows = 0;
    while (std::getline(golden, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double lum = std::stod(line.substr(0, comma));
        const double expected = std::stod(line.substr(comma + 1));
        CHECK(std::abs(pu21_encode(lum) - expected) < 1e-6);
        ++rows;
    }
    CHECK(rows == 64);
}

TEST_CASE("pu21 coefficient file matches the built-in constants") {
    const Pu21Coeffs loaded = load_pu21_coeffs(
        std::string(NRHDR_SOURCE_DIR) + "/data/pu21_banding_glare.conf");
    const Pu21Coeffs& builtin = pu21_banding_glare();
    CHECK(loaded.variant == builtin.variant);
    for (int i = 0; i < 7; ++i) CHECK(loaded.p[i] == builtin.p[i]);
    CHECK(loaded.l_min == builtin.l_min);
    CHECK(loaded.l_max == builtin.l_max);
    CHECK_THROWS(load_pu21_coeffs("/nonexistent/pu21.conf"));
}

TEST_CASE("pu21 encoding is monotone") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> dist(0.005, 10000.0);
    for (int i = 0; i < 10000; ++i) {
        double l1 = dist(rng);
        double l2 = dist(rng);
        if (l1 == l2) continue;
        if (l1 > l2) std::swap(l1, l2);
        CHECK(pu21_encode(l1) < pu21_encode(l2));
    }
    // clamped below the declared minimum
    CHECK(pu21_encode(0.0001) == pu21_encode(0.005));
    CHECK(std::abs(pu21_encode(0.005)) < 1e-6);  // declared minimum ~ 0 PU
}

TEST_CASE("pu21 psnr basics") {
    const DisplayModel display;
    const HdrImage a(4, 4, 0.25);
    CHECK(std::isinf(pu21_psnr(a, a, display)));
    HdrImage b(4, 4, 0.3);
    CHECK(pu21_psnr(a, b, display) == doctest::Approx(pu21_psnr(b, a, display)));
    CHECK_THROWS_AS(pu21_psnr(a, HdrImage(2, 2, 0.0), display),
                    std::invalid_argument);
}

TEST_CASE("reinhard constant image closed form") {
    const HdrImage img(6, 6, 1.0);
    const HdrImage out = reinhard_tonemap(img);
    CHECK(out(0, 0) == doctest::Approx(0.18 / 1.18).epsilon(1e-5));
}

TEST_CASE("reinhard output range and order preservation") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    HdrImage img(16, 16, 0.0);
    for (double& v : img.data()) v = dist(rng);
    const HdrImage out = reinhard_tonemap(img);
    for (double v : out.data()) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    for (std::size_t i = 1; i < img.pixel_count(); ++i) {
        if (img.data()[i - 1] >= img.data()[i]) {
            CHECK(out.data()[i - 1] >= out.data()[i]);
        } else {
            CHECK(out.data()[i - 1] <= out.data()[i]);
        }
    }
    // applying the clamp again changes nothing
    const HdrImage again = reinhard_tonemap(img);
    CHECK(std::equal(out.data().begin(), out.data().end(), again.data().begin()));
}

TEST_CASE("clipping mask color code") {
    CameraModel cam;
    cam.enable_noise = false;
    const auto layout = make_layout(LayoutKind::Regular, 4, 4, 0, 0);
    auto frame_for = [&](double c) {
        return classify(apply_camera(sample(HdrImage(4, 4, c), layout), cam, 0),
                        layout, cam);
    };

    SUBCASE("mid intensity is neutral everywhere") {
        const ColorImage mask = clipping_mask(frame_for(0.2));
        for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 4; ++x) {
                CHECK(mask.at(x, y, 0) == 0.5);
                CHECK(mask.at(x, y, 1) == 0.5);
                CHECK(mask.at(x, y, 2) == 0.5);
            }
        }
    }
    SUBCASE("bright region paints large cells yellow") {
        const ColorImage mask = clipping_mask(frame_for(0.5));  // large sums clip
        CHECK(mask.at(0, 0, 0) == 0.5);  // small cell (corner 0) neutral
        CHECK(mask.at(1, 0, 0) == 1.0);  // large cells yellow
        CHECK(mask.at(1, 0, 1) == 1.0);
        CHECK(mask.at(1, 0, 2) == 0.0);
    }
    SUBCASE("dark region paints the small cell green") {
        const ColorImage mask = clipping_mask(frame_for(0.004));
        CHECK(mask.at(0, 0, 0) == 0.0);
        CHECK(mask.at(0, 0, 1) == 1.0);
        CHECK(mask.at(0, 0, 2) == 0.0);
        CHECK(mask.at(1, 0, 0) == 0.5);  // large cells still valid (3 * 0.004)
    }
}
