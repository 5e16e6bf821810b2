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

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrhdr/io.hpp"

namespace nrhdr {

namespace {

std::uint32_t byteswap32(std::uint32_t v) {
    return ((v & 0xff000000u) >> 24) | ((v & 0x00ff0000u) >> 8) |
           ((v & 0x0000ff00u) << 8) | ((v & 0x000000ffu) << 24);
}

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

constexpr bool kHostLittle = std::endian::native == std::endian::little;

// Read one whitespace-delimited header token, skipping leading whitespace.
std::string next_token(std::istream& in) {
    std::string token;
    if (!(in >> token)) throw std::runtime_error("truncated PFM header");
    return token;
}

}  // namespace

HdrImage read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open PFM file: " + path.string());

    const std::string magic = next_token(in);
    if (magic == "PF") {
        throw std::runtime_error(
            "color PFM ('PF') is not supported: " + path.string() +
            " -- convert to grayscale 'Pf' first");
    }
    if (magic != "Pf") {
        throw std::runtime_error("not a grayscale PFM ('Pf') file: " +
                                 path.string());
    }
    int width = 0, height = 0;
    double scale = 0.0;
    try {
        width = std::stoi(next_token(in));
        height = std::stoi(next_token(in));
        scale = std::stod(next_token(in));
    } catch (const std::exception&) {
        throw std::runtime_error("malformed PFM header in " + path.string());
    }
    if (width <= 0 || height <= 0) {
        throw std::runtime_error("PFM header has non-positive dimensions in " +
                                 path.string());
    }
    if (scale == 0.0) {
        throw std::runtime_error("PFM scale must be nonzero in " + path.string());
    }
    // exactly one whitespace byte separates the header from the payload
    in.get();
    const bool file_little = scale < 0.0;

    const std::size_t count = std::size_t(width) * height;
    std::vector<std::uint32_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()),
            std::streamsize(count * sizeof(std::uint32_t)));
    if (std::size_t(in.gcount()) != count * sizeof(std::uint32_t)) {
        throw std::runtime_error("truncated PFM payload in " + path.string());
    }
    if (file_little != kHostLittle) {
        for (auto& v : raw) v = byteswap32(v);
    }

    // rows are stored bottom-up
    std::vector<double> data(count);
    for (int y = 0; y < height; ++y) {
        const std::uint32_t* row = raw.data() + std::size_t(height - 1 - y) * width;
        for (int x = 0; x < width; ++x) {
            float f;
            std::memcpy(&f, &row[x], sizeof(f));
            data[std::size_t(y) * width + x] = double(f);
        }
    }
    try {
        return HdrImage(width, height, std::move(data));
    } catch (const std::exception& e) {
        throw std::runtime_error("PFM payload is not a radiance map (" +
                                 std::string(e.what()) + "): " + path.string());
    }
}

void write_pfm(const HdrImage& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open PFM file for writing: " +
                                 path.string());
    }
    out << "Pf\n" << image.width() << " " << image.height() << "\n-1.0\n";
    std::vector<std::uint32_t> row(image.width());
    for (int y = image.height() - 1; y >= 0; --y) {
        for (int x = 0; x < image.width(); ++x) {
            const float f = float(image(x, y));
            std::uint32_t bits;
            std::memcpy(&bits, &f, sizeof(bits));
            if constexpr (!kHostLittle) bits = byteswap32(bits);
            row[std::size_t(x)] = bits;
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  std::streamsize(row.size() * sizeof(std::uint32_t)));
    }
    if (!out.flush()) {
        throw std::runtime_error("failed writing PFM file: " + path.string());
    }
}

}  // namespace nrhdr
